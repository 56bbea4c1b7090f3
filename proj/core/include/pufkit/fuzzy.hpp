#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pufkit/bitstring.hpp"
#include "pufkit/linear_code.hpp"
#include "pufkit/rng.hpp"

namespace pufkit {

// Fuzzy extractor instance. Inputs are strings y = w || o of length l, where
// only the trailing o segment (length l_o) is error-prone: w is exact by
// construction, so the code-offset sketch covers o alone while the hash binds
// the full string.
struct FeParams {
  size_t l = 0;        // total input length
  size_t l_o = 0;      // sketched (outcome) segment length == code block length
  size_t m = 0;        // extracted response length
  size_t t = 0;        // corrected errors, <= code capacity
  double epsilon = 0.0;
  std::string code;       // code descriptor, see make_code
  BitString hash_seed;    // Toeplitz seed, l + m - 1 bits

  size_t l_w() const { return l - l_o; }
};

FeParams make_fe(size_t l, size_t l_o, size_t m, size_t t, double epsilon,
                 const std::string& code_descriptor, Rng& rng);
void validate_fe(const FeParams& fe);

// Public helper data stored in the table; reveals the sketch (and the hash
// seed, which is public anyway) but not the response.
struct HelperData {
  BitString sketch;
  BitString hash_seed;

  bool operator==(const HelperData&) const = default;
};

// r_i = XOR_j seed[i - j + l - 1] * y_j  (Toeplitz family, pairwise independent)
BitString toeplitz_hash(const BitString& y, const BitString& seed, size_t m);

std::pair<BitString, HelperData> fe_gen(const BitString& y, const FeParams& fe, Rng& rng);

// Recovers the response from a noisy y' when the o-segment error weight is at
// most t. Returns nullopt when bounded-distance decoding cannot certify a
// correction ("uncorrectable", distinct from a wrong response).
std::optional<BitString> fe_rep(const BitString& y_noisy, const HelperData& helper,
                                const FeParams& fe);

// Expected failure probability (1 - (1 - t/l)^m)^{xi1} + xi1*xi2 for a fuzzy
// extractor reused over xi1 correlated samples with outer error xi2. The raw
// value can exceed 1; `value` clamps to [0, 1].
struct CanettiResult {
  double raw;
  double value;
};
CanettiResult canetti_correctness(size_t t, size_t l, size_t m, double xi1, double xi2);

// Exhaustive joint-distribution audit of (R, H) against (U_m, H) for a given
// source over y strings. Feasible only for desk-scale domains.
struct UniformityAudit {
  double distance;                // TV((R,H), (U,H))
  double observed_min_entropy;    // of the source
  bool min_entropy_ok;            // observed >= claimed
  double mutual_information_bits; // I(R;H)
};

UniformityAudit uniformity_audit(const FeParams& fe,
                                 const std::vector<std::pair<BitString, double>>& source,
                                 double claimed_min_entropy);

// Uniform source over {w1..wN} x {0,1}^{l_o}, a convenience for audits.
std::vector<std::pair<BitString, double>> uniform_source(
    const std::vector<BitString>& ws, size_t l_o);

}  // namespace pufkit
