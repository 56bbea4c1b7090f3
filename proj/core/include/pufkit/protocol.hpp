#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pufkit/bitstring.hpp"
#include "pufkit/device.hpp"
#include "pufkit/fuzzy.hpp"
#include "pufkit/noise.hpp"
#include "pufkit/qrpuf.hpp"
#include "pufkit/rng.hpp"

namespace pufkit {

enum class PufKind { Classical, Qr };
std::string to_string(PufKind kind);
PufKind puf_kind_from_string(const std::string& s);

struct CrtEntry {
  uint64_t id = 0;
  BitString x;    // challenge
  BitString w;    // shifter tuning string
  HelperData h;
  BitString r;    // response, or its 256-bit digest in digest tables
  bool used = false;
};

// The verifier's secret table plus everything needed to replay a round.
struct Crt {
  PufKind kind = PufKind::Qr;
  size_t lambda = 0;   // qr: qubits per challenge
  size_t out_len = 0;  // classical: outcome bits
  double phi = 0.0;    // qr: working angle
  FeParams fe;
  NoiseSpec noise;
  std::vector<CrtEntry> entries;

  size_t live() const;
  const CrtEntry* find(uint64_t id) const;
  CrtEntry* find(uint64_t id);
};

// Uniformly random unused entry id; throws ProtocolError once exhausted.
uint64_t pick_live_entry(const Crt& crt, Rng& rng);

// Distinct uniform draws from {0,1}^n_bits. Dense targets enumerate and
// shuffle; sparse ones use rejection sampling.
std::vector<BitString> select_challenges(size_t n_bits, size_t n_target, Rng& rng);

struct BalanceAudit {
  size_t n_strings = 0;
  std::vector<size_t> ones_per_position;
  bool within_3sigma = true;
};
BalanceAudit challenge_balance_audit(const std::vector<BitString>& xs);

// t = min(ceil(noise_mean), min pairwise error - 1, l_o - 1), floored at 0.
// The warning flags tables whose surviving challenges sit within one error of
// each other while the channel injects at least one expected error.
struct TSelection {
  size_t t = 0;
  bool collision_warning = false;
};
TSelection select_t(const std::vector<std::vector<double>>& pairwise_errors,
                    double noise_mean, size_t l_o);

// Greedy scan in id order: whenever err(i, j) < ceil(noise_mean), the
// higher-id challenge is dropped. Survivors all sit at least the ceiling
// apart.
std::vector<BitString> prune_challenges(const std::vector<BitString>& challenges,
                                        const std::function<double(size_t, size_t)>& err,
                                        double noise_mean);
std::vector<BitString> prune_challenges(const std::vector<BitString>& challenges,
                                        const ChallengeEncoding& enc, double noise_mean);

struct EnrollConfig {
  PufKind kind = PufKind::Qr;
  size_t lambda = 16;        // qr
  size_t out_len = 16;       // classical
  double phi = 0.0;          // qr; must be set in (0, pi/2)
  size_t n_target = 16;
  NoiseSpec noise;
  std::string code = "bch-t1";
  size_t m = 8;
  double epsilon = 0.125;
  std::optional<size_t> t_override;
};

struct EnrollStats {
  size_t requested = 0;
  size_t pruned = 0;
  size_t enrolled = 0;
  size_t t = 0;
  bool collision_warning = false;
  double noise_mean = 0.0;
  double min_pairwise_error = 0.0;  // +inf when fewer than two entries
  double w_entropy_bits = 0.0;      // empirical entropy of the stored w strings
};

Crt enroll(QuantumSource& device, const EnrollConfig& cfg, Rng& rng,
           EnrollStats* stats = nullptr);
Crt enroll(ClassicalSource& device, const EnrollConfig& cfg, Rng& rng,
           EnrollStats* stats = nullptr);

// One transit of the verification channel: challenge states out, device
// response back, shifters, measurement. Taps model on-path interference and
// default to lossless wires.
BitString run_qr_round(const ChallengeEncoding& enc, const BitString& x,
                       const std::vector<SingleQubitUnitary>& shifter_gates,
                       QuantumDevice& device, const NoiseSpec& noise, Rng& rng,
                       QuantumTap* tap = nullptr);
BitString run_classical_round(const BitString& x, const BitString& w,
                              ClassicalDevice& device, const NoiseSpec& noise, Rng& rng,
                              ClassicalTap* tap = nullptr);

enum class VerifyResult { Accept, Reject, Uncorrectable };
std::string to_string(VerifyResult r);

struct VerifyOutcome {
  VerifyResult result = VerifyResult::Reject;
  BitString o;  // post-shifter readout of the round
};

// Runs one round against the table entry and consumes it whatever the
// outcome. A consumed entry is refused unless allow_reuse is set (that flag
// exists only to demonstrate why reuse is insecure).
VerifyOutcome verify(Crt& crt, uint64_t entry_id, QuantumDevice& device, Rng& rng,
                     QuantumTap* tap = nullptr, bool allow_reuse = false);
VerifyOutcome verify(Crt& crt, uint64_t entry_id, ClassicalDevice& device, Rng& rng,
                     ClassicalTap* tap = nullptr, bool allow_reuse = false);

// Strict JSON persistence: unknown fields are rejected, and an unmodified
// table re-serializes byte-identically. digest_responses stores SHA-256(r)
// instead of r, for tables that must not leak responses at rest; verification
// then compares digests.
std::string crt_to_json(const Crt& crt, bool digest_responses = false);
Crt crt_from_json(const std::string& text);
void crt_save(const Crt& crt, const std::string& path, bool digest_responses = false);
Crt crt_load(const std::string& path);

BitString sha256_bits(const BitString& bits);

}  // namespace pufkit
