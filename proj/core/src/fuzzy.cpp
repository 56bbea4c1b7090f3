#include "pufkit/fuzzy.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace pufkit {

FeParams make_fe(size_t l, size_t l_o, size_t m, size_t t, double epsilon,
                 const std::string& code_descriptor, Rng& rng) {
  FeParams fe;
  fe.l = l;
  fe.l_o = l_o;
  fe.m = m;
  fe.t = t;
  fe.epsilon = epsilon;
  fe.code = code_descriptor;
  fe.hash_seed = BitString::random(l + m - 1, rng);
  validate_fe(fe);
  return fe;
}

void validate_fe(const FeParams& fe) {
  if (fe.l == 0 || fe.l_o == 0 || fe.l_o > fe.l)
    throw std::invalid_argument("fe: need 0 < l_o <= l");
  if (fe.m == 0) throw std::invalid_argument("fe: m must be positive");
  if (!(fe.epsilon > 0.0 && fe.epsilon < 1.0))
    throw std::invalid_argument("fe: epsilon outside (0, 1)");
  if (fe.hash_seed.size() != fe.l + fe.m - 1)
    throw std::invalid_argument("fe: hash seed must be l + m - 1 bits");
  auto code = make_code(fe.code, fe.l_o);
  if (fe.t > code->max_correctable())
    throw std::invalid_argument("fe: t exceeds code correction capacity");
}

BitString toeplitz_hash(const BitString& y, const BitString& seed, size_t m) {
  size_t l = y.size();
  if (seed.size() != l + m - 1)
    throw std::invalid_argument("toeplitz: seed must be l + m - 1 bits");
  BitString r(m);
  for (size_t i = 0; i < m; ++i) {
    int acc = 0;
    for (size_t j = 0; j < l; ++j)
      acc ^= seed.bit(i + l - 1 - j) & y.bit(j);
    r.set_bit(i, acc);
  }
  return r;
}

std::pair<BitString, HelperData> fe_gen(const BitString& y, const FeParams& fe, Rng& rng) {
  if (y.size() != fe.l) throw std::invalid_argument("fe_gen: input length != l");
  auto code = make_code(fe.code, fe.l_o);
  BitString message(code->dimension());
  for (size_t i = 0; i < message.size(); ++i) message.set_bit(i, rng.bit());
  BitString o = y.slice(fe.l_w(), fe.l_o);
  HelperData h{o ^ code->encode(message), fe.hash_seed};
  return {toeplitz_hash(y, fe.hash_seed, fe.m), std::move(h)};
}

std::optional<BitString> fe_rep(const BitString& y_noisy, const HelperData& helper,
                                const FeParams& fe) {
  if (y_noisy.size() != fe.l) throw std::invalid_argument("fe_rep: input length != l");
  if (helper.sketch.size() != fe.l_o)
    throw std::invalid_argument("fe_rep: sketch length != l_o");
  auto code = make_code(fe.code, fe.l_o);
  BitString o_noisy = y_noisy.slice(fe.l_w(), fe.l_o);
  auto codeword = code->decode_bounded(o_noisy ^ helper.sketch, fe.t);
  if (!codeword) return std::nullopt;
  BitString y_rec = concat(y_noisy.slice(0, fe.l_w()), helper.sketch ^ *codeword);
  return toeplitz_hash(y_rec, helper.hash_seed, fe.m);
}

CanettiResult canetti_correctness(size_t t, size_t l, size_t m, double xi1, double xi2) {
  if (l == 0) throw std::invalid_argument("canetti: l must be positive");
  if (t > l) throw std::invalid_argument("canetti: t outside [0, l]");
  if (m == 0) throw std::invalid_argument("canetti: m must be positive");
  if (!(xi1 >= 1.0)) throw std::invalid_argument("canetti: xi1 must be >= 1");
  if (!(xi2 >= 0.0 && xi2 <= 1.0))
    throw std::invalid_argument("canetti: xi2 outside [0, 1]");
  double base = 1.0 - static_cast<double>(t) / static_cast<double>(l);
  double raw = std::pow(1.0 - std::pow(base, static_cast<double>(m)), xi1) + xi1 * xi2;
  double value = raw;
  if (value < 0.0) value = 0.0;
  if (value > 1.0) value = 1.0;
  return {raw, value};
}

UniformityAudit uniformity_audit(const FeParams& fe,
                                 const std::vector<std::pair<BitString, double>>& source,
                                 double claimed_min_entropy) {
  if (source.empty()) throw std::invalid_argument("audit: empty source");
  if (fe.m > 20) throw std::invalid_argument("audit: 2^m enumeration infeasible");
  auto code = make_code(fe.code, fe.l_o);
  size_t k = code->dimension();
  if (k > 20 || source.size() > (1u << 16))
    throw std::invalid_argument("audit: domain too large to enumerate");

  double total = 0.0, pmax = 0.0;
  for (const auto& [y, p] : source) {
    if (y.size() != fe.l) throw std::invalid_argument("audit: domain length mismatch");
    if (!(p >= 0.0)) throw std::invalid_argument("audit: negative probability");
    total += p;
    pmax = std::max(pmax, p);
  }
  if (std::abs(total - 1.0) > 1e-9)
    throw std::invalid_argument("audit: source probabilities must sum to 1");

  // enumerate all codewords once
  std::vector<BitString> codewords;
  codewords.reserve(1u << k);
  for (size_t msg = 0; msg < (1u << k); ++msg) {
    BitString mbits(k);
    for (size_t b = 0; b < k; ++b) mbits.set_bit(b, static_cast<int>((msg >> b) & 1));
    codewords.push_back(code->encode(mbits));
  }
  double cw_prob = 1.0 / static_cast<double>(codewords.size());

  // joint (r, sketch) distribution grouped by sketch; the seed part of h is a
  // constant so h is the sketch alone
  std::map<BitString, std::map<BitString, double>> by_sketch;
  std::map<BitString, double> r_marginal;
  for (const auto& [y, p] : source) {
    if (p == 0.0) continue;
    BitString o = y.slice(fe.l_w(), fe.l_o);
    BitString r = toeplitz_hash(y, fe.hash_seed, fe.m);
    r_marginal[r] += p;
    for (const auto& cw : codewords) by_sketch[o ^ cw][r] += p * cw_prob;
  }

  double mass_m = std::pow(2.0, -static_cast<double>(fe.m));
  double r_cells = std::pow(2.0, static_cast<double>(fe.m));
  double dist = 0.0, mi = 0.0;
  for (const auto& [sketch, cells] : by_sketch) {
    double ph = 0.0;
    for (const auto& [r, prh] : cells) ph += prh;
    double uniform_cell = ph * mass_m;
    for (const auto& [r, prh] : cells) {
      dist += std::abs(prh - uniform_cell);
      if (prh > 0.0) mi += prh * std::log2(prh / (r_marginal[r] * ph));
    }
    dist += (r_cells - static_cast<double>(cells.size())) * uniform_cell;
  }
  dist *= 0.5;

  double observed = -std::log2(pmax);
  return {dist, observed, observed + 1e-9 >= claimed_min_entropy, mi};
}

std::vector<std::pair<BitString, double>> uniform_source(
    const std::vector<BitString>& ws, size_t l_o) {
  if (ws.empty()) throw std::invalid_argument("uniform_source: no w strings");
  size_t count = ws.size() << l_o;
  double p = 1.0 / static_cast<double>(count);
  std::vector<std::pair<BitString, double>> out;
  out.reserve(count);
  for (const auto& w : ws) {
    for (size_t o = 0; o < (1u << l_o); ++o) {
      BitString obits(l_o);
      for (size_t b = 0; b < l_o; ++b) obits.set_bit(b, static_cast<int>((o >> b) & 1));
      out.emplace_back(concat(w, obits), p);
    }
  }
  return out;
}

}  // namespace pufkit
