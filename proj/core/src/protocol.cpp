#include "pufkit/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <utility>

#include <openssl/evp.h>

#include "json.hpp"

#include "pufkit/distribution.hpp"
#include "pufkit/errors.hpp"

namespace pufkit {

using nlohmann::json;

std::string to_string(PufKind kind) { return kind == PufKind::Qr ? "qr" : "classical"; }

PufKind puf_kind_from_string(const std::string& s) {
  if (s == "qr") return PufKind::Qr;
  if (s == "classical") return PufKind::Classical;
  throw DataError("unknown puf kind '" + s + "'");
}

std::string to_string(VerifyResult r) {
  switch (r) {
    case VerifyResult::Accept: return "accept";
    case VerifyResult::Reject: return "reject";
    case VerifyResult::Uncorrectable: return "uncorrectable";
  }
  return "reject";
}

size_t Crt::live() const {
  size_t n = 0;
  for (const auto& e : entries)
    if (!e.used) ++n;
  return n;
}

const CrtEntry* Crt::find(uint64_t id) const {
  for (const auto& e : entries)
    if (e.id == id) return &e;
  return nullptr;
}

CrtEntry* Crt::find(uint64_t id) {
  for (auto& e : entries)
    if (e.id == id) return &e;
  return nullptr;
}

uint64_t pick_live_entry(const Crt& crt, Rng& rng) {
  std::vector<uint64_t> live;
  live.reserve(crt.entries.size());
  for (const auto& e : crt.entries)
    if (!e.used) live.push_back(e.id);
  if (live.empty()) throw ProtocolError("challenge table exhausted");
  return live[rng.uniform_index(live.size())];
}

std::vector<BitString> select_challenges(size_t n_bits, size_t n_target, Rng& rng) {
  if (n_bits == 0) throw std::invalid_argument("select_challenges: n_bits = 0");
  if (n_target == 0) throw std::invalid_argument("select_challenges: n_target = 0");
  bool bounded = n_bits < 48;
  uint64_t space = bounded ? (uint64_t{1} << n_bits) : 0;
  if (bounded && n_target > space)
    throw std::invalid_argument("select_challenges: target exceeds challenge space");

  std::vector<BitString> out;
  out.reserve(n_target);
  if (bounded && n_bits <= 20 && n_target * 2 >= space) {
    // dense target: partial Fisher-Yates over the enumerated space
    std::vector<uint64_t> all(space);
    for (uint64_t v = 0; v < space; ++v) all[v] = v;
    for (size_t i = 0; i < n_target; ++i) {
      size_t j = i + static_cast<size_t>(rng.uniform_index(all.size() - i));
      std::swap(all[i], all[j]);
      BitString x(n_bits);
      for (size_t b = 0; b < n_bits; ++b)
        x.set_bit(b, static_cast<int>((all[i] >> (n_bits - 1 - b)) & 1));
      out.push_back(std::move(x));
    }
    return out;
  }
  std::set<BitString> seen;
  while (out.size() < n_target) {
    BitString x = BitString::random(n_bits, rng);
    if (seen.insert(x).second) out.push_back(std::move(x));
  }
  return out;
}

BalanceAudit challenge_balance_audit(const std::vector<BitString>& xs) {
  BalanceAudit audit;
  audit.n_strings = xs.size();
  if (xs.empty()) return audit;
  size_t n_bits = xs.front().size();
  audit.ones_per_position.assign(n_bits, 0);
  for (const auto& x : xs) {
    if (x.size() != n_bits) throw std::invalid_argument("balance audit: ragged input");
    for (size_t b = 0; b < n_bits; ++b)
      audit.ones_per_position[b] += static_cast<size_t>(x.bit(b));
  }
  double n = static_cast<double>(xs.size());
  double band = 3.0 * std::sqrt(n * 0.25);
  for (size_t count : audit.ones_per_position)
    if (std::abs(static_cast<double>(count) - n * 0.5) > band)
      audit.within_3sigma = false;
  return audit;
}

TSelection select_t(const std::vector<std::vector<double>>& pairwise_errors,
                    double noise_mean, size_t l_o) {
  if (l_o == 0) throw std::invalid_argument("select_t: l_o = 0");
  if (noise_mean < 0.0) throw std::invalid_argument("select_t: negative noise mean");
  double min_err = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < pairwise_errors.size(); ++i)
    for (size_t j = 0; j < pairwise_errors[i].size(); ++j)
      if (i != j) min_err = std::min(min_err, pairwise_errors[i][j]);

  double bound = std::min(std::ceil(noise_mean), static_cast<double>(l_o - 1));
  if (std::isfinite(min_err)) bound = std::min(bound, min_err - 1.0);
  TSelection sel;
  sel.t = bound < 0.0 ? 0 : static_cast<size_t>(std::floor(bound));
  sel.collision_warning = std::isfinite(min_err) && min_err <= 1.0 && noise_mean >= 1.0;
  return sel;
}

std::vector<BitString> prune_challenges(const std::vector<BitString>& challenges,
                                        const std::function<double(size_t, size_t)>& err,
                                        double noise_mean) {
  if (challenges.empty())
    throw ProtocolError(
        "prune: no challenges to keep; widen the state separation or lower the noise");
  double threshold = std::ceil(noise_mean);
  std::vector<bool> dropped(challenges.size(), false);
  for (size_t i = 0; i < challenges.size(); ++i) {
    if (dropped[i]) continue;
    for (size_t j = i + 1; j < challenges.size(); ++j) {
      if (dropped[j]) continue;
      if (err(i, j) < threshold) dropped[j] = true;
    }
  }
  std::vector<BitString> out;
  for (size_t i = 0; i < challenges.size(); ++i)
    if (!dropped[i]) out.push_back(challenges[i]);
  return out;
}

std::vector<BitString> prune_challenges(const std::vector<BitString>& challenges,
                                        const ChallengeEncoding& enc, double noise_mean) {
  return prune_challenges(
      challenges,
      [&](size_t i, size_t j) { return pairwise_error(challenges[i], challenges[j], enc); },
      noise_mean);
}

namespace {

void validate_common(const EnrollConfig& cfg) {
  if (cfg.n_target == 0) throw std::invalid_argument("enroll: n_target = 0");
  if (!(cfg.noise.p >= 0.0 && cfg.noise.p <= 1.0))
    throw std::invalid_argument("enroll: noise probability outside [0, 1]");
  if (cfg.m == 0) throw std::invalid_argument("enroll: m = 0");
}

std::vector<std::vector<double>> error_matrix(
    size_t n, const std::function<double(size_t, size_t)>& err) {
  std::vector<std::vector<double>> mat(n, std::vector<double>(n, 0.0));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j) mat[i][j] = mat[j][i] = err(i, j);
  return mat;
}

double min_offdiag(const std::vector<std::vector<double>>& mat) {
  double min_err = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < mat.size(); ++i)
    for (size_t j = i + 1; j < mat.size(); ++j) min_err = std::min(min_err, mat[i][j]);
  return min_err;
}

double empirical_entropy_bits(const std::vector<BitString>& ws) {
  std::map<std::string, double> probs;
  for (const auto& w : ws) probs[w.to_hex()] += 1.0;
  for (auto& [label, p] : probs) p /= static_cast<double>(ws.size());
  return shannon_entropy(Distribution(std::move(probs)));
}

void fill_stats(EnrollStats* stats, const EnrollConfig& cfg, size_t survivors,
                const TSelection& sel, size_t t, double noise_mean, double min_err,
                const std::vector<BitString>& ws) {
  if (!stats) return;
  stats->requested = cfg.n_target;
  stats->pruned = cfg.n_target - survivors;
  stats->enrolled = survivors;
  stats->t = t;
  stats->collision_warning = sel.collision_warning;
  stats->noise_mean = noise_mean;
  stats->min_pairwise_error = min_err;
  stats->w_entropy_bits = empirical_entropy_bits(ws);
}

}  // namespace

Crt enroll(QuantumSource& device, const EnrollConfig& cfg, Rng& rng, EnrollStats* stats) {
  if (cfg.kind != PufKind::Qr)
    throw std::invalid_argument("enroll: config kind does not match the device");
  validate_common(cfg);
  if (cfg.lambda == 0 || device.lambda() != cfg.lambda)
    throw std::invalid_argument("enroll: device size does not match config");
  if (cfg.noise.kind != NoiseSpec::Kind::Depolarizing)
    throw std::invalid_argument("enroll: quantum-readout tables use depolarizing noise");

  ChallengeEncoding enc(cfg.lambda, cfg.phi);
  auto challenges = select_challenges(enc.challenge_bits(), cfg.n_target, rng);
  double noise_mean = static_cast<double>(cfg.lambda) * cfg.noise.p / 2.0;
  auto survivors = prune_challenges(challenges, enc, noise_mean);
  auto err = error_matrix(survivors.size(), [&](size_t i, size_t j) {
    return pairwise_error(survivors[i], survivors[j], enc);
  });
  TSelection sel = select_t(err, noise_mean, cfg.lambda);
  size_t t = cfg.t_override.value_or(sel.t);

  Crt crt;
  crt.kind = PufKind::Qr;
  crt.lambda = cfg.lambda;
  crt.phi = cfg.phi;
  crt.noise = cfg.noise;
  crt.fe = make_fe(33 * cfg.lambda, cfg.lambda, cfg.m, t, cfg.epsilon, cfg.code, rng);

  std::vector<BitString> ws;
  ws.reserve(survivors.size());
  for (size_t i = 0; i < survivors.size(); ++i) {
    QubitRegister outcome = device.characterize(enc.encode(survivors[i]));
    std::vector<ShifterParams> params;
    params.reserve(outcome.size());
    for (const auto& qubit : outcome) params.push_back(shifter_params(qubit));
    BitString w = encode_shifter_string(params);
    // enrollment readout is noiseless, so the error string is pinned to zero
    BitString y = concat(w, BitString(cfg.lambda));
    auto [r, h] = fe_gen(y, crt.fe, rng);
    crt.entries.push_back({i, survivors[i], w, std::move(h), std::move(r), false});
    ws.push_back(std::move(w));
  }
  fill_stats(stats, cfg, survivors.size(), sel, t, noise_mean, min_offdiag(err), ws);
  return crt;
}

Crt enroll(ClassicalSource& device, const EnrollConfig& cfg, Rng& rng,
           EnrollStats* stats) {
  if (cfg.kind != PufKind::Classical)
    throw std::invalid_argument("enroll: config kind does not match the device");
  validate_common(cfg);
  if (cfg.out_len == 0 || device.outcome_bits() != cfg.out_len)
    throw std::invalid_argument("enroll: device size does not match config");
  if (cfg.noise.kind != NoiseSpec::Kind::BitFlip)
    throw std::invalid_argument("enroll: classical tables use bit-flip noise");

  auto challenges = select_challenges(device.challenge_bits(), cfg.n_target, rng);
  std::map<BitString, BitString> readings;
  for (const auto& x : challenges) readings[x] = device.characterize(x, rng);

  double noise_mean = static_cast<double>(cfg.out_len) * cfg.noise.p;
  auto outcome_gap = [&](const std::vector<BitString>& xs, size_t i, size_t j) {
    return static_cast<double>(hamming_distance(readings.at(xs[i]), readings.at(xs[j])));
  };
  auto survivors = prune_challenges(
      challenges,
      [&](size_t i, size_t j) { return outcome_gap(challenges, i, j); }, noise_mean);
  auto err = error_matrix(survivors.size(), [&](size_t i, size_t j) {
    return outcome_gap(survivors, i, j);
  });
  TSelection sel = select_t(err, noise_mean, cfg.out_len);
  size_t t = cfg.t_override.value_or(sel.t);

  Crt crt;
  crt.kind = PufKind::Classical;
  crt.out_len = cfg.out_len;
  crt.noise = cfg.noise;
  crt.fe = make_fe(2 * cfg.out_len, cfg.out_len, cfg.m, t, cfg.epsilon, cfg.code, rng);

  std::vector<BitString> ws;
  ws.reserve(survivors.size());
  for (size_t i = 0; i < survivors.size(); ++i) {
    BitString w = readings.at(survivors[i]);
    BitString y = concat(w, BitString(cfg.out_len));
    auto [r, h] = fe_gen(y, crt.fe, rng);
    crt.entries.push_back({i, survivors[i], w, std::move(h), std::move(r), false});
    ws.push_back(std::move(w));
  }
  fill_stats(stats, cfg, survivors.size(), sel, t, noise_mean, min_offdiag(err), ws);
  return crt;
}

BitString run_qr_round(const ChallengeEncoding& enc, const BitString& x,
                       const std::vector<SingleQubitUnitary>& shifter_gates,
                       QuantumDevice& device, const NoiseSpec& noise, Rng& rng,
                       QuantumTap* tap) {
  if (noise.kind != NoiseSpec::Kind::Depolarizing)
    throw std::invalid_argument("qr round: noise must be depolarizing");
  size_t lambda = enc.lambda();
  if (device.lambda() != lambda)
    throw std::invalid_argument("qr round: device size mismatch");
  if (shifter_gates.size() != lambda)
    throw std::invalid_argument("qr round: shifter count mismatch");

  QubitRegister reg = enc.encode(x);
  if (tap) tap->round_begin(lambda);
  device.round_begin(rng);
  BitString o(lambda);
  for (size_t k = 0; k < lambda; ++k) {
    DensityMatrix rho = DensityMatrix::pure(reg[k]);
    if (noise.insertion == NoiseSpec::Insertion::Challenge) rho = depolarize(rho, noise.p);
    if (tap) rho = tap->challenge_leg(k, rho, rng);
    rho = device.respond(k, rho, rng);
    if (noise.insertion == NoiseSpec::Insertion::Outcome) rho = depolarize(rho, noise.p);
    if (tap) rho = tap->outcome_leg(k, rho, rng);
    rho = conjugate_channel(shifter_gates[k], rho);
    o.set_bit(k, measure_computational(rho, rng));
  }
  return o;
}

BitString run_classical_round(const BitString& x, const BitString& w,
                              ClassicalDevice& device, const NoiseSpec& noise, Rng& rng,
                              ClassicalTap* tap) {
  if (noise.kind != NoiseSpec::Kind::BitFlip)
    throw std::invalid_argument("classical round: noise must be bit-flip");
  if (device.challenge_bits() != x.size())
    throw std::invalid_argument("classical round: challenge length mismatch");

  auto flip_iid = [&](BitString s) {
    for (size_t i = 0; i < s.size(); ++i)
      if (rng.bernoulli(noise.p)) s.flip_bit(i);
    return s;
  };

  if (tap) tap->round_begin();
  BitString xt = x;
  if (noise.insertion == NoiseSpec::Insertion::Challenge) xt = flip_iid(std::move(xt));
  if (tap) xt = tap->challenge_leg(xt, rng);
  BitString v = device.respond(xt, rng);
  if (v.size() != w.size())
    throw std::invalid_argument("classical round: outcome length mismatch");
  if (noise.insertion == NoiseSpec::Insertion::Outcome) v = flip_iid(std::move(v));
  if (tap) v = tap->outcome_leg(v, rng);
  return v ^ w;
}

namespace {

bool response_matches(const BitString& z, const CrtEntry& e, const FeParams& fe) {
  if (e.r.size() == fe.m) return z == e.r;
  if (e.r.size() == 256) return sha256_bits(z) == e.r;
  throw DataError("crt entry " + std::to_string(e.id) + ": response has invalid length");
}

CrtEntry& checkout_entry(Crt& crt, uint64_t entry_id, bool allow_reuse) {
  CrtEntry* e = crt.find(entry_id);
  if (!e) throw ProtocolError("verify: unknown entry id " + std::to_string(entry_id));
  if (e->used && !allow_reuse)
    throw ProtocolError("verify: entry " + std::to_string(entry_id) +
                        " already consumed");
  return *e;
}

VerifyOutcome finish_round(Crt& crt, CrtEntry& e, BitString o) {
  e.used = true;  // consumed whatever the outcome
  auto z = fe_rep(concat(e.w, o), e.h, crt.fe);
  VerifyOutcome out;
  out.o = std::move(o);
  if (!z)
    out.result = VerifyResult::Uncorrectable;
  else
    out.result = response_matches(*z, e, crt.fe) ? VerifyResult::Accept
                                                 : VerifyResult::Reject;
  return out;
}

}  // namespace

VerifyOutcome verify(Crt& crt, uint64_t entry_id, QuantumDevice& device, Rng& rng,
                     QuantumTap* tap, bool allow_reuse) {
  if (crt.kind != PufKind::Qr)
    throw ProtocolError("verify: table does not hold quantum-readout entries");
  CrtEntry& e = checkout_entry(crt, entry_id, allow_reuse);
  ChallengeEncoding enc(crt.lambda, crt.phi);
  auto params = decode_shifter_string(e.w);
  if (params.size() != crt.lambda)
    throw DataError("crt entry " + std::to_string(e.id) + ": shifter string length");
  std::vector<SingleQubitUnitary> gates;
  gates.reserve(params.size());
  for (const auto& p : params) gates.push_back(shifter_from_params(p));
  BitString o = run_qr_round(enc, e.x, gates, device, crt.noise, rng, tap);
  return finish_round(crt, e, std::move(o));
}

VerifyOutcome verify(Crt& crt, uint64_t entry_id, ClassicalDevice& device, Rng& rng,
                     ClassicalTap* tap, bool allow_reuse) {
  if (crt.kind != PufKind::Classical)
    throw ProtocolError("verify: table does not hold classical entries");
  CrtEntry& e = checkout_entry(crt, entry_id, allow_reuse);
  BitString o = run_classical_round(e.x, e.w, device, crt.noise, rng, tap);
  return finish_round(crt, e, std::move(o));
}

BitString sha256_bits(const BitString& bits) {
  std::vector<unsigned char> bytes((bits.size() + 7) / 8, 0);
  for (size_t i = 0; i < bits.size(); ++i)
    if (bits.bit(i)) bytes[i / 8] |= static_cast<unsigned char>(0x80u >> (i % 8));
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int md_len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &md_len, EVP_sha256(), nullptr) != 1 ||
      md_len != 32)
    throw std::runtime_error("sha256 digest failure");
  BitString out(256);
  for (size_t i = 0; i < 256; ++i)
    out.set_bit(i, (md[i / 8] >> (7 - i % 8)) & 1);
  return out;
}

namespace {

const json& get_field(const json& obj, const char* key, const std::string& ctx) {
  auto it = obj.find(key);
  if (it == obj.end()) throw DataError("crt: missing field " + ctx + "." + key);
  return *it;
}

void reject_unknown(const json& obj, std::initializer_list<const char*> allowed,
                    const std::string& ctx) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* k : allowed)
      if (it.key() == k) {
        known = true;
        break;
      }
    if (!known) throw DataError("crt: unknown field " + ctx + "." + it.key());
  }
}

uint64_t get_uint(const json& obj, const char* key, const std::string& ctx) {
  const json& v = get_field(obj, key, ctx);
  if (!v.is_number_unsigned())
    throw DataError("crt: " + ctx + "." + key + " must be a non-negative integer");
  return v.get<uint64_t>();
}

double get_double(const json& obj, const char* key, const std::string& ctx) {
  const json& v = get_field(obj, key, ctx);
  if (!v.is_number())
    throw DataError("crt: " + ctx + "." + key + " must be a number");
  return v.get<double>();
}

std::string get_string(const json& obj, const char* key, const std::string& ctx) {
  const json& v = get_field(obj, key, ctx);
  if (!v.is_string()) throw DataError("crt: " + ctx + "." + key + " must be a string");
  return v.get<std::string>();
}

bool get_bool(const json& obj, const char* key, const std::string& ctx) {
  const json& v = get_field(obj, key, ctx);
  if (!v.is_boolean()) throw DataError("crt: " + ctx + "." + key + " must be a boolean");
  return v.get<bool>();
}

BitString get_bits_text(const json& obj, const char* key, const std::string& ctx,
                        size_t expected_len) {
  std::string text = get_string(obj, key, ctx);
  BitString bits;
  try {
    bits = BitString::from_string(text);
  } catch (const std::exception& e) {
    throw DataError("crt: " + ctx + "." + key + ": " + e.what());
  }
  if (bits.size() != expected_len)
    throw DataError("crt: " + ctx + "." + key + " must hold " +
                    std::to_string(expected_len) + " bits");
  return bits;
}

BitString get_bits_hex(const json& obj, const char* key, const std::string& ctx,
                       size_t expected_len) {
  std::string hex = get_string(obj, key, ctx);
  try {
    return BitString::from_hex(hex, expected_len);
  } catch (const std::exception& e) {
    throw DataError("crt: " + ctx + "." + key + ": " + e.what());
  }
}

}  // namespace

std::string crt_to_json(const Crt& crt, bool digest_responses) {
  if (digest_responses && crt.fe.m == 256)
    throw std::invalid_argument("crt: digest mode is ambiguous for m = 256");
  json fe{
      {"l", crt.fe.l},
      {"m", crt.fe.m},
      {"t", crt.fe.t},
      {"epsilon", crt.fe.epsilon},
      {"code", crt.fe.code},
      {"hash_seed", crt.fe.hash_seed.to_hex()},
  };
  json noise{
      {"kind", to_string(crt.noise.kind)},
      {"p", crt.noise.p},
      {"insertion", to_string(crt.noise.insertion)},
  };
  json entries = json::array();
  for (const auto& e : crt.entries) {
    BitString r = e.r;
    if (digest_responses && r.size() != 256) r = sha256_bits(r);
    entries.push_back(json{
        {"id", e.id},
        {"x", e.x.to_string()},
        {"w", e.w.to_hex()},
        {"h", json{{"sketch", e.h.sketch.to_hex()}, {"seed", e.h.hash_seed.to_hex()}}},
        {"r", r.to_hex()},
        {"used", e.used},
    });
  }
  json root{
      {"version", 1},
      {"puf_kind", to_string(crt.kind)},
      {"fe", std::move(fe)},
      {"noise_model", std::move(noise)},
      {"entries", std::move(entries)},
  };
  if (crt.kind == PufKind::Qr) {
    root["lambda"] = crt.lambda;
    root["phi"] = crt.phi;
  } else {
    root["out_len"] = crt.out_len;
  }
  return root.dump(2) + "\n";
}

Crt crt_from_json(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::exception& e) {
    throw DataError(std::string("crt: parse error: ") + e.what());
  }
  if (!root.is_object()) throw DataError("crt: top level must be an object");

  uint64_t version = get_uint(root, "version", "crt");
  if (version != 1)
    throw DataError("crt: unsupported version " + std::to_string(version));

  Crt crt;
  crt.kind = puf_kind_from_string(get_string(root, "puf_kind", "crt"));
  if (crt.kind == PufKind::Qr) {
    reject_unknown(root, {"version", "puf_kind", "lambda", "phi", "fe", "noise_model",
                          "entries"},
                   "crt");
    crt.lambda = get_uint(root, "lambda", "crt");
    if (crt.lambda == 0) throw DataError("crt: lambda must be positive");
    crt.phi = get_double(root, "phi", "crt");
    if (!(crt.phi > 0.0 && crt.phi < 1.5707963267948966))
      throw DataError("crt: phi outside (0, pi/2)");
  } else {
    reject_unknown(root, {"version", "puf_kind", "out_len", "fe", "noise_model",
                          "entries"},
                   "crt");
    crt.out_len = get_uint(root, "out_len", "crt");
    if (crt.out_len == 0) throw DataError("crt: out_len must be positive");
  }

  const json& fe = get_field(root, "fe", "crt");
  if (!fe.is_object()) throw DataError("crt: fe must be an object");
  reject_unknown(fe, {"l", "m", "t", "epsilon", "code", "hash_seed"}, "crt.fe");
  crt.fe.l = get_uint(fe, "l", "crt.fe");
  crt.fe.m = get_uint(fe, "m", "crt.fe");
  crt.fe.t = get_uint(fe, "t", "crt.fe");
  crt.fe.epsilon = get_double(fe, "epsilon", "crt.fe");
  crt.fe.code = get_string(fe, "code", "crt.fe");
  size_t l_expected = crt.kind == PufKind::Qr ? 33 * crt.lambda : 2 * crt.out_len;
  if (crt.fe.l != l_expected)
    throw DataError("crt: fe.l inconsistent with the table dimensions");
  crt.fe.l_o = crt.kind == PufKind::Qr ? crt.lambda : crt.out_len;
  crt.fe.hash_seed = get_bits_hex(fe, "hash_seed", "crt.fe", crt.fe.l + crt.fe.m - 1);
  try {
    validate_fe(crt.fe);
  } catch (const std::exception& e) {
    throw DataError(std::string("crt: fe: ") + e.what());
  }

  const json& noise = get_field(root, "noise_model", "crt");
  if (!noise.is_object()) throw DataError("crt: noise_model must be an object");
  reject_unknown(noise, {"kind", "p", "insertion"}, "crt.noise_model");
  try {
    crt.noise.kind = noise_kind_from_string(get_string(noise, "kind", "crt.noise_model"));
    crt.noise.insertion =
        insertion_from_string(get_string(noise, "insertion", "crt.noise_model"));
  } catch (const std::invalid_argument& e) {
    throw DataError(std::string("crt: noise_model: ") + e.what());
  }
  crt.noise.p = get_double(noise, "p", "crt.noise_model");
  if (!(crt.noise.p >= 0.0 && crt.noise.p <= 1.0))
    throw DataError("crt: noise_model.p outside [0, 1]");
  if (crt.kind == PufKind::Qr && crt.noise.kind != NoiseSpec::Kind::Depolarizing)
    throw DataError("crt: quantum-readout tables use depolarizing noise");
  if (crt.kind == PufKind::Classical && crt.noise.kind != NoiseSpec::Kind::BitFlip)
    throw DataError("crt: classical tables use bit-flip noise");

  const json& entries = get_field(root, "entries", "crt");
  if (!entries.is_array()) throw DataError("crt: entries must be an array");

  size_t w_len = crt.kind == PufKind::Qr ? 32 * crt.lambda : crt.out_len;
  size_t x_len = crt.kind == PufKind::Qr ? 2 * crt.lambda : 0;  // classical: set by first entry
  size_t seed_len = crt.fe.l + crt.fe.m - 1;
  size_t m_hex_len = (crt.fe.m + 3) / 4;
  std::set<uint64_t> ids;
  std::set<BitString> xs;
  for (size_t i = 0; i < entries.size(); ++i) {
    const json& je = entries[i];
    std::string ctx = "crt.entries[" + std::to_string(i) + "]";
    if (!je.is_object()) throw DataError("crt: " + ctx + " must be an object");
    reject_unknown(je, {"id", "x", "w", "h", "r", "used"}, ctx);

    CrtEntry e;
    e.id = get_uint(je, "id", ctx);
    if (!ids.insert(e.id).second) throw DataError("crt: " + ctx + ": duplicate id");
    if (x_len == 0) {
      std::string first = get_string(je, "x", ctx);
      if (first.empty()) throw DataError("crt: " + ctx + ".x is empty");
      x_len = first.size();
    }
    e.x = get_bits_text(je, "x", ctx, x_len);
    if (!xs.insert(e.x).second)
      throw DataError("crt: " + ctx + ": duplicate challenge");
    e.w = get_bits_hex(je, "w", ctx, w_len);

    const json& h = get_field(je, "h", ctx);
    if (!h.is_object()) throw DataError("crt: " + ctx + ".h must be an object");
    reject_unknown(h, {"sketch", "seed"}, ctx + ".h");
    e.h.sketch = get_bits_hex(h, "sketch", ctx + ".h", crt.fe.l_o);
    e.h.hash_seed = get_bits_hex(h, "seed", ctx + ".h", seed_len);

    std::string r_hex = get_string(je, "r", ctx);
    if (r_hex.size() == m_hex_len)
      e.r = get_bits_hex(je, "r", ctx, crt.fe.m);
    else if (r_hex.size() == 64)
      e.r = get_bits_hex(je, "r", ctx, 256);
    else
      throw DataError("crt: " + ctx + ".r has invalid length");
    e.used = get_bool(je, "used", ctx);
    crt.entries.push_back(std::move(e));
  }
  return crt;
}

void crt_save(const Crt& crt, const std::string& path, bool digest_responses) {
  std::string text = crt_to_json(crt, digest_responses);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("crt: cannot open '" + path + "' for writing");
  out << text;
  out.flush();
  if (!out) throw DataError("crt: write to '" + path + "' failed");
}

Crt crt_load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("crt: cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw DataError("crt: read from '" + path + "' failed");
  return crt_from_json(buf.str());
}

}  // namespace pufkit
