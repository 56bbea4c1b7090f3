#include "pufkit/config.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "pufkit/adversary.hpp"
#include "pufkit/classical_puf.hpp"
#include "pufkit/errors.hpp"

namespace pufkit {

using nlohmann::json;

namespace {

constexpr double kHalfPi = 1.5707963267948966;

void reject_unknown(const json& obj, std::initializer_list<const char*> allowed,
                    const std::string& ctx) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* k : allowed)
      if (it.key() == k) {
        known = true;
        break;
      }
    if (!known) throw DataError("config: unknown field " + ctx + "." + it.key());
  }
}

template <typename T>
void read_uint(const json& obj, const char* key, const std::string& ctx, T& out) {
  auto it = obj.find(key);
  if (it == obj.end()) return;
  if (!it->is_number_unsigned())
    throw DataError("config: " + ctx + "." + key + " must be a non-negative integer");
  out = it->get<T>();
}

void read_double(const json& obj, const char* key, const std::string& ctx, double& out) {
  auto it = obj.find(key);
  if (it == obj.end()) return;
  if (!it->is_number())
    throw DataError("config: " + ctx + "." + key + " must be a number");
  out = it->get<double>();
}

void read_string(const json& obj, const char* key, const std::string& ctx,
                 std::string& out) {
  auto it = obj.find(key);
  if (it == obj.end()) return;
  if (!it->is_string())
    throw DataError("config: " + ctx + "." + key + " must be a string");
  out = it->get<std::string>();
}

void read_bool(const json& obj, const char* key, const std::string& ctx, bool& out) {
  auto it = obj.find(key);
  if (it == obj.end()) return;
  if (!it->is_boolean())
    throw DataError("config: " + ctx + "." + key + " must be a boolean");
  out = it->get<bool>();
}

}  // namespace

RunConfig config_from_json_text(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::exception& e) {
    throw DataError(std::string("config: parse error: ") + e.what());
  }
  if (!root.is_object()) throw DataError("config: top level must be an object");
  reject_unknown(root,
                 {"puf_kind", "lambda", "out_len", "challenge_bits", "phi", "n_target",
                  "noise", "fe", "attack", "trials", "seed", "out", "device",
                  "allow_crp_reuse"},
                 "config");

  RunConfig cfg;
  if (auto it = root.find("puf_kind"); it != root.end()) {
    if (!it->is_string()) throw DataError("config: puf_kind must be a string");
    cfg.kind = puf_kind_from_string(it->get<std::string>());
    // classical runs default to bit-flip noise unless the file says otherwise
    if (cfg.kind == PufKind::Classical) cfg.noise.kind = NoiseSpec::Kind::BitFlip;
  }
  read_uint(root, "lambda", "config", cfg.lambda);
  read_uint(root, "out_len", "config", cfg.out_len);
  read_uint(root, "challenge_bits", "config", cfg.challenge_bits);
  read_double(root, "phi", "config", cfg.phi);
  read_uint(root, "n_target", "config", cfg.n_target);

  if (auto it = root.find("noise"); it != root.end()) {
    if (!it->is_object()) throw DataError("config: noise must be an object");
    reject_unknown(*it, {"kind", "p", "insertion"}, "config.noise");
    std::string kind, insertion;
    read_string(*it, "kind", "config.noise", kind);
    read_string(*it, "insertion", "config.noise", insertion);
    try {
      if (!kind.empty()) cfg.noise.kind = noise_kind_from_string(kind);
      if (!insertion.empty()) cfg.noise.insertion = insertion_from_string(insertion);
    } catch (const std::invalid_argument& e) {
      throw DataError(std::string("config: noise: ") + e.what());
    }
    read_double(*it, "p", "config.noise", cfg.noise.p);
  }

  if (auto it = root.find("fe"); it != root.end()) {
    if (!it->is_object()) throw DataError("config: fe must be an object");
    reject_unknown(*it, {"code", "m", "epsilon", "xi1", "xi2", "t"}, "config.fe");
    read_string(*it, "code", "config.fe", cfg.code);
    read_uint(*it, "m", "config.fe", cfg.m);
    read_double(*it, "epsilon", "config.fe", cfg.epsilon);
    read_double(*it, "xi1", "config.fe", cfg.xi1);
    read_double(*it, "xi2", "config.fe", cfg.xi2);
    if (it->contains("t")) {
      size_t t = 0;
      read_uint(*it, "t", "config.fe", t);
      cfg.t_override = t;
    }
  }

  if (auto it = root.find("attack"); it != root.end()) {
    if (!it->is_object()) throw DataError("config: attack must be an object");
    reject_unknown(*it, {"model", "q", "q_star"}, "config.attack");
    read_string(*it, "model", "config.attack", cfg.attack_model);
    read_uint(*it, "q", "config.attack", cfg.q);
    read_uint(*it, "q_star", "config.attack", cfg.q_star);
  }

  read_uint(root, "trials", "config", cfg.trials);
  if (root.contains("seed")) {
    uint64_t seed = 0;
    read_uint(root, "seed", "config", seed);
    cfg.seed = seed;
  }
  read_string(root, "out", "config", cfg.out_path);
  read_string(root, "device", "config", cfg.device);
  read_bool(root, "allow_crp_reuse", "config", cfg.allow_crp_reuse);
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("config: cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw DataError("config: read from '" + path + "' failed");
  return config_from_json_text(buf.str());
}

void validate_config(const RunConfig& cfg) {
  if (cfg.n_target == 0) throw std::invalid_argument("config: n_target must be positive");
  if (cfg.trials == 0) throw std::invalid_argument("config: trials must be positive");
  if (cfg.m == 0) throw std::invalid_argument("config: fe.m must be positive");
  if (!(cfg.epsilon > 0.0 && cfg.epsilon < 1.0))
    throw std::invalid_argument("config: fe.epsilon outside (0, 1)");
  if (!(cfg.xi1 >= 1.0))
    throw std::invalid_argument("config: fe.xi1 must be at least 1");
  if (!(cfg.xi2 >= 0.0 && cfg.xi2 <= 1.0))
    throw std::invalid_argument("config: fe.xi2 outside [0, 1]");
  if (!(cfg.noise.p >= 0.0 && cfg.noise.p <= 1.0))
    throw std::invalid_argument("config: noise.p outside [0, 1]");

  AttackModel model = [&] {
    try {
      return attack_model_from_string(cfg.attack_model);
    } catch (const std::invalid_argument&) {
      throw std::invalid_argument("config: unknown attack model '" + cfg.attack_model +
                                  "'");
    }
  }();

  if (cfg.kind == PufKind::Qr) {
    if (cfg.lambda == 0) throw std::invalid_argument("config: lambda must be positive");
    if (!(cfg.phi > 0.0 && cfg.phi < kHalfPi))
      throw std::invalid_argument("config: phi outside (0, pi/2)");
    if (cfg.noise.kind != NoiseSpec::Kind::Depolarizing)
      throw std::invalid_argument("config: qr runs use depolarizing noise");
    if (cfg.device != "genuine")
      throw std::invalid_argument("config: qr source device must be \"genuine\"");
    if (model == AttackModel::Lookup || model == AttackModel::LinearLearner)
      throw std::invalid_argument("config: attack model '" + cfg.attack_model +
                                  "' needs classical wires");
  } else {
    if (cfg.out_len == 0) throw std::invalid_argument("config: out_len must be positive");
    if (cfg.challenge_bits == 0)
      throw std::invalid_argument("config: challenge_bits must be positive");
    if (cfg.noise.kind != NoiseSpec::Kind::BitFlip)
      throw std::invalid_argument("config: classical runs use bit-flip noise");
    if (cfg.device != "genuine" && cfg.device != "keyed" && cfg.device != "linear" &&
        cfg.device != "menu" && cfg.device != "constant")
      throw std::invalid_argument("config: unknown classical device '" + cfg.device +
                                  "'");
    if (cfg.device == "menu" && cfg.out_len > 16)
      throw std::invalid_argument("config: menu device needs out_len <= 16");
    if (model == AttackModel::InterceptResend || model == AttackModel::OptimalCloner)
      throw std::invalid_argument("config: attack model '" + cfg.attack_model +
                                  "' needs quantum transit legs");
  }
}

EnrollConfig to_enroll_config(const RunConfig& cfg) {
  EnrollConfig out;
  out.kind = cfg.kind;
  out.lambda = cfg.lambda;
  out.out_len = cfg.out_len;
  out.phi = cfg.phi;
  out.n_target = cfg.n_target;
  out.noise = cfg.noise;
  out.code = cfg.code;
  out.m = cfg.m;
  out.epsilon = cfg.epsilon;
  out.t_override = cfg.t_override;
  return out;
}

namespace {

std::vector<BitString> full_menu(size_t out_len) {
  std::vector<BitString> menu;
  menu.reserve(size_t{1} << out_len);
  for (uint64_t v = 0; v < (uint64_t{1} << out_len); ++v) {
    BitString s(out_len);
    for (size_t b = 0; b < out_len; ++b)
      s.set_bit(b, static_cast<int>((v >> (out_len - 1 - b)) & 1));
    menu.push_back(std::move(s));
  }
  return menu;
}

}  // namespace

std::unique_ptr<QuantumSource> make_qr_source(const RunConfig& cfg, uint64_t seed) {
  if (cfg.kind != PufKind::Qr)
    throw std::invalid_argument("config: qr source requested for a classical run");
  Rng dev_rng = Rng(seed).derive("device");
  return std::make_unique<GenuineQrDevice>(sample_qrpuf(cfg.lambda, dev_rng));
}

std::unique_ptr<ClassicalSource> make_classical_source(const RunConfig& cfg,
                                                       uint64_t seed) {
  if (cfg.kind != PufKind::Classical)
    throw std::invalid_argument("config: classical source requested for a qr run");
  Rng dev_rng = Rng(seed).derive("device");
  if (cfg.device == "genuine" || cfg.device == "keyed")
    return std::make_unique<GenuineClassicalDevice>(std::make_shared<KeyedRandomPuf>(
        KeyedRandomPuf::sample(cfg.challenge_bits, cfg.out_len, dev_rng)));
  if (cfg.device == "linear")
    return std::make_unique<GenuineClassicalDevice>(std::make_shared<LinearThresholdPuf>(
        LinearThresholdPuf::sample(cfg.challenge_bits, cfg.out_len, dev_rng)));
  if (cfg.device == "menu")
    return std::make_unique<MenuClassicalDevice>(cfg.challenge_bits,
                                                 full_menu(cfg.out_len));
  if (cfg.device == "constant")
    return std::make_unique<ConstantClassicalDevice>(
        cfg.challenge_bits, BitString::random(cfg.out_len, dev_rng));
  throw std::invalid_argument("config: unknown classical device '" + cfg.device + "'");
}

std::unique_ptr<QuantumDevice> make_qr_device(const std::string& family,
                                              const RunConfig& cfg, uint64_t seed) {
  if (family == "genuine") return make_qr_source(cfg, seed);
  if (family == "random") {
    Rng imp_rng = Rng(seed).derive("impostor");
    return std::make_unique<GenuineQrDevice>(sample_qrpuf(cfg.lambda, imp_rng));
  }
  if (family == "constant")
    return std::make_unique<ConstantQrDevice>(cfg.lambda, make_qubit_real(0.0));
  throw std::invalid_argument("config: unknown qr device '" + family + "'");
}

std::unique_ptr<ClassicalDevice> make_classical_device(const std::string& family,
                                                       const RunConfig& cfg,
                                                       uint64_t seed) {
  if (family == "random") {
    Rng imp_rng = Rng(seed).derive("impostor");
    return std::make_unique<GenuineClassicalDevice>(std::make_shared<KeyedRandomPuf>(
        KeyedRandomPuf::sample(cfg.challenge_bits, cfg.out_len, imp_rng)));
  }
  RunConfig with_family = cfg;
  with_family.device = family;
  return make_classical_source(with_family, seed);
}

}  // namespace pufkit
