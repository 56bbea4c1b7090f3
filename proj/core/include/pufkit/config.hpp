#pragma once

#include <memory>
#include <optional>
#include <string>

#include "pufkit/device.hpp"
#include "pufkit/noise.hpp"
#include "pufkit/protocol.hpp"

namespace pufkit {

// One experiment description: a single JSON file drives every command, with
// command-line flags overriding individual fields. Defaults describe the
// 16-qubit desk setup.
struct RunConfig {
  PufKind kind = PufKind::Qr;
  size_t lambda = 16;          // quantum register size
  size_t out_len = 8;          // classical outcome bits
  size_t challenge_bits = 16;  // classical challenge width
  double phi = 0.7853981633974483;  // pi/4
  size_t n_target = 16;
  NoiseSpec noise{NoiseSpec::Kind::Depolarizing, 0.0, NoiseSpec::Insertion::Challenge};
  std::string code = "bch-t1";
  size_t m = 8;
  double epsilon = 0.125;
  double xi1 = 1.0;  // extractor reuse count in the correctness predictor
  double xi2 = 0.0;  // outer error of the predictor
  std::optional<size_t> t_override;
  std::string attack_model = "random-guess";  // valid for either kind
  size_t q = 1;
  size_t q_star = 2;
  size_t trials = 1000;
  std::optional<uint64_t> seed;  // resolved by the CLI: flag > file > env > 1
  std::string out_path;
  // device family: qr tables use "genuine"; classical tables use "keyed",
  // "linear", "menu" (uniform over every out_len-bit value) or "constant"
  std::string device = "genuine";
  bool allow_crp_reuse = false;
};

// Strict parse: unknown keys, wrong types, and out-of-range values are all
// DataError. Missing keys keep their defaults.
RunConfig config_from_json_text(const std::string& text);
RunConfig load_config(const std::string& path);

// Range/consistency check; throws std::invalid_argument with the offending
// field named. Runs before any computation.
void validate_config(const RunConfig& cfg);

EnrollConfig to_enroll_config(const RunConfig& cfg);

// Authentic source used at enrollment. Hardware is derived from the master
// seed (stream "device"), so any later command holding the same seed rebuilds
// the same simulated device.
std::unique_ptr<QuantumSource> make_qr_source(const RunConfig& cfg, uint64_t seed);
std::unique_ptr<ClassicalSource> make_classical_source(const RunConfig& cfg,
                                                       uint64_t seed);

// Device presented at verification. `family` accepts the source families
// (rebuilding the enrolled hardware), plus "random" for a fresh unrelated
// device (stream "impostor") and, for qr, "constant" for a fixed-state
// emitter.
std::unique_ptr<QuantumDevice> make_qr_device(const std::string& family,
                                              const RunConfig& cfg, uint64_t seed);
std::unique_ptr<ClassicalDevice> make_classical_device(const std::string& family,
                                                       const RunConfig& cfg,
                                                       uint64_t seed);

}  // namespace pufkit
