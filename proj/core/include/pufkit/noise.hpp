#pragma once

#include <stdexcept>
#include <string>

namespace pufkit {

// Channel noise for verification-time readout. Enrollment is noiseless by
// construction (certifier lab conditions).
struct NoiseSpec {
  enum class Kind { Depolarizing, BitFlip };
  enum class Insertion { Challenge, Outcome };

  Kind kind = Kind::Depolarizing;
  double p = 0.0;  // [0, 1]
  Insertion insertion = Insertion::Challenge;
};

inline std::string to_string(NoiseSpec::Kind k) {
  return k == NoiseSpec::Kind::Depolarizing ? "depolarizing" : "bitflip";
}

inline std::string to_string(NoiseSpec::Insertion i) {
  return i == NoiseSpec::Insertion::Challenge ? "challenge" : "outcome";
}

inline NoiseSpec::Kind noise_kind_from_string(const std::string& s) {
  if (s == "depolarizing") return NoiseSpec::Kind::Depolarizing;
  if (s == "bitflip") return NoiseSpec::Kind::BitFlip;
  throw std::invalid_argument("unknown noise kind '" + s + "'");
}

inline NoiseSpec::Insertion insertion_from_string(const std::string& s) {
  if (s == "challenge") return NoiseSpec::Insertion::Challenge;
  if (s == "outcome") return NoiseSpec::Insertion::Outcome;
  throw std::invalid_argument("unknown noise insertion '" + s + "'");
}

}  // namespace pufkit
