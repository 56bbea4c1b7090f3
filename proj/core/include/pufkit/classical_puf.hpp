#pragma once

#include <vector>

#include "pufkit/bitstring.hpp"
#include "pufkit/rng.hpp"

namespace pufkit {

// Deterministic classical challenge/response device. Evaluation is the
// noiseless device physics; channel noise is applied by readout_classical.
class ClassicalPuf {
 public:
  virtual ~ClassicalPuf() = default;
  virtual size_t challenge_bits() const = 0;
  virtual size_t outcome_bits() const = 0;
  virtual BitString evaluate(const BitString& x) const = 0;
};

// Keyed pseudorandom behavior: every outcome bit is an independent keyed hash
// of the whole challenge. Structureless by design, so it resists model
// building but has no compact description.
class KeyedRandomPuf : public ClassicalPuf {
 public:
  KeyedRandomPuf(size_t challenge_bits, size_t outcome_bits, uint64_t key);
  static KeyedRandomPuf sample(size_t challenge_bits, size_t outcome_bits, Rng& rng);

  size_t challenge_bits() const override { return n_; }
  size_t outcome_bits() const override { return m_; }
  BitString evaluate(const BitString& x) const override;

 private:
  size_t n_, m_;
  uint64_t key_;
};

// Arbiter-style linear-threshold units: outcome bit j is
// sign(sum_i w_ji * (-1)^{x_i} + b_j). Learnable from transcripts by design.
class LinearThresholdPuf : public ClassicalPuf {
 public:
  LinearThresholdPuf(size_t challenge_bits, std::vector<std::vector<double>> weights,
                     std::vector<double> bias);
  static LinearThresholdPuf sample(size_t challenge_bits, size_t outcome_bits, Rng& rng);

  size_t challenge_bits() const override { return n_; }
  size_t outcome_bits() const override { return weights_.size(); }
  BitString evaluate(const BitString& x) const override;

  const std::vector<std::vector<double>>& weights() const { return weights_; }
  const std::vector<double>& bias() const { return bias_; }

 private:
  size_t n_;
  std::vector<std::vector<double>> weights_;  // [outcome][challenge]
  std::vector<double> bias_;
};

// The classical shifter is an XOR mask with the expected outcome, so a
// correct response reads as the all-zero string.
BitString apply_classical_shifter(const BitString& outcome, const BitString& expected);

// Device evaluation, iid bit-flip channel noise (probability flip_p per bit,
// one draw per bit in index order), then the shifter mask.
BitString readout_classical(const ClassicalPuf& puf, const BitString& expected,
                            const BitString& x, double flip_p, Rng& rng);

}  // namespace pufkit
