#include "pufkit/classical_puf.hpp"

#include <stdexcept>

namespace pufkit {

namespace {

uint64_t mix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

KeyedRandomPuf::KeyedRandomPuf(size_t challenge_bits, size_t outcome_bits, uint64_t key)
    : n_(challenge_bits), m_(outcome_bits), key_(key) {
  if (n_ == 0 || m_ == 0)
    throw std::invalid_argument("keyed-random puf: zero-size dimensions");
}

KeyedRandomPuf KeyedRandomPuf::sample(size_t challenge_bits, size_t outcome_bits, Rng& rng) {
  return KeyedRandomPuf(challenge_bits, outcome_bits, rng.next_u64());
}

BitString KeyedRandomPuf::evaluate(const BitString& x) const {
  if (x.size() != n_)
    throw std::invalid_argument("keyed-random puf: challenge length mismatch");
  // absorb the challenge into a rolling keyed digest, then squeeze outcome bits
  uint64_t acc = mix64(key_ ^ 0x517cc1b727220a95ULL);
  for (size_t i = 0; i < n_; ++i)
    acc = mix64(acc ^ (static_cast<uint64_t>(x.bit(i)) + 2 * i + 1));
  BitString out(m_);
  for (size_t j = 0; j < m_; ++j)
    out.set_bit(j, static_cast<int>(mix64(acc ^ (0xd1342543de82ef95ULL + j)) >> 63));
  return out;
}

LinearThresholdPuf::LinearThresholdPuf(size_t challenge_bits,
                                       std::vector<std::vector<double>> weights,
                                       std::vector<double> bias)
    : n_(challenge_bits), weights_(std::move(weights)), bias_(std::move(bias)) {
  if (n_ == 0 || weights_.empty())
    throw std::invalid_argument("linear-threshold puf: zero-size dimensions");
  if (weights_.size() != bias_.size())
    throw std::invalid_argument("linear-threshold puf: weight/bias size mismatch");
  for (const auto& row : weights_)
    if (row.size() != n_)
      throw std::invalid_argument("linear-threshold puf: weight row length mismatch");
}

LinearThresholdPuf LinearThresholdPuf::sample(size_t challenge_bits, size_t outcome_bits,
                                              Rng& rng) {
  std::vector<std::vector<double>> w(outcome_bits, std::vector<double>(challenge_bits));
  std::vector<double> b(outcome_bits);
  for (auto& row : w)
    for (auto& v : row) v = rng.gaussian();
  for (auto& v : b) v = rng.gaussian() * 0.1;
  return LinearThresholdPuf(challenge_bits, std::move(w), std::move(b));
}

BitString LinearThresholdPuf::evaluate(const BitString& x) const {
  if (x.size() != n_)
    throw std::invalid_argument("linear-threshold puf: challenge length mismatch");
  BitString out(weights_.size());
  for (size_t j = 0; j < weights_.size(); ++j) {
    double acc = bias_[j];
    for (size_t i = 0; i < n_; ++i)
      acc += weights_[j][i] * (x.bit(i) ? -1.0 : 1.0);
    out.set_bit(j, acc < 0.0 ? 1 : 0);
  }
  return out;
}

BitString apply_classical_shifter(const BitString& outcome, const BitString& expected) {
  return outcome ^ expected;
}

BitString readout_classical(const ClassicalPuf& puf, const BitString& expected,
                            const BitString& x, double flip_p, Rng& rng) {
  if (!(flip_p >= 0.0 && flip_p <= 1.0))
    throw std::invalid_argument("readout_classical: flip_p outside [0, 1]");
  BitString outcome = puf.evaluate(x);
  if (expected.size() != outcome.size())
    throw std::invalid_argument("readout_classical: expected-outcome length mismatch");
  for (size_t i = 0; i < outcome.size(); ++i)
    if (rng.bernoulli(flip_p)) outcome.flip_bit(i);
  return apply_classical_shifter(outcome, expected);
}

}  // namespace pufkit
