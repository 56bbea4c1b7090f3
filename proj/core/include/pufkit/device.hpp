#pragma once

#include <memory>
#include <vector>

#include "pufkit/bitstring.hpp"
#include "pufkit/classical_puf.hpp"
#include "pufkit/qrpuf.hpp"
#include "pufkit/qubit.hpp"
#include "pufkit/rng.hpp"

namespace pufkit {

// Transit-channel observers. The verification pipeline hands every in-flight
// qubit (or classical string) to the tap; the default is a lossless wire.
// Interference models override the legs and may keep copies.
struct QuantumTap {
  virtual ~QuantumTap() = default;
  virtual void round_begin(size_t /*lambda*/) {}
  virtual DensityMatrix challenge_leg(size_t /*qubit*/, const DensityMatrix& rho,
                                      Rng& /*rng*/) {
    return rho;
  }
  virtual DensityMatrix outcome_leg(size_t /*qubit*/, const DensityMatrix& rho,
                                    Rng& /*rng*/) {
    return rho;
  }
};

struct ClassicalTap {
  virtual ~ClassicalTap() = default;
  virtual void round_begin() {}
  virtual BitString challenge_leg(const BitString& x, Rng& /*rng*/) { return x; }
  virtual BitString outcome_leg(const BitString& v, Rng& /*rng*/) { return v; }
};

// Anything that can sit at the prover's end of the quantum channel. respond
// transforms transit qubit k; genuine hardware applies its gate, fakes may
// ignore the input entirely.
class QuantumDevice {
 public:
  virtual ~QuantumDevice() = default;
  virtual size_t lambda() const = 0;
  virtual void round_begin(Rng& /*rng*/) {}
  virtual DensityMatrix respond(size_t qubit, const DensityMatrix& in, Rng& rng) = 0;
};

// A device the certifier can characterize noiselessly during enrollment.
class QuantumSource : public QuantumDevice {
 public:
  virtual QubitRegister characterize(const QubitRegister& challenge) = 0;
};

class GenuineQrDevice final : public QuantumSource {
 public:
  explicit GenuineQrDevice(QrPuf puf);

  size_t lambda() const override { return puf_.lambda; }
  DensityMatrix respond(size_t qubit, const DensityMatrix& in, Rng& rng) override;
  QubitRegister characterize(const QubitRegister& challenge) override;

  const QrPuf& puf() const { return puf_; }

 private:
  QrPuf puf_;
  std::vector<SingleQubitUnitary> gates_;
};

// Fake that discards its input and emits one fixed state on every wire.
class ConstantQrDevice final : public QuantumDevice {
 public:
  ConstantQrDevice(size_t lambda, PureQubit state);

  size_t lambda() const override { return lambda_; }
  DensityMatrix respond(size_t qubit, const DensityMatrix& in, Rng& rng) override;

 private:
  size_t lambda_;
  DensityMatrix state_;
};

// Classical counterpart: respond is the live (possibly fake) device behavior,
// characterize the certifier's enrollment-time readout.
class ClassicalDevice {
 public:
  virtual ~ClassicalDevice() = default;
  virtual size_t challenge_bits() const = 0;
  virtual size_t outcome_bits() const = 0;
  virtual BitString respond(const BitString& x, Rng& rng) = 0;
};

class ClassicalSource : public ClassicalDevice {
 public:
  virtual BitString characterize(const BitString& x, Rng& rng) = 0;
};

class GenuineClassicalDevice final : public ClassicalSource {
 public:
  explicit GenuineClassicalDevice(std::shared_ptr<const ClassicalPuf> puf);

  size_t challenge_bits() const override { return puf_->challenge_bits(); }
  size_t outcome_bits() const override { return puf_->outcome_bits(); }
  BitString respond(const BitString& x, Rng& rng) override;
  BitString characterize(const BitString& x, Rng& rng) override;

  const ClassicalPuf& puf() const { return *puf_; }

 private:
  std::shared_ptr<const ClassicalPuf> puf_;
};

// Degenerate device that answers every challenge with the same string.
class ConstantClassicalDevice final : public ClassicalSource {
 public:
  ConstantClassicalDevice(size_t challenge_bits, BitString value);

  size_t challenge_bits() const override { return n_; }
  size_t outcome_bits() const override { return value_.size(); }
  BitString respond(const BitString& x, Rng& rng) override;
  BitString characterize(const BitString& x, Rng& rng) override;

 private:
  size_t n_;
  BitString value_;
};

// True-randomness extreme: each readout, enrollment included, is a uniform
// draw from a fixed menu of distinct strings; the challenge is ignored.
class MenuClassicalDevice final : public ClassicalSource {
 public:
  MenuClassicalDevice(size_t challenge_bits, std::vector<BitString> menu);
  static MenuClassicalDevice sample(size_t challenge_bits, size_t out_len,
                                    size_t count, Rng& rng);

  size_t challenge_bits() const override { return n_; }
  size_t outcome_bits() const override { return menu_.front().size(); }
  BitString respond(const BitString& x, Rng& rng) override;
  BitString characterize(const BitString& x, Rng& rng) override;

  const std::vector<BitString>& menu() const { return menu_; }

 private:
  size_t n_;
  std::vector<BitString> menu_;
};

}  // namespace pufkit
