#pragma once

#include <map>
#include <vector>

#include "pufkit/bitstring.hpp"
#include "pufkit/noise.hpp"
#include "pufkit/qubit.hpp"
#include "pufkit/rng.hpp"

namespace pufkit {

// Per-qubit gate parameters of a quantum-readout PUF: the device acts on
// qubit k as make_unitary(omega_k, psi_k, chi_k).
struct QrGateParams {
  double omega;  // [0, pi/2]
  double psi;    // [0, 2pi]
  double chi;    // [0, 2pi]
};

struct QrPuf {
  size_t lambda = 0;
  std::vector<QrGateParams> gates;  // size lambda
};

QrPuf sample_qrpuf(size_t lambda, Rng& rng);
QrPuf identity_qrpuf(size_t lambda);

// Equatorial four-state challenge family at working angle phi:
//   phase(1) = phi, phase(2) = -phi, phase(3) = phi - pi, phase(4) = pi - phi,
// qubit state = cos(phase/2)|0> + sin(phase/2)|1>.
// States 1/3 and 2/4 are orthogonal pairs for every phi.
double family_phase(int state_index, double phi);
PureQubit family_state(int state_index, double phi);

// Bit-pair encoding of challenges: 00->1, 01->2, 10->3, 11->4, two bits per
// qubit, so a lambda-qubit register consumes a 2*lambda-bit challenge.
class ChallengeEncoding {
 public:
  ChallengeEncoding(size_t lambda, double phi);

  size_t lambda() const { return lambda_; }
  double phi() const { return phi_; }
  size_t challenge_bits() const { return 2 * lambda_; }

  int state_index(const BitString& x, size_t qubit) const;
  QubitRegister encode(const BitString& x) const;

 private:
  size_t lambda_;
  double phi_;
};

QubitRegister evaluate(const QrPuf& puf, const QubitRegister& reg);

// Expected Hamming weight contribution when state l' is implemented but the
// shifter was tuned for state l: sin^2((phase(l) - phase(l'))/2).
double wrong_state_error(int l, int l_prime, double phi);

// Expected readout weight when challenge x_j is answered through the shifter
// bank row of x_i; sums wrong_state_error over qubit positions.
double pairwise_error(const BitString& x_i, const BitString& x_j,
                      const ChallengeEncoding& enc);

// Shifter tuning string: per qubit, 16-bit fixed-point alpha scaled over
// [0, pi/2] then 16-bit beta scaled over [0, 2pi], both most significant bit
// first; 32 bits per qubit.
BitString encode_shifter_string(const std::vector<ShifterParams>& params);
std::vector<ShifterParams> decode_shifter_string(const BitString& w);

struct ShifterBankEntry {
  std::vector<ShifterParams> params;        // exact synthesized parameters
  std::vector<SingleQubitUnitary> gates;    // exact gates (map outcome to |0>)
  BitString w;                              // quantized tuning string
};

// Challenge-indexed shifter table built from noiseless device characterization.
class ShifterBank {
 public:
  void insert(const BitString& challenge, ShifterBankEntry entry);
  const ShifterBankEntry& at(const BitString& challenge) const;
  bool contains(const BitString& challenge) const;
  size_t size() const { return entries_.size(); }

 private:
  std::map<BitString, ShifterBankEntry> entries_;
};

ShifterBank build_shifters(const QrPuf& puf, const std::vector<BitString>& challenges,
                           const ChallengeEncoding& enc);

// Full single-round readout through the genuine device and the bank's exact
// gates: encode, (noise), device, (noise), shifter, measure each qubit.
// Depolarizing noise enters at the configured insertion point.
BitString readout(const QrPuf& puf, const ShifterBank& bank, const BitString& x,
                  const ChallengeEncoding& enc, const NoiseSpec& noise, Rng& rng);

}  // namespace pufkit
