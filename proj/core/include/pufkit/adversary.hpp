#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pufkit/bitstring.hpp"
#include "pufkit/device.hpp"
#include "pufkit/fuzzy.hpp"
#include "pufkit/protocol.hpp"
#include "pufkit/qrpuf.hpp"
#include "pufkit/qubit.hpp"
#include "pufkit/rng.hpp"

namespace pufkit {

// Eavesdropper models. The first three read classical wires; the last two
// interfere with quantum transit legs. Eve never touches enrollment or the
// table internals: everything she learns flows through Transcript.
enum class AttackModel {
  RandomGuess,
  Lookup,
  LinearLearner,
  InterceptResend,
  OptimalCloner,
};

std::string to_string(AttackModel model);
AttackModel attack_model_from_string(const std::string& s);

// One observed verification round. Only the fields the active model can
// capture are filled; helper data and the accept flag are public and always
// recorded. Eve never sees the verifier's response r.
struct TranscriptRound {
  BitString x;        // classical wire challenge (empty on quantum rounds)
  HelperData h;       // public helper data of the consumed entry
  bool accepted = false;
  BitString outcome;  // classical wire outcome, pre-unmasking (empty on quantum)
  BitString meas_challenge;  // intercept-resend: measured challenge bits
  BitString meas_outcome;    // intercept-resend: measured outcome bits
  std::vector<DensityMatrix> kept_challenge;  // optimal-cloner: kept copies
  std::vector<DensityMatrix> kept_outcome;
};

struct Transcript {
  PufKind kind = PufKind::Classical;
  AttackModel model = AttackModel::RandomGuess;
  size_t challenge_bits = 0;  // classical wire width (0 for quantum)
  size_t out_len = 0;         // classical outcome width (0 for quantum)
  size_t lambda = 0;          // quantum register size (0 for classical)
  std::vector<TranscriptRound> rounds;

  size_t q() const { return rounds.size(); }
};

// Copies the classical wires untouched. Any classical eavesdropper reads
// challenge and outcome perfectly; the device cannot notice.
struct FullReadTap final : ClassicalTap {
  BitString challenge;
  BitString outcome;

  BitString challenge_leg(const BitString& x, Rng&) override {
    challenge = x;
    return x;
  }
  BitString outcome_leg(const BitString& v, Rng&) override {
    outcome = v;
    return v;
  }
};

// Measures every transit qubit in the basis {cos(a)|0>+sin(a)|1>, ...} and
// forwards the collapsed basis state. a = 0 is the computational basis.
class InterceptResendTap final : public QuantumTap {
 public:
  explicit InterceptResendTap(double basis_angle = 0.0)
      : basis_angle_(basis_angle) {}

  void round_begin(size_t lambda) override;
  DensityMatrix challenge_leg(size_t qubit, const DensityMatrix& rho,
                              Rng& rng) override;
  DensityMatrix outcome_leg(size_t qubit, const DensityMatrix& rho,
                            Rng& rng) override;

  const BitString& measured_challenge() const { return meas_challenge_; }
  const BitString& measured_outcome() const { return meas_outcome_; }

 private:
  double basis_angle_;
  BitString meas_challenge_;
  BitString meas_outcome_;
};

// Splits every transit qubit with the symmetric cloner calibrated to the
// working angle: both the forwarded state and Eve's kept copy are the
// depolarized state whose overlap with the input equals the single-qubit
// cloning fidelity.
class OptimalClonerTap final : public QuantumTap {
 public:
  explicit OptimalClonerTap(double phi);

  void round_begin(size_t lambda) override;
  DensityMatrix challenge_leg(size_t qubit, const DensityMatrix& rho,
                              Rng& rng) override;
  DensityMatrix outcome_leg(size_t qubit, const DensityMatrix& rho,
                            Rng& rng) override;

  const std::vector<DensityMatrix>& kept_challenge() const { return kept_challenge_; }
  const std::vector<DensityMatrix>& kept_outcome() const { return kept_outcome_; }
  double p_equivalent() const { return p_eq_; }

 private:
  double p_eq_;
  std::vector<DensityMatrix> kept_challenge_;
  std::vector<DensityMatrix> kept_outcome_;
};

// Runs q genuine verifications on randomly chosen live entries with the
// model's channel interference attached, consuming those entries, and returns
// what the model captured. Classical rounds are always read in full (the wire
// is classical; reading it is free); quantum rounds record only measurement or
// clone results. Throws ProtocolError when q exceeds the live entry count and
// std::invalid_argument when the model does not apply to the table kind.
// basis_angle feeds the intercept-resend tap only.
Transcript observe(Crt& crt, ClassicalDevice& genuine, AttackModel model, size_t q,
                   Rng& rng);
Transcript observe(Crt& crt, QuantumDevice& genuine, AttackModel model, size_t q,
                   Rng& rng, double basis_angle = 0.0);

// Clone built from a classical transcript. Model names follow the attack:
// "random-guess" answers with fresh uniform bits; "lookup" replays the stored
// outcome for a seen challenge and an arbitrary captured outcome otherwise;
// "linear-learner" predicts each outcome bit with perceptron-trained
// linear-threshold weights.
class ClassicalCloneDevice final : public ClassicalDevice {
 public:
  ClassicalCloneDevice(AttackModel model, size_t challenge_bits, size_t out_len);

  size_t challenge_bits() const override { return n_; }
  size_t outcome_bits() const override { return out_len_; }
  BitString respond(const BitString& x, Rng& rng) override;

  std::string model_name() const { return to_string(model_); }

 private:
  friend std::unique_ptr<ClassicalCloneDevice> build_classical_clone(
      const Transcript&, AttackModel, Rng&);

  AttackModel model_;
  size_t n_;
  size_t out_len_;
  std::map<BitString, BitString> table_;   // lookup: seen challenge -> outcome
  std::vector<BitString> captured_;        // lookup fallback pool
  std::vector<std::vector<double>> weights_;  // learner: per bit, n_+1 weights
};

// Clone built from a quantum transcript. The verifier drives it like any
// device; it measures incoming qubits and replays the stored round whose
// recorded challenge pattern sits nearest (prefix Hamming distance, ties to
// the earliest round). Intercept-resend replays collapsed basis states,
// optimal-cloner replays the kept outcome copies. With nothing captured the
// clone falls back to a freshly sampled device.
class QuantumCloneDevice final : public QuantumDevice {
 public:
  QuantumCloneDevice(AttackModel model, size_t lambda);

  size_t lambda() const override { return lambda_; }
  void round_begin(Rng& rng) override;
  DensityMatrix respond(size_t qubit, const DensityMatrix& in, Rng& rng) override;

  // spec'd artifact naming: the physical clone is an artifact of the attack
  std::string model_name() const { return to_string(model_) + "-artifact"; }

 private:
  friend std::unique_ptr<QuantumCloneDevice> build_quantum_clone(const Transcript&,
                                                                 AttackModel, Rng&);

  AttackModel model_;
  size_t lambda_;
  std::unique_ptr<GenuineQrDevice> fresh_;   // random-guess / empty fallback
  std::vector<BitString> patterns_;          // per round: challenge signature
  std::vector<BitString> replay_bits_;       // intercept-resend outcome bits
  std::vector<std::vector<DensityMatrix>> replay_states_;  // cloner copies
  std::vector<size_t> prefix_dist_;          // running distance, current round
};

// Transcript/model mismatch (wrong kind or wrong model tag) throws
// std::invalid_argument.
std::unique_ptr<ClassicalCloneDevice> build_classical_clone(const Transcript& t,
                                                            AttackModel model,
                                                            Rng& rng);
std::unique_ptr<QuantumCloneDevice> build_quantum_clone(const Transcript& t,
                                                        AttackModel model, Rng& rng);

// Expected overlap between a lambda-qubit genuine outcome register and its
// optimal symmetric copy: [(1 + sqrt(sin^4 phi + cos^4 phi)) / 2]^lambda.
double clone_fidelity(double phi, size_t lambda);

// Single-qubit cloner action on a family state: the depolarizing channel
// calibrated so the output overlap with the input equals clone_fidelity(phi, 1).
DensityMatrix cloner_channel(const PureQubit& qubit, double phi);

// Depolarizing rate p with 1 - p/2 == clone_fidelity(phi, 1).
double cloner_equivalent_p(double phi);

}  // namespace pufkit
