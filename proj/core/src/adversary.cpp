#include "pufkit/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "pufkit/errors.hpp"

namespace pufkit {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

std::string to_string(AttackModel model) {
  switch (model) {
    case AttackModel::RandomGuess: return "random-guess";
    case AttackModel::Lookup: return "lookup";
    case AttackModel::LinearLearner: return "linear-learner";
    case AttackModel::InterceptResend: return "intercept-resend";
    case AttackModel::OptimalCloner: return "optimal-cloner";
  }
  return "random-guess";
}

AttackModel attack_model_from_string(const std::string& s) {
  if (s == "random-guess") return AttackModel::RandomGuess;
  if (s == "lookup") return AttackModel::Lookup;
  if (s == "linear-learner") return AttackModel::LinearLearner;
  if (s == "intercept-resend") return AttackModel::InterceptResend;
  if (s == "optimal-cloner") return AttackModel::OptimalCloner;
  throw std::invalid_argument("unknown attack model '" + s + "'");
}

namespace {

bool classical_model(AttackModel model) {
  return model == AttackModel::RandomGuess || model == AttackModel::Lookup ||
         model == AttackModel::LinearLearner;
}

bool quantum_model(AttackModel model) {
  return model == AttackModel::RandomGuess ||
         model == AttackModel::InterceptResend ||
         model == AttackModel::OptimalCloner;
}

// Measurement in the rotated real basis {u0 = (cos a, sin a), u1 = (-sin a,
// cos a)}: returns the outcome bit and collapses rho to the observed basis
// state. One uniform draw, like the computational measurement.
int measure_in_basis(const DensityMatrix& rho, double a, Rng& rng,
                     DensityMatrix* collapsed) {
  double c = std::cos(a), s = std::sin(a);
  cplx p1c = s * s * rho.r00 - c * s * (rho.r01 + rho.r10) + c * c * rho.r11;
  double p1 = std::clamp(p1c.real(), 0.0, 1.0);
  int bit = rng.uniform() < p1 ? 1 : 0;
  if (collapsed)
    *collapsed = DensityMatrix::pure(make_qubit_real(a + (bit ? kPi / 2.0 : 0.0)));
  return bit;
}

}  // namespace

void InterceptResendTap::round_begin(size_t lambda) {
  meas_challenge_ = BitString(lambda);
  meas_outcome_ = BitString(lambda);
}

DensityMatrix InterceptResendTap::challenge_leg(size_t qubit, const DensityMatrix& rho,
                                                Rng& rng) {
  DensityMatrix collapsed;
  meas_challenge_.set_bit(qubit, measure_in_basis(rho, basis_angle_, rng, &collapsed));
  return collapsed;
}

DensityMatrix InterceptResendTap::outcome_leg(size_t qubit, const DensityMatrix& rho,
                                              Rng& rng) {
  DensityMatrix collapsed;
  meas_outcome_.set_bit(qubit, measure_in_basis(rho, basis_angle_, rng, &collapsed));
  return collapsed;
}

OptimalClonerTap::OptimalClonerTap(double phi) : p_eq_(cloner_equivalent_p(phi)) {}

void OptimalClonerTap::round_begin(size_t lambda) {
  kept_challenge_.assign(lambda, DensityMatrix::maximally_mixed());
  kept_outcome_.assign(lambda, DensityMatrix::maximally_mixed());
}

DensityMatrix OptimalClonerTap::challenge_leg(size_t qubit, const DensityMatrix& rho,
                                              Rng&) {
  DensityMatrix out = depolarize(rho, p_eq_);
  kept_challenge_[qubit] = out;  // symmetric cloner: kept copy == forwarded copy
  return out;
}

DensityMatrix OptimalClonerTap::outcome_leg(size_t qubit, const DensityMatrix& rho,
                                            Rng&) {
  DensityMatrix out = depolarize(rho, p_eq_);
  kept_outcome_[qubit] = out;
  return out;
}

Transcript observe(Crt& crt, ClassicalDevice& genuine, AttackModel model, size_t q,
                   Rng& rng) {
  if (crt.kind != PufKind::Classical)
    throw std::invalid_argument("observe: table does not hold classical entries");
  if (!classical_model(model))
    throw std::invalid_argument("observe: attack model '" + to_string(model) +
                                "' does not apply to classical wires");
  if (q > crt.live()) throw ProtocolError("observe: q exceeds live table entries");

  Transcript t;
  t.kind = PufKind::Classical;
  t.model = model;
  t.challenge_bits = genuine.challenge_bits();
  t.out_len = genuine.outcome_bits();
  for (size_t i = 0; i < q; ++i) {
    uint64_t id = pick_live_entry(crt, rng);
    TranscriptRound round;
    round.h = crt.find(id)->h;
    FullReadTap tap;
    VerifyOutcome out = verify(crt, id, genuine, rng, &tap);
    round.accepted = out.result == VerifyResult::Accept;
    round.x = std::move(tap.challenge);
    round.outcome = std::move(tap.outcome);
    t.rounds.push_back(std::move(round));
  }
  return t;
}

Transcript observe(Crt& crt, QuantumDevice& genuine, AttackModel model, size_t q,
                   Rng& rng, double basis_angle) {
  if (crt.kind != PufKind::Qr)
    throw std::invalid_argument("observe: table does not hold quantum entries");
  if (!quantum_model(model))
    throw std::invalid_argument("observe: attack model '" + to_string(model) +
                                "' needs classical wire access");
  if (q > crt.live()) throw ProtocolError("observe: q exceeds live table entries");

  Transcript t;
  t.kind = PufKind::Qr;
  t.model = model;
  t.lambda = crt.lambda;
  for (size_t i = 0; i < q; ++i) {
    uint64_t id = pick_live_entry(crt, rng);
    TranscriptRound round;
    round.h = crt.find(id)->h;
    if (model == AttackModel::InterceptResend) {
      InterceptResendTap tap(basis_angle);
      VerifyOutcome out = verify(crt, id, genuine, rng, &tap);
      round.accepted = out.result == VerifyResult::Accept;
      round.meas_challenge = tap.measured_challenge();
      round.meas_outcome = tap.measured_outcome();
    } else if (model == AttackModel::OptimalCloner) {
      OptimalClonerTap tap(crt.phi);
      VerifyOutcome out = verify(crt, id, genuine, rng, &tap);
      round.accepted = out.result == VerifyResult::Accept;
      round.kept_challenge = tap.kept_challenge();
      round.kept_outcome = tap.kept_outcome();
    } else {
      VerifyOutcome out = verify(crt, id, genuine, rng);
      round.accepted = out.result == VerifyResult::Accept;
    }
    t.rounds.push_back(std::move(round));
  }
  return t;
}

ClassicalCloneDevice::ClassicalCloneDevice(AttackModel model, size_t challenge_bits,
                                           size_t out_len)
    : model_(model), n_(challenge_bits), out_len_(out_len) {
  if (n_ == 0 || out_len_ == 0)
    throw std::invalid_argument("clone: zero-width device");
}

BitString ClassicalCloneDevice::respond(const BitString& x, Rng& rng) {
  if (x.size() != n_)
    throw std::invalid_argument("clone: challenge length mismatch");
  switch (model_) {
    case AttackModel::RandomGuess:
      return BitString::random(out_len_, rng);
    case AttackModel::Lookup: {
      auto it = table_.find(x);
      if (it != table_.end()) return it->second;
      // unseen challenge: replay an arbitrary captured outcome; with nothing
      // captured this degrades to random guessing
      if (!captured_.empty()) return captured_[rng.uniform_index(captured_.size())];
      return BitString::random(out_len_, rng);
    }
    case AttackModel::LinearLearner: {
      if (weights_.empty()) return BitString::random(out_len_, rng);
      BitString out(out_len_);
      for (size_t j = 0; j < out_len_; ++j) {
        double score = weights_[j][n_];
        for (size_t i = 0; i < n_; ++i)
          score += weights_[j][i] * (x.bit(i) ? 1.0 : -1.0);
        out.set_bit(j, score > 0.0 ? 1 : 0);
      }
      return out;
    }
    default:
      throw std::logic_error("clone: quantum model in classical device");
  }
}

std::unique_ptr<ClassicalCloneDevice> build_classical_clone(const Transcript& t,
                                                            AttackModel model,
                                                            Rng& rng) {
  (void)rng;  // classical clone construction is deterministic
  if (t.kind != PufKind::Classical)
    throw std::invalid_argument("clone: transcript is not classical");
  if (t.model != model)
    throw std::invalid_argument("clone: transcript was captured under model '" +
                                to_string(t.model) + "'");
  auto dev = std::make_unique<ClassicalCloneDevice>(model, t.challenge_bits, t.out_len);
  if (model == AttackModel::Lookup) {
    for (const auto& round : t.rounds) {
      dev->table_[round.x] = round.outcome;
      dev->captured_.push_back(round.outcome);
    }
  } else if (model == AttackModel::LinearLearner && !t.rounds.empty()) {
    // averaged perceptron per outcome bit over +/-1 features plus a bias term
    size_t n = t.challenge_bits;
    constexpr size_t kEpochs = 50;
    dev->weights_.assign(t.out_len, std::vector<double>(n + 1, 0.0));
    for (size_t j = 0; j < t.out_len; ++j) {
      std::vector<double> w(n + 1, 0.0), acc(n + 1, 0.0);
      for (size_t epoch = 0; epoch < kEpochs; ++epoch) {
        for (const auto& round : t.rounds) {
          double score = w[n];
          for (size_t i = 0; i < n; ++i)
            score += w[i] * (round.x.bit(i) ? 1.0 : -1.0);
          double yi = round.outcome.bit(j) ? 1.0 : -1.0;
          if (yi * score <= 0.0) {
            for (size_t i = 0; i < n; ++i)
              w[i] += yi * (round.x.bit(i) ? 1.0 : -1.0);
            w[n] += yi;
          }
          for (size_t i = 0; i <= n; ++i) acc[i] += w[i];
        }
      }
      dev->weights_[j] = std::move(acc);
    }
  }
  return dev;
}

QuantumCloneDevice::QuantumCloneDevice(AttackModel model, size_t lambda)
    : model_(model), lambda_(lambda) {
  if (lambda_ == 0) throw std::invalid_argument("clone: zero-width register");
}

void QuantumCloneDevice::round_begin(Rng& rng) {
  if (fresh_) {
    fresh_->round_begin(rng);
    return;
  }
  prefix_dist_.assign(patterns_.size(), 0);
}

DensityMatrix QuantumCloneDevice::respond(size_t qubit, const DensityMatrix& in,
                                          Rng& rng) {
  if (qubit >= lambda_) throw std::invalid_argument("clone: qubit index out of range");
  if (fresh_) return fresh_->respond(qubit, in, rng);

  // measure the incoming qubit, then replay from the stored round whose
  // challenge signature is nearest on the bits seen so far
  int b = measure_computational(in, rng);
  size_t best = 0;
  for (size_t r = 0; r < patterns_.size(); ++r) {
    prefix_dist_[r] += static_cast<size_t>(patterns_[r].bit(qubit) != b);
    if (prefix_dist_[r] < prefix_dist_[best]) best = r;
  }
  if (model_ == AttackModel::InterceptResend)
    return DensityMatrix::pure(
        make_qubit_real(replay_bits_[best].bit(qubit) ? kPi / 2.0 : 0.0));
  return replay_states_[best][qubit];
}

std::unique_ptr<QuantumCloneDevice> build_quantum_clone(const Transcript& t,
                                                        AttackModel model, Rng& rng) {
  if (t.kind != PufKind::Qr)
    throw std::invalid_argument("clone: transcript is not quantum");
  if (t.model != model)
    throw std::invalid_argument("clone: transcript was captured under model '" +
                                to_string(t.model) + "'");
  if (!quantum_model(model))
    throw std::invalid_argument("clone: attack model '" + to_string(model) +
                                "' does not build a quantum artifact");
  auto dev = std::make_unique<QuantumCloneDevice>(model, t.lambda);
  if (model == AttackModel::RandomGuess || t.rounds.empty()) {
    dev->fresh_ = std::make_unique<GenuineQrDevice>(sample_qrpuf(t.lambda, rng));
    return dev;
  }
  for (const auto& round : t.rounds) {
    if (model == AttackModel::InterceptResend) {
      dev->patterns_.push_back(round.meas_challenge);
      dev->replay_bits_.push_back(round.meas_outcome);
    } else {
      BitString pattern(t.lambda);
      for (size_t k = 0; k < t.lambda; ++k)
        pattern.set_bit(k, measure_computational(round.kept_challenge[k], rng));
      dev->patterns_.push_back(std::move(pattern));
      dev->replay_states_.push_back(round.kept_outcome);
    }
  }
  return dev;
}

double clone_fidelity(double phi, size_t lambda) {
  if (lambda == 0) throw std::invalid_argument("clone fidelity: lambda must be positive");
  if (!(phi >= 0.0 && phi <= kPi / 2.0))
    throw std::invalid_argument("clone fidelity: phi outside [0, pi/2]");
  double s2 = std::sin(phi) * std::sin(phi);
  double c2 = std::cos(phi) * std::cos(phi);
  double f1 = 0.5 * (1.0 + std::sqrt(s2 * s2 + c2 * c2));
  return std::pow(f1, static_cast<double>(lambda));
}

double cloner_equivalent_p(double phi) {
  return 2.0 * (1.0 - clone_fidelity(phi, 1));
}

DensityMatrix cloner_channel(const PureQubit& qubit, double phi) {
  return depolarize(qubit, cloner_equivalent_p(phi));
}

}  // namespace pufkit
