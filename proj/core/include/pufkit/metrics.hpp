#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pufkit/adversary.hpp"
#include "pufkit/device.hpp"
#include "pufkit/protocol.hpp"
#include "pufkit/rng.hpp"

namespace pufkit {

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
};

// 95% Wilson score interval, clipped to [0, 1]. Chosen over the Wald interval
// for sane behavior at frequencies of exactly 0 or 1, which the degenerate
// device families hit.
Interval wilson_interval(size_t successes, size_t trials);

struct RobustnessResult {
  double rho_hat = 0.0;
  Interval ci;
  size_t accepted = 0;
  size_t trials = 0;
};

// Acceptance frequency of the genuine device over `trials` verification
// rounds, each on a uniformly chosen live entry. Entries are consumed, so a
// fresh table is enrolled from the same source whenever the current one runs
// out. All randomness is derived from `rng`'s seed; results are reproducible
// and independent of external state.
RobustnessResult estimate_robustness(const EnrollConfig& cfg, QuantumSource& source,
                                     size_t trials, const Rng& rng);
RobustnessResult estimate_robustness(const EnrollConfig& cfg, ClassicalSource& source,
                                     size_t trials, const Rng& rng);

// P[Bin(n, eps) <= t]: probability that at most t of n independent bits flip
// when each flips with probability eps.
double binomial_cdf(size_t n, double eps, size_t t);

// Closed-form acceptance probability for a lambda-qubit readout with
// depolarizing rate p and correction radius t: each post-shifter bit flips
// independently with probability p/2, so this is the binomial CDF
// sum_{k<=t} C(lambda, k) (p/2)^k (1 - p/2)^{lambda - k}.
double analytic_robustness(size_t lambda, double p, size_t t);

struct ClonabilityResult {
  AttackModel model = AttackModel::RandomGuess;
  size_t q = 0;
  size_t trials = 0;
  size_t clone_accepts = 0;
  double gamma_hat = 0.0;  // clone acceptance frequency
  double delta_hat = 1.0;  // 1 - gamma_hat, exactly
  Interval ci;
  double disturbance_rate = 0.0;  // passive genuine rounds not accepted
  double detection_rate = 0.0;    // trials with at least one failed passive round
};

// One full attack experiment per trial: enroll a fresh table, let the
// eavesdropper watch q genuine verifications (consuming q entries), build the
// clone from what she captured, then verify the clone once on an entry she
// has not seen. With allow_reuse the final entry is instead drawn from the
// whole table, consumed or not, demonstrating what response reuse gives away.
ClonabilityResult estimate_clonability(const EnrollConfig& cfg, QuantumSource& genuine,
                                       AttackModel model, size_t q, size_t trials,
                                       const Rng& rng, bool allow_reuse = false);
ClonabilityResult estimate_clonability(const EnrollConfig& cfg,
                                       ClassicalSource& genuine, AttackModel model,
                                       size_t q, size_t trials, const Rng& rng,
                                       bool allow_reuse = false);

struct ModelClonability {
  AttackModel model = AttackModel::RandomGuess;
  std::vector<ClonabilityResult> curve;  // one point per q, 0..q_star
  double gamma_hat = 0.0;                // max over the curve
  double delta_hat = 1.0;
  Interval ci;  // interval of the maximizing point
};

struct SecurityReport {
  double rho_hat = 0.0;
  Interval rho_ci;
  double rho_analytic = 0.0;
  std::vector<ModelClonability> models;
  size_t q_star = 0;
  double delta_star = 1.0;  // 1 - max gamma over every model and q <= q_star
  size_t trials = 0;
  uint64_t seed = 0;
};

// Assembles the (rho, delta*, q*) summary. Every curve must hold exactly the
// points q = 0..q_star for a single model; missing coverage throws
// std::invalid_argument. delta* is taken against the worst (largest) observed
// clone success at or below q_star.
SecurityReport security_tuple(const RobustnessResult& rho, double rho_analytic,
                              const std::vector<std::vector<ClonabilityResult>>& curves,
                              size_t q_star, uint64_t seed);

// JSON record with fields {model, q, trials, gamma_hat, delta_hat, ci95,
// disturbance_rate}.
std::string attack_report_json(const ClonabilityResult& r);

std::string security_report_json(const SecurityReport& r);

// Sweep tabulation: one row per (phi, lambda, p, t, model, q).
struct SweepRow {
  double phi = 0.0;
  size_t lambda = 0;
  double p = 0.0;
  size_t t = 0;
  std::string model;
  size_t q = 0;
  double rho_hat = 0.0;
  double gamma_hat = 0.0;
  double delta_hat = 0.0;
};

std::string sweep_tsv_header();
std::string sweep_tsv_row(const SweepRow& row);

}  // namespace pufkit
