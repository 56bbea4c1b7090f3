#include "pufkit/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "json.hpp"

#include "pufkit/errors.hpp"

namespace pufkit {

using nlohmann::json;

Interval wilson_interval(size_t successes, size_t trials) {
  if (trials == 0) return {0.0, 1.0};
  if (successes > trials)
    throw std::invalid_argument("wilson: successes exceed trials");
  constexpr double z = 1.959963984540054;  // 97.5th normal percentile
  double n = static_cast<double>(trials);
  double phat = static_cast<double>(successes) / n;
  double z2 = z * z;
  double denom = 1.0 + z2 / n;
  double center = (phat + z2 / (2.0 * n)) / denom;
  double half = z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;
  return {std::clamp(center - half, 0.0, 1.0), std::clamp(center + half, 0.0, 1.0)};
}

namespace {

// shared trial loop; Source is QuantumSource or ClassicalSource
template <typename Source>
RobustnessResult robustness_loop(const EnrollConfig& cfg, Source& source, size_t trials,
                                 const Rng& rng) {
  if (trials == 0) throw std::invalid_argument("robustness: trials must be positive");
  RobustnessResult res;
  res.trials = trials;
  Crt crt;
  size_t batch = 0;
  Rng table_stream = rng.derive("table");
  for (size_t i = 0; i < trials; ++i) {
    if (crt.entries.empty() || crt.live() == 0) {
      Rng enroll_rng = table_stream.derive(batch++);
      crt = enroll(source, cfg, enroll_rng);
    }
    Rng trial_rng = rng.derive(i);
    uint64_t id = pick_live_entry(crt, trial_rng);
    VerifyOutcome out = verify(crt, id, source, trial_rng);
    if (out.result == VerifyResult::Accept) ++res.accepted;
  }
  res.rho_hat = static_cast<double>(res.accepted) / static_cast<double>(trials);
  res.ci = wilson_interval(res.accepted, trials);
  return res;
}

}  // namespace

RobustnessResult estimate_robustness(const EnrollConfig& cfg, QuantumSource& source,
                                     size_t trials, const Rng& rng) {
  return robustness_loop(cfg, source, trials, rng);
}

RobustnessResult estimate_robustness(const EnrollConfig& cfg, ClassicalSource& source,
                                     size_t trials, const Rng& rng) {
  return robustness_loop(cfg, source, trials, rng);
}

double binomial_cdf(size_t n, double eps, size_t t) {
  if (n == 0) throw std::invalid_argument("binomial cdf: n = 0");
  if (!(eps >= 0.0 && eps <= 1.0))
    throw std::invalid_argument("binomial cdf: eps outside [0, 1]");
  if (eps == 0.0 || t >= n) return 1.0;
  if (eps == 1.0) return 0.0;  // all n bits flip, t < n
  double ratio = eps / (1.0 - eps);
  double term = std::pow(1.0 - eps, static_cast<double>(n));
  double sum = term;
  for (size_t k = 0; k < t; ++k) {
    term *= ratio * static_cast<double>(n - k) / static_cast<double>(k + 1);
    sum += term;
  }
  return std::min(sum, 1.0);
}

double analytic_robustness(size_t lambda, double p, size_t t) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("analytic robustness: p outside [0, 1]");
  return binomial_cdf(lambda, p / 2.0, t);
}

namespace {

template <typename Source, typename BuildClone>
ClonabilityResult clonability_loop(const EnrollConfig& cfg, Source& genuine,
                                   AttackModel model, size_t q, size_t trials,
                                   const Rng& rng, bool allow_reuse,
                                   const BuildClone& build) {
  if (trials == 0) throw std::invalid_argument("clonability: trials must be positive");
  ClonabilityResult res;
  res.model = model;
  res.q = q;
  res.trials = trials;
  size_t passive_rounds = 0, passive_failures = 0, detected_trials = 0;
  for (size_t i = 0; i < trials; ++i) {
    Rng trial_rng = rng.derive(i);
    Rng enroll_rng = trial_rng.derive("enroll");
    Crt crt = enroll(genuine, cfg, enroll_rng);

    Rng passive_rng = trial_rng.derive("passive");
    Transcript transcript = observe(crt, genuine, model, q, passive_rng);
    size_t failed = 0;
    for (const auto& round : transcript.rounds) failed += round.accepted ? 0 : 1;
    passive_rounds += transcript.q();
    passive_failures += failed;
    if (failed > 0) ++detected_trials;

    Rng clone_rng = trial_rng.derive("clone");
    auto clone = build(transcript, clone_rng);

    Rng active_rng = trial_rng.derive("active");
    uint64_t id;
    if (allow_reuse) {
      if (crt.entries.empty()) throw ProtocolError("clonability: empty table");
      id = crt.entries[active_rng.uniform_index(crt.entries.size())].id;
    } else {
      id = pick_live_entry(crt, active_rng);  // fresh, never-observed entry
    }
    VerifyOutcome out = verify(crt, id, *clone, active_rng, nullptr, allow_reuse);
    if (out.result == VerifyResult::Accept) ++res.clone_accepts;
  }
  res.gamma_hat = static_cast<double>(res.clone_accepts) / static_cast<double>(trials);
  res.delta_hat = 1.0 - res.gamma_hat;
  res.ci = wilson_interval(res.clone_accepts, trials);
  res.disturbance_rate =
      passive_rounds == 0
          ? 0.0
          : static_cast<double>(passive_failures) / static_cast<double>(passive_rounds);
  res.detection_rate = static_cast<double>(detected_trials) / static_cast<double>(trials);
  return res;
}

}  // namespace

ClonabilityResult estimate_clonability(const EnrollConfig& cfg, QuantumSource& genuine,
                                       AttackModel model, size_t q, size_t trials,
                                       const Rng& rng, bool allow_reuse) {
  return clonability_loop(cfg, genuine, model, q, trials, rng, allow_reuse,
                          [&](const Transcript& t, Rng& clone_rng) {
                            return build_quantum_clone(t, model, clone_rng);
                          });
}

ClonabilityResult estimate_clonability(const EnrollConfig& cfg,
                                       ClassicalSource& genuine, AttackModel model,
                                       size_t q, size_t trials, const Rng& rng,
                                       bool allow_reuse) {
  return clonability_loop(cfg, genuine, model, q, trials, rng, allow_reuse,
                          [&](const Transcript& t, Rng& clone_rng) {
                            return build_classical_clone(t, model, clone_rng);
                          });
}

SecurityReport security_tuple(const RobustnessResult& rho, double rho_analytic,
                              const std::vector<std::vector<ClonabilityResult>>& curves,
                              size_t q_star, uint64_t seed) {
  SecurityReport report;
  report.rho_hat = rho.rho_hat;
  report.rho_ci = rho.ci;
  report.rho_analytic = rho_analytic;
  report.q_star = q_star;
  report.trials = rho.trials;
  report.seed = seed;

  double worst_gamma = 0.0;
  for (const auto& curve : curves) {
    if (curve.empty()) throw std::invalid_argument("security tuple: empty curve");
    ModelClonability mc;
    mc.model = curve.front().model;
    std::vector<bool> seen(q_star + 1, false);
    for (const auto& point : curve) {
      if (point.model != mc.model)
        throw std::invalid_argument("security tuple: mixed models in one curve");
      if (point.q <= q_star) seen[point.q] = true;
    }
    for (size_t q = 0; q <= q_star; ++q)
      if (!seen[q])
        throw std::invalid_argument("security tuple: curve misses q = " +
                                    std::to_string(q));
    mc.curve = curve;
    const ClonabilityResult* best = nullptr;
    for (const auto& point : curve)
      if (point.q <= q_star && (!best || point.gamma_hat > best->gamma_hat))
        best = &point;
    mc.gamma_hat = best->gamma_hat;
    mc.delta_hat = 1.0 - best->gamma_hat;
    mc.ci = best->ci;
    worst_gamma = std::max(worst_gamma, mc.gamma_hat);
    report.models.push_back(std::move(mc));
  }
  report.delta_star = 1.0 - worst_gamma;
  return report;
}

namespace {

json interval_json(const Interval& ci) { return json::array({ci.lo, ci.hi}); }

json clonability_json(const ClonabilityResult& r) {
  return json{
      {"model", to_string(r.model)},
      {"q", r.q},
      {"trials", r.trials},
      {"gamma_hat", r.gamma_hat},
      {"delta_hat", r.delta_hat},
      {"ci95", interval_json(r.ci)},
      {"disturbance_rate", r.disturbance_rate},
  };
}

}  // namespace

std::string attack_report_json(const ClonabilityResult& r) {
  return clonability_json(r).dump(2) + "\n";
}

std::string security_report_json(const SecurityReport& r) {
  json models = json::array();
  for (const auto& mc : r.models) {
    json curve = json::array();
    for (const auto& point : mc.curve) curve.push_back(clonability_json(point));
    models.push_back(json{
        {"model", to_string(mc.model)},
        {"gamma_hat", mc.gamma_hat},
        {"delta_hat", mc.delta_hat},
        {"ci95", interval_json(mc.ci)},
        {"curve", std::move(curve)},
    });
  }
  json root{
      {"rho_hat", r.rho_hat},
      {"rho_ci95", interval_json(r.rho_ci)},
      {"rho_analytic", r.rho_analytic},
      {"models", std::move(models)},
      {"q_star", r.q_star},
      {"delta_star", r.delta_star},
      {"tuple", json{{"rho", r.rho_hat}, {"delta_star", r.delta_star}, {"q_star", r.q_star}}},
      {"trials", r.trials},
      {"seed", r.seed},
  };
  return root.dump(2) + "\n";
}

std::string sweep_tsv_header() {
  return "phi\tlambda\tp\tt\tmodel\tq\trho_hat\tgamma_hat\tdelta_hat\n";
}

std::string sweep_tsv_row(const SweepRow& row) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), "%.10g\t%zu\t%.10g\t%zu\t%s\t%zu\t%.10g\t%.10g\t%.10g\n",
                row.phi, row.lambda, row.p, row.t, row.model.c_str(), row.q,
                row.rho_hat, row.gamma_hat, row.delta_hat);
  return buf;
}

}  // namespace pufkit
