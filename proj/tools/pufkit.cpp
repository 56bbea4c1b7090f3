// pufkit: enrollment, verification, attack and metrics experiments for
// simulated classical and quantum-readout authentication tokens.
//
// Exit codes: 0 accept/success, 1 reject, 2 usage or config error, 3 data
// error. Every run is reproducible from --seed (or PUFKIT_SEED); the only
// non-reproducible output is the stdout timestamp, suppressed by
// --deterministic. Output files never carry timestamps.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "pufkit/adversary.hpp"
#include "pufkit/classical_puf.hpp"
#include "pufkit/config.hpp"
#include "pufkit/device.hpp"
#include "pufkit/errors.hpp"
#include "pufkit/fuzzy.hpp"
#include "pufkit/metrics.hpp"
#include "pufkit/protocol.hpp"
#include "pufkit/qrpuf.hpp"
#include "pufkit/qubit.hpp"

namespace {

using namespace pufkit;

constexpr double kPi = 3.14159265358979323846;

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot open '" + path + "' for writing");
  out << text;
  out.flush();
  if (!out) throw DataError("write to '" + path + "' failed");
}

void print_timestamp(bool deterministic) {
  if (deterministic) return;
  std::time_t now = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  std::printf("# run %s\n", buf);
}

uint64_t parse_seed_text(const std::string& text, const char* origin) {
  try {
    size_t pos = 0;
    unsigned long long v = std::stoull(text, &pos);
    if (pos != text.size()) throw std::invalid_argument("trailing characters");
    return static_cast<uint64_t>(v);
  } catch (const std::exception&) {
    throw std::invalid_argument(std::string(origin) + " is not a valid seed: '" +
                                text + "'");
  }
}

uint64_t resolve_seed(bool flag_given, uint64_t flag_value, const RunConfig& cfg) {
  if (flag_given) return flag_value;
  if (cfg.seed) return *cfg.seed;
  if (const char* env = std::getenv("PUFKIT_SEED")) return parse_seed_text(env, "PUFKIT_SEED");
  return 1;
}

// Experiment parameters shared by enroll and metrics; every option tracks
// whether it was passed so file values survive unrelated flags.
struct ExperimentFlags {
  std::string config_path;
  uint64_t seed = 0;
  std::string kind;
  size_t lambda = 0, out_len = 0, challenge_bits = 0, n_target = 0, m = 0, t = 0;
  double phi = 0.0, noise_p = 0.0, epsilon = 0.0, xi1 = 0.0, xi2 = 0.0;
  std::string noise_kind, insertion, code, device;
  size_t trials = 0, q = 0, q_star = 0;
  std::string model;

  CLI::Option* seed_opt = nullptr;
  CLI::Option* kind_opt = nullptr;
  CLI::Option* lambda_opt = nullptr;
  CLI::Option* out_len_opt = nullptr;
  CLI::Option* challenge_bits_opt = nullptr;
  CLI::Option* phi_opt = nullptr;
  CLI::Option* n_opt = nullptr;
  CLI::Option* noise_kind_opt = nullptr;
  CLI::Option* noise_p_opt = nullptr;
  CLI::Option* insertion_opt = nullptr;
  CLI::Option* code_opt = nullptr;
  CLI::Option* m_opt = nullptr;
  CLI::Option* epsilon_opt = nullptr;
  CLI::Option* xi1_opt = nullptr;
  CLI::Option* xi2_opt = nullptr;
  CLI::Option* t_opt = nullptr;
  CLI::Option* device_opt = nullptr;
  CLI::Option* trials_opt = nullptr;
  CLI::Option* q_opt = nullptr;
  CLI::Option* q_star_opt = nullptr;
  CLI::Option* model_opt = nullptr;

  void attach(CLI::App* sub) {
    sub->add_option("--config", config_path, "experiment config JSON");
    seed_opt = sub->add_option("--seed", seed, "master seed (fallback: config, PUFKIT_SEED, 1)");
    kind_opt = sub->add_option("--kind", kind, "puf kind: qr | classical");
    lambda_opt = sub->add_option("--lambda", lambda, "qubits per round (qr)");
    out_len_opt = sub->add_option("--out-len", out_len, "outcome bits (classical)");
    challenge_bits_opt =
        sub->add_option("--challenge-bits", challenge_bits, "challenge bits (classical)");
    phi_opt = sub->add_option("--phi", phi, "working angle in (0, pi/2) (qr)");
    n_opt = sub->add_option("--n", n_target, "challenges to enroll");
    noise_kind_opt =
        sub->add_option("--noise-kind", noise_kind, "depolarizing | bitflip");
    noise_p_opt = sub->add_option("--noise-p", noise_p, "noise rate in [0, 1]");
    insertion_opt =
        sub->add_option("--insertion", insertion, "noise insertion: challenge | outcome");
    code_opt = sub->add_option("--code", code,
                               "sketch code: identity | repetition | hamming74 | bch-t<T>");
    m_opt = sub->add_option("--m", m, "extracted response bits");
    epsilon_opt = sub->add_option("--epsilon", epsilon, "extractor closeness bound");
    xi1_opt = sub->add_option("--xi1", xi1, "correctness predictor reuse count");
    xi2_opt = sub->add_option("--xi2", xi2, "correctness predictor outer error");
    t_opt = sub->add_option("--t", t, "correction radius override");
    device_opt = sub->add_option("--device", device,
                                 "source family: genuine | keyed | linear | menu | constant");
    trials_opt = sub->add_option("--trials", trials, "Monte Carlo trials");
    q_opt = sub->add_option("--q", q, "observed rounds before cloning");
    q_star_opt = sub->add_option("--q-star", q_star, "largest q in the security sweep");
    model_opt = sub->add_option("--model", model, "attack model");
  }

  RunConfig merge() const {
    RunConfig cfg = config_path.empty() ? RunConfig{} : load_config(config_path);
    if (kind_opt->count()) {
      cfg.kind = puf_kind_from_string(kind);
      // flipping the kind flips the matching noise default unless overridden
      if (!noise_kind_opt->count())
        cfg.noise.kind = cfg.kind == PufKind::Qr ? NoiseSpec::Kind::Depolarizing
                                                 : NoiseSpec::Kind::BitFlip;
    }
    if (lambda_opt->count()) cfg.lambda = lambda;
    if (out_len_opt->count()) cfg.out_len = out_len;
    if (challenge_bits_opt->count()) cfg.challenge_bits = challenge_bits;
    if (phi_opt->count()) cfg.phi = phi;
    if (n_opt->count()) cfg.n_target = n_target;
    if (noise_kind_opt->count()) cfg.noise.kind = noise_kind_from_string(noise_kind);
    if (noise_p_opt->count()) cfg.noise.p = noise_p;
    if (insertion_opt->count()) cfg.noise.insertion = insertion_from_string(insertion);
    if (code_opt->count()) cfg.code = code;
    if (m_opt->count()) cfg.m = m;
    if (epsilon_opt->count()) cfg.epsilon = epsilon;
    if (xi1_opt->count()) cfg.xi1 = xi1;
    if (xi2_opt->count()) cfg.xi2 = xi2;
    if (t_opt->count()) cfg.t_override = t;
    if (device_opt->count()) cfg.device = device;
    if (trials_opt->count()) cfg.trials = trials;
    if (q_opt->count()) cfg.q = q;
    if (q_star_opt->count()) cfg.q_star = q_star;
    if (model_opt->count()) cfg.attack_model = model;
    if (seed_opt->count()) cfg.seed = seed;
    return cfg;
  }
};

// ---------------------------------------------------------------- enroll --

int cmd_enroll(const RunConfig& cfg, uint64_t seed, const std::string& out_path,
               bool digest_only, bool deterministic) {
  validate_config(cfg);
  print_timestamp(deterministic);
  std::printf("# seed %llu\n", static_cast<unsigned long long>(seed));

  EnrollConfig ecfg = to_enroll_config(cfg);
  EnrollStats stats;
  Rng enroll_rng = Rng(seed).derive("enroll");
  Crt crt;
  if (cfg.kind == PufKind::Qr) {
    auto source = make_qr_source(cfg, seed);
    crt = enroll(*source, ecfg, enroll_rng, &stats);
  } else {
    auto source = make_classical_source(cfg, seed);
    crt = enroll(*source, ecfg, enroll_rng, &stats);
  }
  crt_save(crt, out_path, digest_only);

  std::printf("enrolled %zu entries (requested %zu, pruned %zu)\n", stats.enrolled,
              stats.requested, stats.pruned);
  std::printf("t = %zu%s\n", stats.t,
              stats.collision_warning
                  ? "  (warning: challenge separation below the noise mean)"
                  : "");
  std::printf("noise mean %.6g, min pairwise error %.6g\n", stats.noise_mean,
              stats.min_pairwise_error);
  std::printf("outcome-string entropy %.6g bits over %zu entries\n",
              stats.w_entropy_bits, stats.enrolled);
  std::printf("wrote %s\n", out_path.c_str());
  return 0;
}

// ---------------------------------------------------------------- verify --

RunConfig run_config_from_crt(const Crt& crt, const std::string& device_kind) {
  if (crt.entries.empty()) throw DataError("table holds no entries");
  RunConfig cfg;
  cfg.kind = crt.kind;
  cfg.noise = crt.noise;
  cfg.code = crt.fe.code;
  cfg.m = crt.fe.m;
  cfg.epsilon = crt.fe.epsilon;
  cfg.t_override = crt.fe.t;
  cfg.n_target = crt.entries.size();
  if (crt.kind == PufKind::Qr) {
    cfg.lambda = crt.lambda;
    cfg.phi = crt.phi;
    cfg.device = "genuine";
  } else {
    cfg.out_len = crt.out_len;
    cfg.challenge_bits = crt.entries.front().x.size();
    cfg.device = device_kind;
  }
  return cfg;
}

int cmd_verify(const std::string& crt_path, const std::string& entry_text,
               bool seed_given, uint64_t seed_flag, const std::string& presented,
               const std::string& device_kind, bool noise_given, double noise_p,
               bool allow_reuse, bool deterministic) {
  Crt crt = crt_load(crt_path);
  RunConfig cfg = run_config_from_crt(crt, device_kind);
  uint64_t seed = resolve_seed(seed_given, seed_flag, cfg);
  print_timestamp(deterministic);

  if (noise_given) {
    if (!(noise_p >= 0.0 && noise_p <= 1.0))
      throw std::invalid_argument("--noise-p outside [0, 1]");
    crt.noise.p = noise_p;
  }

  Rng rng = Rng(seed).derive("verify");
  uint64_t id;
  if (entry_text == "random") {
    id = pick_live_entry(crt, rng);
  } else {
    try {
      size_t pos = 0;
      id = std::stoull(entry_text, &pos);
      if (pos != entry_text.size()) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      throw std::invalid_argument("--entry must be an id or \"random\"");
    }
  }

  std::string family = presented;
  if (family == "genuine" && crt.kind == PufKind::Classical) family = device_kind;

  VerifyOutcome out;
  if (crt.kind == PufKind::Qr) {
    auto device = make_qr_device(family, cfg, seed);
    out = verify(crt, id, *device, rng, nullptr, allow_reuse);
  } else {
    auto device = make_classical_device(family, cfg, seed);
    out = verify(crt, id, *device, rng, nullptr, allow_reuse);
  }
  crt_save(crt, crt_path);  // entry consumed whatever the outcome

  std::printf("entry %llu: %s\n", static_cast<unsigned long long>(id),
              out.result == VerifyResult::Accept       ? "ACCEPT"
              : out.result == VerifyResult::Reject     ? "REJECT"
                                                       : "UNCORRECTABLE");
  return out.result == VerifyResult::Accept ? 0 : 1;
}

// ---------------------------------------------------------------- attack --

EnrollConfig enroll_config_from_crt(const Crt& crt) {
  EnrollConfig cfg;
  cfg.kind = crt.kind;
  cfg.lambda = crt.lambda;
  cfg.out_len = crt.out_len;
  cfg.phi = crt.phi;
  cfg.n_target = crt.entries.size();
  cfg.noise = crt.noise;
  cfg.code = crt.fe.code;
  cfg.m = crt.fe.m;
  cfg.epsilon = crt.fe.epsilon;
  cfg.t_override = crt.fe.t;
  return cfg;
}

int cmd_attack(const std::string& crt_path, const std::string& model_text, size_t q,
               size_t trials, bool seed_given, uint64_t seed_flag,
               const std::string& device_kind, const std::string& out_path,
               bool allow_reuse, bool deterministic) {
  Crt crt = crt_load(crt_path);
  AttackModel model = attack_model_from_string(model_text);
  RunConfig cfg = run_config_from_crt(crt, device_kind);
  uint64_t seed = resolve_seed(seed_given, seed_flag, cfg);
  print_timestamp(deterministic);

  if (!allow_reuse && q + 1 > crt.entries.size())
    throw ProtocolError("attack: q + 1 verifications need " + std::to_string(q + 1) +
                        " entries, table holds " + std::to_string(crt.entries.size()));

  // the stored table is the experiment description; each trial re-enrolls a
  // fresh one because verification consumes entries
  EnrollConfig ecfg = enroll_config_from_crt(crt);
  Rng rng = Rng(seed).derive("attack");
  ClonabilityResult res;
  if (crt.kind == PufKind::Qr) {
    auto source = make_qr_source(cfg, seed);
    res = estimate_clonability(ecfg, *source, model, q, trials, rng, allow_reuse);
  } else {
    auto source = make_classical_source(cfg, seed);
    res = estimate_clonability(ecfg, *source, model, q, trials, rng, allow_reuse);
  }

  std::string report = attack_report_json(res);
  if (!out_path.empty()) {
    write_file(out_path, report);
    std::printf("gamma_hat %.6g  delta_hat %.6g  disturbance %.6g  detection %.6g\n",
                res.gamma_hat, res.delta_hat, res.disturbance_rate, res.detection_rate);
    std::printf("wrote %s\n", out_path.c_str());
  } else {
    std::fputs(report.c_str(), stdout);
  }
  return 0;
}

// --------------------------------------------------------------- metrics --

int cmd_metrics(const RunConfig& cfg, uint64_t seed, const std::string& out_path,
                const std::string& tsv_path, bool deterministic) {
  validate_config(cfg);
  print_timestamp(deterministic);
  std::printf("# seed %llu\n", static_cast<unsigned long long>(seed));

  EnrollConfig ecfg = to_enroll_config(cfg);
  std::unique_ptr<QuantumSource> qr_source;
  std::unique_ptr<ClassicalSource> cl_source;
  if (cfg.kind == PufKind::Qr)
    qr_source = make_qr_source(cfg, seed);
  else
    cl_source = make_classical_source(cfg, seed);

  // probe enrollment: reports the correction radius actually in force
  EnrollStats stats;
  {
    Rng probe_rng = Rng(seed).derive("probe");
    if (qr_source)
      enroll(*qr_source, ecfg, probe_rng, &stats);
    else
      enroll(*cl_source, ecfg, probe_rng, &stats);
  }

  Rng rho_rng = Rng(seed).derive("rho");
  RobustnessResult rho = qr_source
                             ? estimate_robustness(ecfg, *qr_source, cfg.trials, rho_rng)
                             : estimate_robustness(ecfg, *cl_source, cfg.trials, rho_rng);

  double rho_analytic = cfg.kind == PufKind::Qr
                            ? analytic_robustness(cfg.lambda, cfg.noise.p, stats.t)
                            : binomial_cdf(cfg.out_len, cfg.noise.p, stats.t);

  size_t fe_l = cfg.kind == PufKind::Qr ? 33 * cfg.lambda : 2 * cfg.out_len;
  CanettiResult predictor =
      canetti_correctness(stats.t, fe_l, cfg.m, cfg.xi1, cfg.xi2);

  std::vector<AttackModel> models =
      cfg.kind == PufKind::Qr
          ? std::vector<AttackModel>{AttackModel::RandomGuess,
                                     AttackModel::InterceptResend,
                                     AttackModel::OptimalCloner}
          : std::vector<AttackModel>{AttackModel::RandomGuess, AttackModel::Lookup,
                                     AttackModel::LinearLearner};

  Rng gamma_rng = Rng(seed).derive("gamma");
  std::vector<std::vector<ClonabilityResult>> curves;
  for (AttackModel model : models) {
    std::vector<ClonabilityResult> curve;
    Rng model_rng = gamma_rng.derive(to_string(model));
    for (size_t q = 0; q <= cfg.q_star; ++q) {
      Rng point_rng = model_rng.derive(q);
      curve.push_back(qr_source
                          ? estimate_clonability(ecfg, *qr_source, model, q, cfg.trials,
                                                 point_rng)
                          : estimate_clonability(ecfg, *cl_source, model, q, cfg.trials,
                                                 point_rng));
    }
    curves.push_back(std::move(curve));
  }

  SecurityReport report = security_tuple(rho, rho_analytic, curves, cfg.q_star, seed);

  std::printf("rho_hat %.6g  [%.6g, %.6g]  analytic %.6g\n", report.rho_hat,
              report.rho_ci.lo, report.rho_ci.hi, report.rho_analytic);
  std::printf("correctness predictor: failure %.6g, robustness %.6g (xi1 %.6g, xi2 %.6g)\n",
              predictor.value, 1.0 - predictor.value, cfg.xi1, cfg.xi2);
  for (const auto& mc : report.models)
    std::printf("model %-16s gamma_hat %.6g  delta_hat %.6g  [%.6g, %.6g]\n",
                to_string(mc.model).c_str(), mc.gamma_hat, mc.delta_hat, mc.ci.lo,
                mc.ci.hi);
  std::printf("tuple (rho, delta*, q*) = (%.6g, %.6g, %zu)\n", report.rho_hat,
              report.delta_star, report.q_star);

  std::string json_text = security_report_json(report);
  if (!out_path.empty()) {
    write_file(out_path, json_text);
    std::printf("wrote %s\n", out_path.c_str());
  } else {
    std::fputs(json_text.c_str(), stdout);
  }

  if (!tsv_path.empty()) {
    std::string tsv = sweep_tsv_header();
    for (const auto& mc : report.models)
      for (const auto& point : mc.curve) {
        SweepRow row;
        row.phi = cfg.kind == PufKind::Qr ? cfg.phi : 0.0;
        row.lambda = cfg.kind == PufKind::Qr ? cfg.lambda : cfg.out_len;
        row.p = cfg.noise.p;
        row.t = stats.t;
        row.model = to_string(point.model);
        row.q = point.q;
        row.rho_hat = report.rho_hat;
        row.gamma_hat = point.gamma_hat;
        row.delta_hat = point.delta_hat;
        tsv += sweep_tsv_row(row);
      }
    write_file(tsv_path, tsv);
    std::printf("wrote %s\n", tsv_path.c_str());
  }
  return 0;
}

// ---------------------------------------------------------------- table1 --

int cmd_table1(double phi, size_t shots, uint64_t seed, const std::string& out_path,
               bool deterministic) {
  if (shots == 0) throw std::invalid_argument("--shots must be positive");
  print_timestamp(deterministic);

  Rng rng = Rng(seed).derive("table1");
  std::string tsv = "l\tl_prime\tanalytic\tmonte_carlo\tshots\n";
  for (int l = 1; l <= 4; ++l) {
    // shifter tuned for state l, answered by state l_prime
    SingleQubitUnitary shifter = synthesize_shifter(family_state(l, phi));
    for (int lp = 1; lp <= 4; ++lp) {
      double analytic = wrong_state_error(l, lp, phi);
      DensityMatrix rho =
          conjugate_channel(shifter, DensityMatrix::pure(family_state(lp, phi)));
      size_t ones = 0;
      for (size_t s = 0; s < shots; ++s)
        ones += static_cast<size_t>(measure_computational(rho, rng));
      char line[128];
      std::snprintf(line, sizeof(line), "%d\t%d\t%.17g\t%.10g\t%zu\n", l, lp, analytic,
                    static_cast<double>(ones) / static_cast<double>(shots), shots);
      tsv += line;
    }
  }
  if (!out_path.empty()) {
    write_file(out_path, tsv);
    std::printf("wrote %s\n", out_path.c_str());
  } else {
    std::fputs(tsv.c_str(), stdout);
  }
  return 0;
}

// -------------------------------------------------------------- fidelity --

int cmd_fidelity(double phi, const std::string& lambdas_text, size_t grid,
                 const std::string& out_path, bool deterministic) {
  print_timestamp(deterministic);

  std::vector<size_t> lambdas;
  std::stringstream ss(lambdas_text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t pos = 0;
      unsigned long long v = std::stoull(item, &pos);
      if (pos != item.size() || v == 0) throw std::invalid_argument("bad");
      lambdas.push_back(static_cast<size_t>(v));
    } catch (const std::exception&) {
      throw std::invalid_argument("--lambdas must be a comma list of positive integers");
    }
  }
  if (lambdas.empty()) throw std::invalid_argument("--lambdas is empty");

  std::string tsv = "lambda\tfidelity\n";
  for (size_t lam : lambdas) {
    char line[64];
    std::snprintf(line, sizeof(line), "%zu\t%.17g\n", lam, clone_fidelity(phi, lam));
    tsv += line;
  }
  if (grid > 0) {
    // scan the open interval; the fidelity is symmetric about pi/4
    double best_phi = 0.0, best_f = 2.0;
    for (size_t i = 1; i <= grid; ++i) {
      double g = kPi / 2.0 * static_cast<double>(i) / static_cast<double>(grid + 1);
      double f = clone_fidelity(g, 1);
      if (f < best_f) {
        best_f = f;
        best_phi = g;
      }
    }
    char line[128];
    std::snprintf(line, sizeof(line), "# grid minimum F(phi, 1) = %.17g at phi = %.17g (%zu points)\n",
                  best_f, best_phi, grid);
    tsv += line;
  }
  if (!out_path.empty()) {
    write_file(out_path, tsv);
    std::printf("wrote %s\n", out_path.c_str());
  } else {
    std::fputs(tsv.c_str(), stdout);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"entity authentication experiments with simulated classical and "
               "quantum-readout tokens"};
  app.require_subcommand(1);

  // enroll
  auto* enroll_cmd = app.add_subcommand("enroll", "characterize a device and write its challenge table");
  ExperimentFlags enroll_flags;
  enroll_flags.attach(enroll_cmd);
  std::string enroll_out = "crt.json";
  bool enroll_digest = false, enroll_det = false;
  enroll_cmd->add_option("--out", enroll_out, "challenge table path");
  enroll_cmd->add_flag("--digest-only", enroll_digest,
                       "store response digests instead of responses");
  enroll_cmd->add_flag("--deterministic", enroll_det, "suppress timestamps");

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "run one verification round against a table");
  std::string verify_crt, verify_entry = "random", verify_device = "genuine",
              verify_device_kind = "keyed";
  uint64_t verify_seed = 0;
  double verify_noise_p = 0.0;
  bool verify_reuse = false, verify_det = false;
  verify_cmd->add_option("--crt", verify_crt, "challenge table path")->required();
  verify_cmd->add_option("--entry", verify_entry, "entry id or \"random\"");
  auto* verify_seed_opt = verify_cmd->add_option("--seed", verify_seed, "master seed");
  verify_cmd->add_option("--device", verify_device,
                         "who shows up: genuine | random | constant");
  verify_cmd->add_option("--device-kind", verify_device_kind,
                         "classical hardware family of the genuine device");
  auto* verify_noise_opt =
      verify_cmd->add_option("--noise-p", verify_noise_p, "noise rate override");
  verify_cmd->add_flag("--allow-crp-reuse", verify_reuse,
                       "demo flag: permit consumed entries");
  verify_cmd->add_flag("--deterministic", verify_det, "suppress timestamps");

  // attack
  auto* attack_cmd = app.add_subcommand("attack", "estimate clone success against a table's configuration");
  std::string attack_crt, attack_model, attack_device_kind = "keyed", attack_out;
  size_t attack_q = 1, attack_trials = 1000;
  uint64_t attack_seed = 0;
  bool attack_reuse = false, attack_det = false;
  attack_cmd->add_option("--crt", attack_crt, "challenge table path")->required();
  attack_cmd->add_option("--model", attack_model, "attack model")->required();
  attack_cmd->add_option("--q", attack_q, "observed rounds before cloning");
  attack_cmd->add_option("--trials", attack_trials, "Monte Carlo trials");
  auto* attack_seed_opt = attack_cmd->add_option("--seed", attack_seed, "master seed");
  attack_cmd->add_option("--device-kind", attack_device_kind,
                         "classical hardware family of the genuine device");
  attack_cmd->add_option("--out", attack_out, "report JSON path");
  attack_cmd->add_flag("--allow-crp-reuse", attack_reuse,
                       "demo flag: verify the clone on possibly observed entries");
  attack_cmd->add_flag("--deterministic", attack_det, "suppress timestamps");

  // metrics
  auto* metrics_cmd = app.add_subcommand("metrics", "full robustness/unclonability pipeline");
  ExperimentFlags metrics_flags;
  metrics_flags.attach(metrics_cmd);
  std::string metrics_out, metrics_tsv;
  bool metrics_det = false;
  metrics_cmd->add_option("--out", metrics_out, "security report JSON path");
  metrics_cmd->add_option("--tsv", metrics_tsv, "sweep TSV path");
  metrics_cmd->add_flag("--deterministic", metrics_det, "suppress timestamps");

  // table1
  auto* table1_cmd = app.add_subcommand("table1", "shifter/state mismatch error table");
  double table1_phi = kPi / 4.0;
  size_t table1_shots = 100000;
  uint64_t table1_seed = 0;
  std::string table1_out;
  bool table1_det = false;
  table1_cmd->add_option("--phi", table1_phi, "working angle in [0, pi/2]");
  table1_cmd->add_option("--shots", table1_shots, "measurement shots per cell");
  auto* table1_seed_opt = table1_cmd->add_option("--seed", table1_seed, "master seed");
  table1_cmd->add_option("--out", table1_out, "TSV path");
  table1_cmd->add_flag("--deterministic", table1_det, "suppress timestamps");

  // fidelity
  auto* fidelity_cmd = app.add_subcommand("fidelity", "optimal clone fidelity table");
  double fidelity_phi = kPi / 4.0;
  std::string fidelity_lambdas = "1,10,20", fidelity_out;
  size_t fidelity_grid = 0;
  bool fidelity_det = false;
  fidelity_cmd->add_option("--phi", fidelity_phi, "working angle in [0, pi/2]");
  fidelity_cmd->add_option("--lambdas", fidelity_lambdas, "comma list of register sizes");
  fidelity_cmd->add_option("--grid", fidelity_grid,
                           "also scan this many angles for the minimum");
  fidelity_cmd->add_option("--out", fidelity_out, "TSV path");
  fidelity_cmd->add_flag("--deterministic", fidelity_det, "suppress timestamps");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*enroll_cmd) {
      RunConfig cfg = enroll_flags.merge();
      uint64_t seed = resolve_seed(enroll_flags.seed_opt->count() > 0,
                                   enroll_flags.seed, cfg);
      return cmd_enroll(cfg, seed, enroll_out, enroll_digest, enroll_det);
    }
    if (*verify_cmd)
      return cmd_verify(verify_crt, verify_entry, verify_seed_opt->count() > 0,
                        verify_seed, verify_device, verify_device_kind,
                        verify_noise_opt->count() > 0, verify_noise_p, verify_reuse,
                        verify_det);
    if (*attack_cmd)
      return cmd_attack(attack_crt, attack_model, attack_q, attack_trials,
                        attack_seed_opt->count() > 0, attack_seed, attack_device_kind,
                        attack_out, attack_reuse, attack_det);
    if (*metrics_cmd) {
      RunConfig cfg = metrics_flags.merge();
      uint64_t seed = resolve_seed(metrics_flags.seed_opt->count() > 0,
                                   metrics_flags.seed, cfg);
      return cmd_metrics(cfg, seed, metrics_out, metrics_tsv, metrics_det);
    }
    if (*table1_cmd) {
      uint64_t seed = table1_seed_opt->count() > 0
                          ? table1_seed
                          : (std::getenv("PUFKIT_SEED")
                                 ? parse_seed_text(std::getenv("PUFKIT_SEED"),
                                                   "PUFKIT_SEED")
                                 : 1);
      return cmd_table1(table1_phi, table1_shots, seed, table1_out, table1_det);
    }
    if (*fidelity_cmd)
      return cmd_fidelity(fidelity_phi, fidelity_lambdas, fidelity_grid, fidelity_out,
                          fidelity_det);
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const ProtocolError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
