#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <memory>

#include "pufkit/adversary.hpp"
#include "pufkit/classical_puf.hpp"
#include "pufkit/device.hpp"
#include "pufkit/errors.hpp"
#include "pufkit/protocol.hpp"
#include "pufkit/qrpuf.hpp"
#include "pufkit/rng.hpp"

using namespace pufkit;

constexpr double kPi = 3.14159265358979323846;

TEST_CASE("attack model names round trip") {
  for (AttackModel m : {AttackModel::RandomGuess, AttackModel::Lookup,
                        AttackModel::LinearLearner, AttackModel::InterceptResend,
                        AttackModel::OptimalCloner}) {
    CHECK(attack_model_from_string(to_string(m)) == m);
  }
  CHECK(to_string(AttackModel::InterceptResend) == "intercept-resend");
  CHECK_THROWS(attack_model_from_string("mitm"));
}

static EnrollConfig classical_config(size_t out_len, size_t n_target) {
  EnrollConfig cfg;
  cfg.kind = PufKind::Classical;
  cfg.out_len = out_len;
  cfg.n_target = n_target;
  cfg.noise = {NoiseSpec::Kind::BitFlip, 0.0, NoiseSpec::Insertion::Outcome};
  return cfg;
}

static EnrollConfig qr_config(size_t lambda, size_t n_target) {
  EnrollConfig cfg;
  cfg.kind = PufKind::Qr;
  cfg.lambda = lambda;
  cfg.phi = kPi / 4;
  cfg.n_target = n_target;
  cfg.noise = {NoiseSpec::Kind::Depolarizing, 0.0, NoiseSpec::Insertion::Challenge};
  return cfg;
}

TEST_CASE("classical eavesdropping reads both wires without disturbing them") {
  Rng rng(81);
  auto puf = std::make_shared<KeyedRandomPuf>(16, 8, 0xfeed);
  GenuineClassicalDevice device(puf);
  Crt crt = enroll(device, classical_config(8, 10), rng);
  size_t before = crt.live();
  REQUIRE(before >= 6);

  Transcript t = observe(crt, device, AttackModel::Lookup, 5, rng);
  CHECK(t.kind == PufKind::Classical);
  CHECK(t.model == AttackModel::Lookup);
  CHECK(t.challenge_bits == 16);
  CHECK(t.out_len == 8);
  CHECK(t.q() == 5);
  CHECK(crt.live() == before - 5);

  for (const auto& round : t.rounds) {
    CHECK(round.x.size() == 16);
    CHECK(round.outcome.size() == 8);
    CHECK(round.outcome == puf->evaluate(round.x));  // exact wire copy
    CHECK(round.accepted);  // passive reading never disturbs a classical round
    CHECK(round.h.sketch.size() == 8);
    CHECK(round.meas_challenge.empty());
    CHECK(round.kept_challenge.empty());
  }

  Transcript empty = observe(crt, device, AttackModel::RandomGuess, 0, rng);
  CHECK(empty.q() == 0);

  CHECK_THROWS_AS(observe(crt, device, AttackModel::Lookup, 100, rng), ProtocolError);
  CHECK_THROWS_AS(observe(crt, device, AttackModel::InterceptResend, 1, rng),
                  std::invalid_argument);
}

TEST_CASE("lookup clone replays seen challenges and guesses on fresh ones") {
  Rng rng(82);
  auto puf = std::make_shared<KeyedRandomPuf>(16, 32, 0xbee);
  GenuineClassicalDevice device(puf);
  Crt crt = enroll(device, classical_config(32, 8), rng);

  Transcript t = observe(crt, device, AttackModel::Lookup, 3, rng);
  auto clone = build_classical_clone(t, AttackModel::Lookup, rng);
  CHECK(clone->model_name() == "lookup");
  CHECK(clone->challenge_bits() == 16);
  CHECK(clone->outcome_bits() == 32);

  for (const auto& round : t.rounds)
    CHECK(clone->respond(round.x, rng) == round.outcome);

  // unseen challenge: the reply comes from the captured pool, not the device
  BitString fresh(16);
  fresh.flip_bit(0);
  BitString guess = clone->respond(fresh, rng);
  bool from_pool = false;
  for (const auto& round : t.rounds) from_pool |= (guess == round.outcome);
  CHECK(from_pool);

  // with nothing captured the fallback is uniform guessing
  Transcript blank = observe(crt, device, AttackModel::Lookup, 0, rng);
  auto blind = build_classical_clone(blank, AttackModel::Lookup, rng);
  CHECK(blind->respond(fresh, rng) != blind->respond(fresh, rng));

  CHECK_THROWS_AS(build_classical_clone(t, AttackModel::RandomGuess, rng),
                  std::invalid_argument);
}

TEST_CASE("linear learner reconstructs a linear-threshold device from transcripts") {
  Rng rng(83);
  auto puf = std::make_shared<LinearThresholdPuf>(LinearThresholdPuf::sample(16, 4, rng));
  GenuineClassicalDevice device(puf);
  Crt crt = enroll(device, classical_config(4, 200), rng);
  REQUIRE(crt.live() >= 160);

  Transcript t = observe(crt, device, AttackModel::LinearLearner, 160, rng);
  auto clone = build_classical_clone(t, AttackModel::LinearLearner, rng);

  size_t bits = 0, hits = 0;
  for (int i = 0; i < 500; ++i) {
    BitString x = BitString::random(16, rng);
    BitString want = puf->evaluate(x);
    BitString got = clone->respond(x, rng);
    for (size_t j = 0; j < 4; ++j) {
      ++bits;
      hits += size_t(want.bit(j) == got.bit(j));
    }
  }
  CHECK(double(hits) / double(bits) > 0.9);
}

TEST_CASE("intercept-resend records measured bits and disturbs the channel") {
  Rng rng(84);
  GenuineQrDevice device(sample_qrpuf(16, rng));
  Crt crt = enroll(device, qr_config(16, 12), rng);
  REQUIRE(crt.live() >= 10);

  Transcript t = observe(crt, device, AttackModel::InterceptResend, 10, rng);
  CHECK(t.kind == PufKind::Qr);
  CHECK(t.lambda == 16);

  size_t rejected = 0;
  for (const auto& round : t.rounds) {
    CHECK(round.meas_challenge.size() == 16);
    CHECK(round.meas_outcome.size() == 16);
    CHECK(round.kept_challenge.empty());
    CHECK(round.x.empty());  // no classical wire exists to read
    rejected += round.accepted ? 0 : 1;
  }
  // collapsing every transit qubit wrecks most rounds at t = 0
  CHECK(rejected >= 8);

  CHECK_THROWS_AS(observe(crt, device, AttackModel::Lookup, 1, rng),
                  std::invalid_argument);
}

TEST_CASE("optimal cloner keeps one copy of every transit qubit") {
  Rng rng(85);
  GenuineQrDevice device(sample_qrpuf(6, rng));
  Crt crt = enroll(device, qr_config(6, 8), rng);

  Transcript t = observe(crt, device, AttackModel::OptimalCloner, 3, rng);
  for (const auto& round : t.rounds) {
    CHECK(round.kept_challenge.size() == 6);
    CHECK(round.kept_outcome.size() == 6);
    CHECK(round.meas_challenge.empty());
    for (const auto& rho : round.kept_challenge) {
      CHECK(rho.trace_real() == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(rho.min_eigenvalue() >= -1e-12);
    }
  }

  auto clone = build_quantum_clone(t, AttackModel::OptimalCloner, rng);
  CHECK(clone->model_name() == "optimal-cloner-artifact");
  CHECK(clone->lambda() == 6);
  // the artifact is a usable device: the verifier can drive it end to end
  uint64_t id = pick_live_entry(crt, rng);
  VerifyOutcome out = verify(crt, id, *clone, rng);
  CHECK((out.result == VerifyResult::Accept || out.result == VerifyResult::Reject ||
         out.result == VerifyResult::Uncorrectable));

  Transcript ir = observe(crt, device, AttackModel::InterceptResend, 1, rng);
  CHECK(build_quantum_clone(ir, AttackModel::InterceptResend, rng)->model_name() ==
        "intercept-resend-artifact");
  CHECK_THROWS_AS(build_quantum_clone(ir, AttackModel::OptimalCloner, rng),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_classical_clone(ir, AttackModel::Lookup, rng),
                  std::invalid_argument);
}

TEST_CASE("cloning fidelity closed form") {
  CHECK(clone_fidelity(kPi / 4, 1) == doctest::Approx(0.8535533905932737).epsilon(1e-15));
  CHECK(clone_fidelity(kPi / 4, 10) ==
        doctest::Approx(0.20526122593149468).epsilon(1e-14));
  CHECK(clone_fidelity(kPi / 4, 20) ==
        doctest::Approx(0.042132170870900106).epsilon(1e-14));

  // one qubit at the poles is clonable perfectly
  CHECK(clone_fidelity(0.0, 1) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(clone_fidelity(kPi / 2, 1) == doctest::Approx(1.0).epsilon(1e-15));

  // multiplicative across register sizes
  for (double phi : {0.3, 0.7, 1.1}) {
    CHECK(clone_fidelity(phi, 7) ==
          doctest::Approx(clone_fidelity(phi, 3) * clone_fidelity(phi, 4))
              .epsilon(1e-12));
  }

  CHECK_THROWS(clone_fidelity(kPi / 4, 0));
  CHECK_THROWS(clone_fidelity(-0.1, 1));
  CHECK_THROWS(clone_fidelity(kPi / 2 + 0.1, 1));
}

TEST_CASE("cloner channel hits the calibrated overlap exactly") {
  CHECK(cloner_equivalent_p(kPi / 4) ==
        doctest::Approx(0.29289321881345254).epsilon(1e-15));

  Rng rng(86);
  for (int i = 0; i < 200; ++i) {
    double phi = rng.uniform(0.05, kPi / 2 - 0.05);
    int state = 1 + int(rng.uniform_index(4));
    PureQubit in = family_state(state, phi);
    DensityMatrix out = cloner_channel(in, phi);
    CHECK(std::abs(fidelity(in, out) - clone_fidelity(phi, 1)) <= 1e-12);
  }

  // polar states pass through an identity channel
  PureQubit pole = family_state(1, 0.0);
  DensityMatrix same = cloner_channel(pole, 0.0);
  CHECK(std::abs(fidelity(pole, same) - 1.0) <= 1e-12);

  // post-shifter error frequency of a single cloned leg
  double phi = kPi / 4;
  PureQubit target = family_state(1, phi);
  SingleQubitUnitary shifter = synthesize_shifter(target);
  DensityMatrix rho = conjugate_channel(shifter, cloner_channel(target, phi));
  const size_t shots = 20000;
  size_t ones = 0;
  for (size_t i = 0; i < shots; ++i)
    ones += size_t(measure_computational(rho, rng));
  double expect = cloner_equivalent_p(phi) / 2.0;  // 0.1464466...
  double sigma = std::sqrt(expect * (1 - expect) / shots);
  CHECK(std::abs(double(ones) / shots - expect) <= 3 * sigma);
}
