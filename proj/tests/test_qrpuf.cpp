#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>

#include "pufkit/noise.hpp"
#include "pufkit/qrpuf.hpp"
#include "pufkit/qubit.hpp"
#include "pufkit/rng.hpp"

using namespace pufkit;

constexpr double kPi = 3.14159265358979323846;

static BitString bs(const char* text) { return BitString::from_string(text); }

TEST_CASE("four-state family phases") {
  double phi = 0.6;
  CHECK(family_phase(1, phi) == doctest::Approx(phi).epsilon(1e-15));
  CHECK(family_phase(2, phi) == doctest::Approx(-phi).epsilon(1e-15));
  CHECK(family_phase(3, phi) == doctest::Approx(phi - kPi).epsilon(1e-15));
  CHECK(family_phase(4, phi) == doctest::Approx(kPi - phi).epsilon(1e-15));
  CHECK_THROWS(family_phase(0, phi));
  CHECK_THROWS(family_phase(5, phi));
  CHECK_THROWS(family_phase(1, -0.1));
  CHECK_THROWS(family_phase(1, kPi / 2 + 0.1));
}

TEST_CASE("states one-three and two-four are orthogonal for every angle") {
  Rng rng(2);
  for (int i = 0; i < 200; ++i) {
    double phi = rng.uniform(0.0, kPi / 2);
    CHECK(fidelity(family_state(1, phi), family_state(3, phi)) <= 1e-12);
    CHECK(fidelity(family_state(2, phi), family_state(4, phi)) <= 1e-12);
  }
}

TEST_CASE("challenge encoding maps bit pairs to family states") {
  ChallengeEncoding enc(1, kPi / 4);
  CHECK(enc.challenge_bits() == 2);
  CHECK(enc.state_index(bs("00"), 0) == 1);
  CHECK(enc.state_index(bs("01"), 0) == 2);
  CHECK(enc.state_index(bs("10"), 0) == 3);
  CHECK(enc.state_index(bs("11"), 0) == 4);

  QubitRegister reg = enc.encode(bs("00"));
  REQUIRE(reg.size() == 1);
  CHECK(std::abs(reg[0].a0 - cplx(0.9238795325112867, 0)) <= 1e-12);
  CHECK(std::abs(reg[0].a1 - cplx(0.3826834323650898, 0)) <= 1e-12);

  // second pair encodes state 2: same |0> amplitude, negated |1> amplitude
  ChallengeEncoding enc2(2, 0.9);
  QubitRegister pair = enc2.encode(bs("0001"));
  CHECK(std::abs(pair[0].a0 - pair[1].a0) <= 1e-12);
  CHECK(std::abs(pair[0].a1 + pair[1].a1) <= 1e-12);

  CHECK_THROWS(enc.encode(bs("0000")));          // wrong length
  CHECK_THROWS(ChallengeEncoding(1, 0.0));       // angle must be interior
  CHECK_THROWS(ChallengeEncoding(1, kPi / 2));
}

TEST_CASE("device sampling is deterministic and in range") {
  Rng a(77), b(77);
  QrPuf p1 = sample_qrpuf(5, a), p2 = sample_qrpuf(5, b);
  REQUIRE(p1.gates.size() == 5);
  for (size_t k = 0; k < 5; ++k) {
    CHECK(p1.gates[k].omega == p2.gates[k].omega);
    CHECK(p1.gates[k].psi == p2.gates[k].psi);
    CHECK(p1.gates[k].omega >= 0.0);
    CHECK(p1.gates[k].omega <= kPi / 2);
    CHECK(p1.gates[k].psi >= 0.0);
    CHECK(p1.gates[k].psi <= 2 * kPi);
    CHECK(p1.gates[k].chi >= 0.0);
    CHECK(p1.gates[k].chi <= 2 * kPi);
  }
  CHECK_THROWS(sample_qrpuf(0, a));
}

TEST_CASE("evaluate applies per-qubit gates") {
  QubitRegister reg = {PureQubit{}, make_qubit(0.4, 1.0)};
  QubitRegister same = evaluate(identity_qrpuf(2), reg);
  CHECK(std::abs(same[0].a0 - reg[0].a0) <= 1e-12);
  CHECK(std::abs(same[1].a1 - reg[1].a1) <= 1e-12);

  QrPuf flip{1, {{kPi / 2, 0.0, 0.0}}};
  QubitRegister out = evaluate(flip, {PureQubit{}});
  CHECK(std::abs(out[0].a0) <= 1e-12);
  CHECK(std::abs(out[0].a1 - cplx(-1.0, 0)) <= 1e-12);

  CHECK_THROWS(evaluate(flip, reg));  // size mismatch
}

TEST_CASE("noiseless readout through synthesized shifters is all zero") {
  Rng rng(13);
  ChallengeEncoding enc(6, 0.5);
  QrPuf puf = sample_qrpuf(6, rng);
  std::vector<BitString> xs;
  for (int i = 0; i < 8; ++i) xs.push_back(BitString::random(12, rng));
  ShifterBank bank = build_shifters(puf, xs, enc);
  CHECK(bank.size() <= xs.size());

  NoiseSpec quiet{NoiseSpec::Kind::Depolarizing, 0.0, NoiseSpec::Insertion::Challenge};
  for (const auto& x : xs) {
    BitString o = readout(puf, bank, x, enc, quiet, rng);
    CHECK(o.size() == 6);
    CHECK(hamming_weight(o) == 0);
  }
  CHECK_THROWS(readout(puf, bank, bs("000000000011"), enc, quiet, rng));
}

TEST_CASE("readout weight tracks the depolarizing rate") {
  Rng rng(29);
  size_t lambda = 4;
  ChallengeEncoding enc(lambda, kPi / 4);
  QrPuf puf = sample_qrpuf(lambda, rng);
  BitString x = BitString::random(2 * lambda, rng);
  ShifterBank bank = build_shifters(puf, {x}, enc);

  auto mean_weight = [&](double p, size_t runs) {
    NoiseSpec noise{NoiseSpec::Kind::Depolarizing, p, NoiseSpec::Insertion::Challenge};
    size_t total = 0;
    for (size_t i = 0; i < runs; ++i) total += hamming_weight(readout(puf, bank, x, enc, noise, rng));
    return double(total) / double(runs);
  };

  const size_t runs = 100000;
  double p = 0.3;
  double sigma = std::sqrt(lambda * (p / 2) * (1 - p / 2) / runs);
  CHECK(std::abs(mean_weight(p, runs) - lambda * p / 2) <= 3 * sigma);

  sigma = std::sqrt(lambda * 0.25 / runs);
  CHECK(std::abs(mean_weight(1.0, runs) - lambda * 0.5) <= 3 * sigma);

  // insertion after the device gives the same diagonal statistics
  NoiseSpec after{NoiseSpec::Kind::Depolarizing, p, NoiseSpec::Insertion::Outcome};
  size_t total = 0;
  for (size_t i = 0; i < runs; ++i) total += hamming_weight(readout(puf, bank, x, enc, after, rng));
  sigma = std::sqrt(lambda * (p / 2) * (1 - p / 2) / runs);
  CHECK(std::abs(double(total) / runs - lambda * p / 2) <= 3 * sigma);
}

TEST_CASE("wrong-state error table") {
  double phi = 0.77;
  CHECK(wrong_state_error(1, 1, phi) == 0.0);
  CHECK(wrong_state_error(2, 2, phi) == 0.0);
  CHECK(std::abs(wrong_state_error(1, 2, phi) - std::sin(phi) * std::sin(phi)) <= 1e-12);
  CHECK(std::abs(wrong_state_error(1, 4, phi) - std::cos(phi) * std::cos(phi)) <= 1e-12);
  CHECK(std::abs(wrong_state_error(1, 3, phi) - 1.0) <= 1e-12);
  CHECK(std::abs(wrong_state_error(2, 4, phi) - 1.0) <= 1e-12);
  CHECK_THROWS(wrong_state_error(0, 1, phi));
  CHECK_THROWS(wrong_state_error(1, 5, phi));
}

TEST_CASE("pairwise error sums the per-qubit table") {
  double phi = 0.77;
  ChallengeEncoding enc1(1, phi);
  CHECK(pairwise_error(bs("00"), bs("00"), enc1) == 0.0);
  CHECK(std::abs(pairwise_error(bs("00"), bs("10"), enc1) - 1.0) <= 1e-12);

  ChallengeEncoding enc2(2, phi);
  double expect = std::sin(phi) * std::sin(phi) + 1.0;
  CHECK(std::abs(pairwise_error(bs("0000"), bs("0110"), enc2) - expect) <= 1e-12);
}

TEST_CASE("shifter string pins sixteen-bit fixed point per angle") {
  std::vector<ShifterParams> ps = {{kPi / 2, 0.0}, {0.0, kPi}};
  BitString w = encode_shifter_string(ps);
  REQUIRE(w.size() == 64);
  for (size_t i = 0; i < 16; ++i) CHECK(w.bit(i) == 1);       // alpha full scale
  for (size_t i = 16; i < 32; ++i) CHECK(w.bit(i) == 0);      // beta zero
  for (size_t i = 32; i < 48; ++i) CHECK(w.bit(i) == 0);      // alpha zero
  CHECK(w.bit(48) == 1);                                      // beta half scale rounds up to 32768
  for (size_t i = 49; i < 64; ++i) CHECK(w.bit(i) == 0);

  auto back = decode_shifter_string(w);
  REQUIRE(back.size() == 2);
  CHECK(std::abs(back[0].alpha - kPi / 2) <= 1e-4);
  CHECK(std::abs(back[1].beta - kPi) <= 1e-4);

  Rng rng(41);
  for (int i = 0; i < 500; ++i) {
    std::vector<ShifterParams> orig = {
        {rng.uniform(0, kPi / 2), rng.uniform(0, 2 * kPi)}};
    auto rt = decode_shifter_string(encode_shifter_string(orig));
    CHECK(std::abs(rt[0].alpha - orig[0].alpha) <= 1e-4);
    CHECK(std::abs(rt[0].beta - orig[0].beta) <= 1e-4);
  }
  CHECK_THROWS(decode_shifter_string(bs("101")));  // not a multiple of 32
}

TEST_CASE("mismatched shifter and state reproduce the analytic error rate") {
  Rng rng(53);
  double phi = 0.6;
  SingleQubitUnitary shifter = synthesize_shifter(family_state(2, phi));
  DensityMatrix rho = conjugate_channel(shifter, DensityMatrix::pure(family_state(4, phi)));
  const size_t shots = 20000;
  size_t ones = 0;
  for (size_t i = 0; i < shots; ++i) ones += static_cast<size_t>(measure_computational(rho, rng));
  double expect = wrong_state_error(2, 4, phi);
  double sigma = std::sqrt(expect * (1 - expect) / shots + 1e-12);
  CHECK(std::abs(double(ones) / shots - expect) <= 3 * sigma + 1e-9);
}
