#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>

#include "pufkit/qubit.hpp"
#include "pufkit/rng.hpp"

using namespace pufkit;

constexpr double kPi = 3.14159265358979323846;

static double cdist(cplx a, cplx b) { return std::abs(a - b); }

static bool close_state(const PureQubit& s, cplx a0, cplx a1, double tol = 1e-12) {
  return cdist(s.a0, a0) <= tol && cdist(s.a1, a1) <= tol;
}

TEST_CASE("make_qubit amplitudes and range checks") {
  CHECK(close_state(make_qubit(0.0, 0.0), 1.0, 0.0));
  CHECK(close_state(make_qubit(kPi / 2, 0.0), 0.0, 1.0));
  CHECK(close_state(make_qubit(kPi / 8, 0.0), 0.9238795325112867, 0.3826834323650898));
  // phase lands on the |1> amplitude
  PureQubit s = make_qubit(kPi / 4, kPi / 2);
  CHECK(cdist(s.a1, cplx(0.0, std::sin(kPi / 4))) <= 1e-12);
  CHECK_THROWS(make_qubit(-0.1, 0.0));
  CHECK_THROWS(make_qubit(kPi + 0.1, 0.0));
  CHECK_THROWS(make_qubit(0.5, -0.1));
  CHECK_THROWS(make_qubit(0.5, 2 * kPi + 0.1));
}

TEST_CASE("make_qubit_real allows negative half angles") {
  PureQubit s = make_qubit_real(-0.3);
  CHECK(cdist(s.a0, std::cos(0.3)) <= 1e-12);
  CHECK(cdist(s.a1, -std::sin(0.3)) <= 1e-12);
  CHECK(s.norm2() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("make_unitary matrix form") {
  SingleQubitUnitary id = make_unitary(0.0, 0.0, 0.0);
  CHECK(cdist(id.u00, 1.0) <= 1e-12);
  CHECK(cdist(id.u01, 0.0) <= 1e-12);
  CHECK(cdist(id.u10, 0.0) <= 1e-12);
  CHECK(cdist(id.u11, 1.0) <= 1e-12);

  SingleQubitUnitary f = make_unitary(kPi / 2, 0.0, 0.0);
  CHECK(cdist(f.u00, 0.0) <= 1e-12);
  CHECK(cdist(f.u01, 1.0) <= 1e-12);
  CHECK(cdist(f.u10, -1.0) <= 1e-12);
  CHECK(cdist(f.u11, 0.0) <= 1e-12);

  double w = 0.7;
  SingleQubitUnitary r = make_unitary(w, 0.0, 0.0);
  CHECK(cdist(r.u00, std::cos(w)) <= 1e-12);
  CHECK(cdist(r.u01, std::sin(w)) <= 1e-12);
  CHECK(cdist(r.u10, -std::sin(w)) <= 1e-12);
  CHECK(cdist(r.u11, std::cos(w)) <= 1e-12);

  CHECK_THROWS(make_unitary(-0.1, 0.0, 0.0));
  CHECK_THROWS(make_unitary(kPi, 0.0, 0.0));
  CHECK_THROWS(make_unitary(0.5, -1.0, 0.0));
  CHECK_THROWS(make_unitary(0.5, 0.0, 7.0));
}

TEST_CASE("apply_unitary is the matrix product") {
  PureQubit s = make_qubit(0.9, 1.3);
  PureQubit t = apply_unitary(make_unitary(0.0, 0.0, 0.0), s);
  CHECK(close_state(t, s.a0, s.a1));

  PureQubit zero;
  PureQubit u = apply_unitary(make_unitary(kPi / 2, 0.0, 0.0), zero);
  CHECK(close_state(u, 0.0, -1.0));
}

TEST_CASE("unitarity and fidelity preservation over random draws") {
  Rng rng(101);
  for (int i = 0; i < 10000; ++i) {
    SingleQubitUnitary u = make_unitary(rng.uniform(0, kPi / 2),
                                        rng.uniform(0, 2 * kPi),
                                        rng.uniform(0, 2 * kPi));
    CHECK(is_unitary(u, 1e-12));
  }
  for (int i = 0; i < 1000; ++i) {
    PureQubit a = make_qubit(rng.uniform(0, kPi), rng.uniform(0, 2 * kPi));
    PureQubit b = make_qubit(rng.uniform(0, kPi), rng.uniform(0, 2 * kPi));
    SingleQubitUnitary u = make_unitary(rng.uniform(0, kPi / 2),
                                        rng.uniform(0, 2 * kPi),
                                        rng.uniform(0, 2 * kPi));
    double before = fidelity(a, b);
    double after = fidelity(apply_unitary(u, a), apply_unitary(u, b));
    CHECK(std::abs(before - after) <= 1e-10);
  }
}

TEST_CASE("shifter synthesis maps its target onto the reference state") {
  SingleQubitUnitary s0 = synthesize_shifter(PureQubit{});
  CHECK(cdist(s0.u00, 1.0) <= 1e-12);
  CHECK(cdist(s0.u11, -1.0) <= 1e-12);

  SingleQubitUnitary s1 = synthesize_shifter(make_qubit(kPi / 2, 0.0));
  CHECK(cdist(s1.u01, 1.0) <= 1e-12);
  CHECK(cdist(s1.u10, 1.0) <= 1e-12);
  CHECK(cdist(s1.u00, 0.0) <= 1e-12);

  PureQubit target{std::cos(kPi / 3), cplx(0.0, 1.0) * std::sin(kPi / 3)};
  PureQubit mapped = apply_unitary(synthesize_shifter(target), target);
  CHECK(close_state(mapped, 1.0, 0.0));

  Rng rng(5);
  for (int i = 0; i < 10000; ++i) {
    PureQubit t = make_qubit(rng.uniform(0, kPi), rng.uniform(0, 2 * kPi));
    SingleQubitUnitary u = synthesize_shifter(t);
    CHECK(is_unitary(u, 1e-12));
    // Hermitian
    CHECK(cdist(u.u01, std::conj(u.u10)) <= 1e-12);
    CHECK(std::abs(u.u00.imag()) <= 1e-12);
    CHECK(std::abs(u.u11.imag()) <= 1e-12);
    PureQubit m = apply_unitary(u, t);
    CHECK(std::abs(std::abs(m.a0) - 1.0) <= 1e-12);
    CHECK(std::abs(m.a1) <= 1e-12);
  }
}

TEST_CASE("shifter parameter round trip") {
  Rng rng(17);
  for (int i = 0; i < 1000; ++i) {
    PureQubit t = make_qubit(rng.uniform(0, kPi), rng.uniform(0, 2 * kPi));
    ShifterParams p = shifter_params(t);
    CHECK(p.alpha >= 0.0);
    CHECK(p.alpha <= kPi / 2 + 1e-12);
    CHECK(p.beta >= 0.0);
    CHECK(p.beta < 2 * kPi + 1e-12);
    SingleQubitUnitary u = shifter_from_params(p);
    PureQubit m = apply_unitary(u, t);
    CHECK(std::abs(m.a1) <= 1e-9);
  }
}

TEST_CASE("depolarize interpolates between projector and mixed state") {
  PureQubit s = make_qubit(0.8, 0.4);
  DensityMatrix pure = depolarize(s, 0.0);
  DensityMatrix proj = DensityMatrix::pure(s);
  CHECK(cdist(pure.r00, proj.r00) <= 1e-12);
  CHECK(cdist(pure.r01, proj.r01) <= 1e-12);

  DensityMatrix mixed = depolarize(s, 1.0);
  CHECK(cdist(mixed.r00, 0.5) <= 1e-12);
  CHECK(cdist(mixed.r01, 0.0) <= 1e-12);

  double p = 0.37;
  DensityMatrix rho = depolarize(s, p);
  CHECK(cdist(rho.r00, (1 - p) * proj.r00 + p * 0.5) <= 1e-12);
  CHECK(cdist(rho.r11, (1 - p) * proj.r11 + p * 0.5) <= 1e-12);
  CHECK(rho.trace_real() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rho.min_eigenvalue() >= -1e-12);

  CHECK_THROWS(depolarize(s, -0.01));
  CHECK_THROWS(depolarize(s, 1.01));
}

TEST_CASE("conjugate channel basics") {
  DensityMatrix rho = depolarize(make_qubit(1.1, 0.2), 0.3);
  DensityMatrix same = conjugate_channel(make_unitary(0, 0, 0), rho);
  CHECK(cdist(same.r01, rho.r01) <= 1e-12);

  SingleQubitUnitary u = make_unitary(0.9, 1.0, 2.0);
  DensityMatrix mm = conjugate_channel(u, DensityMatrix::maximally_mixed());
  CHECK(cdist(mm.r00, 0.5) <= 1e-12);
  CHECK(cdist(mm.r01, 0.0) <= 1e-12);
  CHECK(conjugate_channel(u, rho).trace_real() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("shifter applied to a depolarized state leaves diagonal noise") {
  Rng rng(23);
  for (int i = 0; i < 1000; ++i) {
    PureQubit s = make_qubit(rng.uniform(0, kPi), rng.uniform(0, 2 * kPi));
    double p = rng.uniform();
    DensityMatrix out = conjugate_channel(synthesize_shifter(s), depolarize(s, p));
    CHECK(cdist(out.r00, 1.0 - p / 2) <= 1e-12);
    CHECK(cdist(out.r11, p / 2) <= 1e-12);
    CHECK(cdist(out.r01, 0.0) <= 1e-12);
    CHECK(cdist(out.r10, 0.0) <= 1e-12);
  }
}

TEST_CASE("computational measurement frequencies") {
  Rng rng(31);
  DensityMatrix zero = DensityMatrix::pure(PureQubit{});
  for (int i = 0; i < 1000; ++i) CHECK(measure_computational(zero, rng) == 0);

  size_t ones = 0;
  const size_t shots = 100000;
  for (size_t i = 0; i < shots; ++i)
    ones += static_cast<size_t>(measure_computational(DensityMatrix::maximally_mixed(), rng));
  double sigma = std::sqrt(0.25 / shots);
  CHECK(std::abs(double(ones) / shots - 0.5) <= 3 * sigma);

  // post-shifter depolarized state at p=0.2 measures 1 a tenth of the time
  PureQubit s = make_qubit(0.7, 0.9);
  DensityMatrix rho = conjugate_channel(synthesize_shifter(s), depolarize(s, 0.2));
  ones = 0;
  for (size_t i = 0; i < shots; ++i)
    ones += static_cast<size_t>(measure_computational(rho, rng));
  sigma = std::sqrt(0.1 * 0.9 / shots);
  CHECK(std::abs(double(ones) / shots - 0.1) <= 3 * sigma);
}
