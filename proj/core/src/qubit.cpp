#include "pufkit/qubit.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pufkit {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

cplx unit_phase(double angle) { return {std::cos(angle), std::sin(angle)}; }
}  // namespace

PureQubit make_qubit(double theta, double phi) {
  if (!(theta >= 0.0 && theta <= kPi))
    throw std::invalid_argument("make_qubit: theta outside [0, pi]");
  if (!(phi >= 0.0 && phi <= kTwoPi))
    throw std::invalid_argument("make_qubit: phi outside [0, 2pi]");
  return {std::cos(theta), unit_phase(phi) * std::sin(theta)};
}

PureQubit make_qubit_real(double half_angle) {
  return {std::cos(half_angle), std::sin(half_angle)};
}

double fidelity(const PureQubit& a, const PureQubit& b) {
  return std::norm(std::conj(a.a0) * b.a0 + std::conj(a.a1) * b.a1);
}

SingleQubitUnitary make_unitary(double omega, double psi, double chi) {
  if (!(omega >= 0.0 && omega <= kPi / 2.0))
    throw std::invalid_argument("make_unitary: omega outside [0, pi/2]");
  if (!(psi >= 0.0 && psi <= kTwoPi))
    throw std::invalid_argument("make_unitary: psi outside [0, 2pi]");
  if (!(chi >= 0.0 && chi <= kTwoPi))
    throw std::invalid_argument("make_unitary: chi outside [0, 2pi]");
  double c = std::cos(omega), s = std::sin(omega);
  return {unit_phase(psi) * c, unit_phase(chi) * s,
          -unit_phase(-chi) * s, unit_phase(-psi) * c};
}

bool is_unitary(const SingleQubitUnitary& u, double tol) {
  // U U^dagger == I entrywise
  cplx m00 = u.u00 * std::conj(u.u00) + u.u01 * std::conj(u.u01);
  cplx m01 = u.u00 * std::conj(u.u10) + u.u01 * std::conj(u.u11);
  cplx m10 = u.u10 * std::conj(u.u00) + u.u11 * std::conj(u.u01);
  cplx m11 = u.u10 * std::conj(u.u10) + u.u11 * std::conj(u.u11);
  return std::abs(m00 - 1.0) <= tol && std::abs(m11 - 1.0) <= tol &&
         std::abs(m01) <= tol && std::abs(m10) <= tol;
}

PureQubit apply_unitary(const SingleQubitUnitary& u, const PureQubit& s) {
  return {u.u00 * s.a0 + u.u01 * s.a1, u.u10 * s.a0 + u.u11 * s.a1};
}

ShifterParams shifter_params(const PureQubit& target) {
  double n2 = target.norm2();
  if (std::abs(n2 - 1.0) > 1e-9)
    throw std::invalid_argument("shifter_params: target not normalized");
  // Strip the global phase so the |0> amplitude is real and nonnegative;
  // the measured physics is invariant under this choice.
  double mag0 = std::abs(target.a0);
  cplx a1 = target.a1;
  if (mag0 > 0.0) a1 *= std::conj(target.a0) / mag0;
  double mag1 = std::abs(a1);
  double alpha = std::atan2(mag1, mag0);  // in [0, pi/2]
  double beta = 0.0;
  if (mag1 > 1e-15) {
    beta = std::atan2(a1.imag(), a1.real());
    if (beta < 0.0) beta += kTwoPi;
  }
  return {alpha, beta};
}

SingleQubitUnitary shifter_from_params(const ShifterParams& p) {
  double c = std::cos(p.alpha), s = std::sin(p.alpha);
  return {cplx(c, 0.0), unit_phase(-p.beta) * s, unit_phase(p.beta) * s, cplx(-c, 0.0)};
}

SingleQubitUnitary synthesize_shifter(const PureQubit& target) {
  return shifter_from_params(shifter_params(target));
}

DensityMatrix DensityMatrix::pure(const PureQubit& s) {
  return {s.a0 * std::conj(s.a0), s.a0 * std::conj(s.a1),
          s.a1 * std::conj(s.a0), s.a1 * std::conj(s.a1)};
}

DensityMatrix DensityMatrix::maximally_mixed() {
  return {cplx(0.5, 0.0), cplx(0.0, 0.0), cplx(0.0, 0.0), cplx(0.5, 0.0)};
}

double DensityMatrix::min_eigenvalue() const {
  double tr = trace_real();
  double det = (r00 * r11 - r01 * r10).real();
  double disc = tr * tr - 4.0 * det;
  if (disc < 0.0) disc = 0.0;  // Hermitian: negative only through fp noise
  return 0.5 * (tr - std::sqrt(disc));
}

DensityMatrix depolarize(const PureQubit& s, double p) {
  return depolarize(DensityMatrix::pure(s), p);
}

DensityMatrix depolarize(const DensityMatrix& rho, double p) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("depolarize: p outside [0, 1]");
  double keep = 1.0 - p;
  return {keep * rho.r00 + cplx(p * 0.5, 0.0), keep * rho.r01,
          keep * rho.r10, keep * rho.r11 + cplx(p * 0.5, 0.0)};
}

DensityMatrix conjugate_channel(const SingleQubitUnitary& u, const DensityMatrix& rho) {
  // rows of U rho
  cplx t00 = u.u00 * rho.r00 + u.u01 * rho.r10;
  cplx t01 = u.u00 * rho.r01 + u.u01 * rho.r11;
  cplx t10 = u.u10 * rho.r00 + u.u11 * rho.r10;
  cplx t11 = u.u10 * rho.r01 + u.u11 * rho.r11;
  return {t00 * std::conj(u.u00) + t01 * std::conj(u.u01),
          t00 * std::conj(u.u10) + t01 * std::conj(u.u11),
          t10 * std::conj(u.u00) + t11 * std::conj(u.u01),
          t10 * std::conj(u.u10) + t11 * std::conj(u.u11)};
}

double fidelity(const PureQubit& s, const DensityMatrix& rho) {
  cplx v = std::conj(s.a0) * (rho.r00 * s.a0 + rho.r01 * s.a1) +
           std::conj(s.a1) * (rho.r10 * s.a0 + rho.r11 * s.a1);
  return v.real();
}

int measure_computational(const DensityMatrix& rho, Rng& rng) {
  if (std::abs(rho.trace_real() - 1.0) > 1e-9)
    throw std::invalid_argument("measure: density matrix trace != 1");
  double p1 = rho.r11.real();
  if (p1 < 0.0) p1 = 0.0;
  if (p1 > 1.0) p1 = 1.0;
  return rng.uniform() < p1 ? 1 : 0;
}

}  // namespace pufkit
