#pragma once

#include <complex>
#include <vector>

#include "pufkit/rng.hpp"

namespace pufkit {

using cplx = std::complex<double>;

// Normalized single-qubit pure state a0|0> + a1|1>.
struct PureQubit {
  cplx a0{1.0, 0.0};
  cplx a1{0.0, 0.0};

  double norm2() const { return std::norm(a0) + std::norm(a1); }
};

// cos(theta)|0> + e^{i phi} sin(theta)|1>, theta in [0, pi], phi in [0, 2pi].
PureQubit make_qubit(double theta, double phi);

// Unrestricted real-amplitude state (cos a, sin a); the equatorial states a
// and -a differ only in the sign of the |1> amplitude.
PureQubit make_qubit_real(double half_angle);

// |<a|b>|^2
double fidelity(const PureQubit& a, const PureQubit& b);

// Row-major 2x2 complex matrix.
struct SingleQubitUnitary {
  cplx u00, u01, u10, u11;
};

// [[e^{i psi} cos w, e^{i chi} sin w], [-e^{-i chi} sin w, e^{-i psi} cos w]]
// with w in [0, pi/2] and psi, chi in [0, 2pi].
SingleQubitUnitary make_unitary(double omega, double psi, double chi);

bool is_unitary(const SingleQubitUnitary& u, double tol = 1e-12);

PureQubit apply_unitary(const SingleQubitUnitary& u, const PureQubit& s);

// Hermitian unitary [[cos a, e^{-ib} sin a], [e^{ib} sin a, -cos a]] that maps
// the target state to |0> up to global phase. The target is first reduced to
// canonical form (real nonnegative |0> amplitude), which fixes a in [0, pi/2].
SingleQubitUnitary synthesize_shifter(const PureQubit& target);

struct ShifterParams {
  double alpha;  // [0, pi/2]
  double beta;   // [0, 2pi)
};

ShifterParams shifter_params(const PureQubit& target);
SingleQubitUnitary shifter_from_params(const ShifterParams& p);

// 2x2 density matrix, Hermitian, trace 1, positive semidefinite.
struct DensityMatrix {
  cplx r00, r01, r10, r11;

  static DensityMatrix pure(const PureQubit& s);
  static DensityMatrix maximally_mixed();

  double trace_real() const { return r00.real() + r11.real(); }
  double min_eigenvalue() const;
};

// (1-p)|s><s| + p I/2
DensityMatrix depolarize(const PureQubit& s, double p);
DensityMatrix depolarize(const DensityMatrix& rho, double p);

// U rho U^dagger
DensityMatrix conjugate_channel(const SingleQubitUnitary& u, const DensityMatrix& rho);

// <s|rho|s>
double fidelity(const PureQubit& s, const DensityMatrix& rho);

// Computational-basis measurement; returns 1 with probability <1|rho|1>
// (clamped to [0,1]). Consumes exactly one uniform draw.
int measure_computational(const DensityMatrix& rho, Rng& rng);

// Separable register: one pure state per qubit. Entangling operations are out
// of scope for this model, so no 2^n amplitude vector exists anywhere.
using QubitRegister = std::vector<PureQubit>;

}  // namespace pufkit
