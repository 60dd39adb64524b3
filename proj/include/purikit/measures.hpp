#pragma once

#include "purikit/bell.hpp"

namespace purikit {

// Concurrence of a unit-norm pure state from its Bell amplitudes:
// |-c1^2 + c2^2 - c3^2 + c4^2|. Throws ValidationError off the unit sphere.
double concurrence_pure(const BellVector& psi);

// Wootters concurrence: max(0, mu1 - mu2 - mu3 - mu4) with mu_k the
// descending square-rooted eigenvalues of sqrt(rho) rho~ sqrt(rho).
double concurrence_mixed(const BellDensityMatrix& rho);

// Diagonal in the Bell basis: overlaps with the four Bell states.
std::array<double, 4> bell_fidelities(const BellDensityMatrix& rho);

// <psi| rho |psi>
double fidelity(const BellDensityMatrix& rho, const BellVector& psi);

// Maximally entangled family member, parameterized by a real unit vector
// (a-, a+, b-, b+): amplitudes (i b-, a-, i a+, b+) in Bell order.
struct MaxEntangledVector {
  double a_minus = 0, a_plus = 0, b_minus = 0, b_plus = 0;
  BellVector realize() const;
};

struct MaxFidelityResult {
  double value;
  MaxEntangledVector argmax;  // sign-fixed: first nonzero component positive
};

// max over maximally entangled |e> of <e| rho |e>, by multi-start projected
// power ascent on the induced real quadratic form.
MaxFidelityResult max_entangled_fidelity(const BellDensityMatrix& rho,
                                         int starts = 64, double tol = 1e-10);

}  // namespace purikit
