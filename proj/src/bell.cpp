#include "purikit/bell.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "purikit/eigen.hpp"

namespace purikit {

namespace {

Mat4 build_bell_unitary() {
  const double s2 = 1.0 / std::sqrt(2.0);
  Mat4 u;
  // columns: |Psi->, |Phi->, |Phi+>, |Psi+>; rows: |00>, |01>, |10>, |11>
  u(0, 1) = s2;
  u(0, 2) = s2;
  u(1, 0) = s2;
  u(1, 3) = s2;
  u(2, 0) = -s2;
  u(2, 3) = s2;
  u(3, 1) = -s2;
  u(3, 2) = s2;
  return u;
}

}  // namespace

const Mat4& bell_basis_unitary() {
  static const Mat4 u = build_bell_unitary();
  return u;
}

Mat4 bell_to_computational(const Mat4& bell) {
  const Mat4& u = bell_basis_unitary();
  return u * bell * u.adjoint();
}

Mat4 computational_to_bell(const Mat4& comp) {
  const Mat4& u = bell_basis_unitary();
  return u.adjoint() * comp * u;
}

std::string ValidationReport::summary() const {
  std::ostringstream os;
  os << "hermiticity defect " << hermiticity_defect
     << (hermitian_ok() ? " (ok)" : " (FAIL)") << ", trace defect " << trace_defect
     << (trace_ok() ? " (ok)" : " (FAIL)") << ", min eigenvalue " << min_eigenvalue
     << (psd_ok() ? " (ok)" : " (FAIL)");
  return os.str();
}

ValidationReport validate_density(const Mat4& m) {
  ValidationReport r;
  r.hermiticity_defect = m.hermiticity_defect();
  r.trace_defect = std::abs(m.trace() - cxd{1.0});
  r.min_eigenvalue = hermitian_eigenvalues(m.hermitized())[0];
  return r;
}

double BellVector::norm() const {
  double s = 0;
  for (const auto& z : c) s += std::norm(z);
  return std::sqrt(s);
}

BellVector BellVector::bell_state(int k) {
  BellVector v;
  v.c[k] = 1.0;
  return v;
}

BellDensityMatrix BellDensityMatrix::from_matrix(const Mat4& m) {
  const ValidationReport rep = validate_density(m);
  if (!rep.ok()) throw ValidationError("not a density matrix: " + rep.summary());
  return BellDensityMatrix(m.hermitized());
}

BellDensityMatrix BellDensityMatrix::bell_state(int k) {
  Mat4 m;
  m(k, k) = 1.0;
  return BellDensityMatrix(m);
}

BellDensityMatrix BellDensityMatrix::maximally_mixed() {
  Mat4 m;
  for (int i = 0; i < 4; ++i) m(i, i) = 0.25;
  return BellDensityMatrix(m);
}

BellDensityMatrix BellDensityMatrix::werner(double fidelity) {
  if (fidelity < 0.0 || fidelity > 1.0)
    throw ValidationError("werner fidelity outside [0,1]");
  Mat4 m;
  m(0, 0) = fidelity;
  for (int i = 1; i < 4; ++i) m(i, i) = (1.0 - fidelity) / 3.0;
  return BellDensityMatrix(m);
}

BellDensityMatrix BellDensityMatrix::pure(const BellVector& v) {
  const double n = v.norm();
  if (std::abs(n - 1.0) > 1e-12)
    throw ValidationError("pure state amplitudes are not unit norm");
  Mat4 m;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m(i, j) = v.c[i] * std::conj(v.c[j]);
  return BellDensityMatrix(m.hermitized());
}

std::array<double, 4> BellDensityMatrix::diagonal() const {
  return {m_(0, 0).real(), m_(1, 1).real(), m_(2, 2).real(), m_(3, 3).real()};
}

XState XState::validated(double r1, double r2, double r3, double r4, cxd r14,
                         cxd r23) {
  std::ostringstream bad;
  const double rs[4] = {r1, r2, r3, r4};
  for (int i = 0; i < 4; ++i)
    if (rs[i] < -1e-10 || rs[i] > 1.0 + 1e-10)
      bad << " r" << i + 1 << "=" << rs[i] << " outside [0,1];";
  if (std::abs(r1 + r2 + r3 + r4 - 1.0) > kTraceTol)
    bad << " trace defect " << std::abs(r1 + r2 + r3 + r4 - 1.0) << ";";
  const double b14 = std::sqrt(std::max(r1, 0.0) * std::max(r4, 0.0));
  const double b23 = std::sqrt(std::max(r2, 0.0) * std::max(r3, 0.0));
  if (std::abs(r14) > b14 + 1e-10)
    bad << " |r14|=" << std::abs(r14) << " exceeds sqrt(r1 r4)=" << b14 << ";";
  if (std::abs(r23) > b23 + 1e-10)
    bad << " |r23|=" << std::abs(r23) << " exceeds sqrt(r2 r3)=" << b23 << ";";
  if (!bad.str().empty()) throw ValidationError("invalid X state:" + bad.str());
  return XState{r1, r2, r3, r4, r14, r23};
}

std::optional<XState> XState::from_density(const BellDensityMatrix& rho) {
  const Mat4& m = rho.matrix();
  const int off[8][2] = {{0, 1}, {0, 2}, {1, 0}, {1, 3}, {2, 0}, {2, 3}, {3, 1}, {3, 2}};
  for (const auto& ij : off)
    if (std::abs(m(ij[0], ij[1])) > kXPatternTol) return std::nullopt;
  return XState{m(0, 0).real(), m(1, 1).real(), m(2, 2).real(), m(3, 3).real(),
                m(0, 3), m(1, 2)};
}

BellDensityMatrix XState::embed() const {
  Mat4 m;
  m(0, 0) = r1;
  m(1, 1) = r2;
  m(2, 2) = r3;
  m(3, 3) = r4;
  m(0, 3) = r14;
  m(3, 0) = std::conj(r14);
  m(1, 2) = r23;
  m(2, 1) = std::conj(r23);
  return BellDensityMatrix::unchecked(m);
}

std::array<double, 4> XState::eigenvalues() const {
  const auto pair_eigs = [](double ra, double rb, double mag) {
    const double mid = 0.5 * (ra + rb);
    const double half = 0.5 * std::sqrt((ra - rb) * (ra - rb) + 4.0 * mag * mag);
    return std::array<double, 2>{mid + half, mid - half};
  };
  const auto p14 = pair_eigs(r1, r4, std::abs(r14));
  const auto p23 = pair_eigs(r2, r3, std::abs(r23));
  std::array<double, 4> e = {p14[0], p14[1], p23[0], p23[1]};
  std::sort(e.begin(), e.end(), std::greater<>());
  return e;
}

std::array<double, 8> XState::to_vector() const {
  return {r1, r2, r3, r4, r14.real(), r14.imag(), r23.real(), r23.imag()};
}

XState XState::from_vector(const std::array<double, 8>& v) {
  return XState{v[0], v[1], v[2], v[3], cxd{v[4], v[5]}, cxd{v[6], v[7]}};
}

namespace {

// Clip a coherence onto its positivity bound, keeping the phase.
cxd clip_coherence(cxd z, double bound) {
  const double mag = std::abs(z);
  if (mag <= bound || mag <= 0) return z;
  return z * (bound / mag);
}

}  // namespace

BellDensityMatrix random_density(Rng& rng, StateKind kind) {
  Mat4 g;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) g(i, j) = cxd{rng.normal(), rng.normal()};
  Mat4 w = g * g.adjoint();
  const double tr = w.trace().real();
  w *= 1.0 / tr;
  w = w.hermitized();

  switch (kind) {
    case StateKind::general:
      return BellDensityMatrix::unchecked(w);
    case StateKind::bell_diagonal: {
      Mat4 d;
      for (int i = 0; i < 4; ++i) d(i, i) = w(i, i).real();
      return BellDensityMatrix::unchecked(d);
    }
    case StateKind::x_state: {
      const double r1 = w(0, 0).real(), r2 = w(1, 1).real();
      const double r3 = w(2, 2).real(), r4 = w(3, 3).real();
      const cxd r14 = clip_coherence(w(0, 3), std::sqrt(r1 * r4));
      const cxd r23 = clip_coherence(w(1, 2), std::sqrt(r2 * r3));
      return XState::validated(r1, r2, r3, r4, r14, r23).embed();
    }
  }
  throw std::logic_error("unreachable state kind");
}

BellDensityMatrix random_density(std::uint64_t seed, StateKind kind) {
  Rng rng(seed);
  return random_density(rng, kind);
}

XState random_x_state(std::uint64_t seed) {
  return *XState::from_density(random_density(seed, StateKind::x_state));
}

}  // namespace purikit
