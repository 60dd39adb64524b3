#include "purikit/measures.hpp"

#include <cmath>

#include "purikit/eigen.hpp"
#include "purikit/rng.hpp"

namespace purikit {

double concurrence_pure(const BellVector& psi) {
  if (std::abs(psi.norm() - 1.0) > 1e-12)
    throw ValidationError("concurrence_pure requires a unit-norm state");
  const cxd s = -psi.c[0] * psi.c[0] + psi.c[1] * psi.c[1] -
                psi.c[2] * psi.c[2] + psi.c[3] * psi.c[3];
  return std::abs(s);
}

namespace {

const Mat4& spin_flip() {
  // sigma_y x sigma_y, computational basis
  static const Mat4 t = [] {
    Mat4 m;
    m(0, 3) = -1.0;
    m(1, 2) = 1.0;
    m(2, 1) = 1.0;
    m(3, 0) = -1.0;
    return m;
  }();
  return t;
}

}  // namespace

double concurrence_mixed(const BellDensityMatrix& rho) {
  const Mat4 rc = bell_to_computational(rho.matrix());
  const Mat4& tau = spin_flip();
  const Mat4 flipped = tau * rc.conjugate() * tau;
  const Mat4 root = hermitian_sqrt(rc);
  const Mat4 a = (root * flipped * root).hermitized();
  const auto mu = hermitian_eigenvalues(a);  // ascending
  // Rank noise leaves true-zero modes at ~1e-16; taking their square root
  // would inject ~1e-8 into the lambda differences, so floor them relative
  // to the dominant mode before the root.
  const double floor = 1e-12 * std::max(mu[3], 0.0);
  const auto safe_sqrt = [floor](double x) {
    return x > floor ? std::sqrt(x) : 0.0;
  };
  const double c = safe_sqrt(mu[3]) - safe_sqrt(mu[2]) - safe_sqrt(mu[1]) -
                   safe_sqrt(mu[0]);
  return c > 0 ? c : 0.0;
}

std::array<double, 4> bell_fidelities(const BellDensityMatrix& rho) {
  return rho.diagonal();
}

double fidelity(const BellDensityMatrix& rho, const BellVector& psi) {
  cxd s = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      s += std::conj(psi.c[i]) * rho.entry(i, j) * psi.c[j];
  return s.real();
}

BellVector MaxEntangledVector::realize() const {
  BellVector v;
  v.c[0] = cxd{0.0, b_minus};
  v.c[1] = a_minus;
  v.c[2] = cxd{0.0, a_plus};
  v.c[3] = b_plus;
  return v;
}

namespace {

// Real quadratic form of the fidelity over u = (a-, a+, b-, b+).
std::array<double, 16> fidelity_form(const BellDensityMatrix& rho) {
  // c = M u: c1 = i u3', ... mapping below; G = sym(Re(M^dag rho M)).
  Mat4 m;
  m(0, 2) = cxd{0.0, 1.0};  // c1 = i b-
  m(1, 0) = 1.0;            // c2 = a-
  m(2, 1) = cxd{0.0, 1.0};  // c3 = i a+
  m(3, 3) = 1.0;            // c4 = b+
  const Mat4 h = m.adjoint() * rho.matrix() * m;
  std::array<double, 16> g{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      g[i * 4 + j] = 0.5 * (h(i, j).real() + h(j, i).real());
  return g;
}

}  // namespace

MaxFidelityResult max_entangled_fidelity(const BellDensityMatrix& rho,
                                         int starts, double tol) {
  const auto g = fidelity_form(rho);

  const auto form = [&](const std::array<double, 4>& u) {
    double s = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) s += u[i] * g[i * 4 + j] * u[j];
    return s;
  };

  double best_value = -1.0;
  std::array<double, 4> best_u{1, 0, 0, 0};

  for (int s = 0; s < starts; ++s) {
    Rng rng(0x9E3779B97F4A7C15ULL ^ (0x100000001B3ULL * (s + 1)));
    std::array<double, 4> u{};
    double norm = 0;
    while (norm < 1e-6) {
      norm = 0;
      for (auto& x : u) {
        x = rng.normal();
        norm += x * x;
      }
      norm = std::sqrt(norm);
    }
    for (auto& x : u) x /= norm;

    // Power ascent on G + I; the shift keeps the iteration monotone.
    double value = form(u);
    for (int it = 0; it < 10000; ++it) {
      std::array<double, 4> w{};
      for (int i = 0; i < 4; ++i) {
        w[i] = u[i];
        for (int j = 0; j < 4; ++j) w[i] += g[i * 4 + j] * u[j];
      }
      double wn = 0;
      for (const double x : w) wn += x * x;
      wn = std::sqrt(wn);
      for (int i = 0; i < 4; ++i) u[i] = w[i] / wn;
      const double next = form(u);
      const double gain = next - value;
      value = next;
      if (std::abs(gain) < tol) break;
    }
    if (value > best_value) {
      best_value = value;
      best_u = u;
    }
  }

  for (const double x : best_u) {
    if (std::abs(x) > 1e-12) {
      if (x < 0)
        for (auto& y : best_u) y = -y;
      break;
    }
  }
  return MaxFidelityResult{best_value,
                           MaxEntangledVector{best_u[0], best_u[1], best_u[2],
                                              best_u[3]}};
}

}  // namespace purikit
