#include "purikit/eigen.hpp"

#include <cmath>
#include <stdexcept>

namespace purikit {

namespace {

inline cxd& at(std::vector<cxd>& a, int n, int i, int j) {
  return a[static_cast<std::size_t>(i) * n + j];
}

// In-place reduction to upper Hessenberg form by Householder reflectors.
void hessenberg(std::vector<cxd>& a, int n) {
  for (int k = 0; k < n - 2; ++k) {
    double scale = 0;
    for (int i = k + 1; i < n; ++i) scale += std::norm(at(a, n, i, k));
    scale = std::sqrt(scale);
    if (scale <= 1e-300) continue;

    // v = x + e^{i arg(x0)} |x| e0, reflector H = I - 2 v v^* / (v^* v)
    std::vector<cxd> v(n - k - 1);
    for (int i = k + 1; i < n; ++i) v[i - k - 1] = at(a, n, i, k);
    const cxd x0 = v[0];
    const cxd phase = std::abs(x0) > 0 ? x0 / std::abs(x0) : cxd{1.0};
    v[0] += phase * scale;
    double vv = 0;
    for (const auto& z : v) vv += std::norm(z);
    if (vv <= 1e-300) continue;

    // A <- H A : rows k+1..n-1
    for (int j = k; j < n; ++j) {
      cxd s = 0;
      for (int i = k + 1; i < n; ++i) s += std::conj(v[i - k - 1]) * at(a, n, i, j);
      s *= 2.0 / vv;
      for (int i = k + 1; i < n; ++i) at(a, n, i, j) -= s * v[i - k - 1];
    }
    // A <- A H : columns k+1..n-1
    for (int i = 0; i < n; ++i) {
      cxd s = 0;
      for (int j = k + 1; j < n; ++j) s += at(a, n, i, j) * v[j - k - 1];
      s *= 2.0 / vv;
      for (int j = k + 1; j < n; ++j) at(a, n, i, j) -= s * std::conj(v[j - k - 1]);
    }
    for (int i = k + 2; i < n; ++i) at(a, n, i, k) = 0;
  }
}

struct Givens {
  double c;
  cxd s;
};

// Rotation with G applied to rows (i,i+1) zeroing the (i+1) entry of (f,g)^T.
Givens make_givens(cxd f, cxd g) {
  const double af = std::abs(f), ag = std::abs(g);
  if (ag <= 1e-300) return {1.0, cxd{0.0}};
  const double r = std::hypot(af, ag);
  if (af <= 1e-300) return {0.0, std::conj(g) / ag};
  return {af / r, (f / af) * std::conj(g) / r};
}

// Eigenvalue of the 2x2 [[a,b],[c,d]] closer to d (Wilkinson shift).
cxd wilkinson_shift(cxd a, cxd b, cxd c, cxd d) {
  const cxd tr = a + d;
  const cxd det = a * d - b * c;
  const cxd disc = std::sqrt(tr * tr - 4.0 * det);
  const cxd l1 = 0.5 * (tr + disc);
  const cxd l2 = 0.5 * (tr - disc);
  return std::abs(l1 - d) < std::abs(l2 - d) ? l1 : l2;
}

}  // namespace

std::vector<cxd> dense_eigenvalues(std::vector<cxd> a, int n) {
  if (n <= 0) return {};
  if (n == 1) return {a[0]};
  hessenberg(a, n);

  std::vector<cxd> eig(n);
  int hi = n - 1;
  int since_deflation = 0;
  const double eps = 2.3e-16;

  while (hi >= 0) {
    // Deflate negligible subdiagonals.
    for (int i = 0; i < hi; ++i) {
      const double bound =
          eps * (std::abs(at(a, n, i, i)) + std::abs(at(a, n, i + 1, i + 1)));
      if (std::abs(at(a, n, i + 1, i)) <= std::max(bound, 1e-300))
        at(a, n, i + 1, i) = 0;
    }
    if (hi == 0 || at(a, n, hi, hi - 1) == cxd{}) {
      eig[hi] = at(a, n, hi, hi);
      --hi;
      since_deflation = 0;
      continue;
    }

    int lo = hi - 1;
    while (lo > 0 && at(a, n, lo, lo - 1) != cxd{}) --lo;

    if (++since_deflation > 240)
      throw std::runtime_error("eigenvalue iteration did not converge");
    cxd mu = wilkinson_shift(at(a, n, hi - 1, hi - 1), at(a, n, hi - 1, hi),
                             at(a, n, hi, hi - 1), at(a, n, hi, hi));
    if (since_deflation % 24 == 0)
      mu = at(a, n, hi, hi) + 1.1 * std::abs(at(a, n, hi, hi - 1));

    for (int i = lo; i <= hi; ++i) at(a, n, i, i) -= mu;

    // QR by Givens on the subdiagonal, then RQ, inside the active window.
    std::vector<Givens> rot(hi - lo);
    for (int i = lo; i < hi; ++i) {
      const Givens g = make_givens(at(a, n, i, i), at(a, n, i + 1, i));
      rot[i - lo] = g;
      for (int j = i; j <= hi; ++j) {
        const cxd u = at(a, n, i, j), w = at(a, n, i + 1, j);
        at(a, n, i, j) = g.c * u + g.s * w;
        at(a, n, i + 1, j) = -std::conj(g.s) * u + g.c * w;
      }
      at(a, n, i + 1, i) = 0;
    }
    for (int i = lo; i < hi; ++i) {
      const Givens g = rot[i - lo];
      const int top = std::min(i + 1, hi);
      for (int k = lo; k <= top; ++k) {
        const cxd u = at(a, n, k, i), w = at(a, n, k, i + 1);
        at(a, n, k, i) = g.c * u + std::conj(g.s) * w;
        at(a, n, k, i + 1) = -g.s * u + g.c * w;
      }
    }
    for (int i = lo; i <= hi; ++i) at(a, n, i, i) += mu;
  }
  return eig;
}

std::vector<cxd> dense_eigenvalues_real(const std::vector<double>& a, int n) {
  std::vector<cxd> c(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) c[k] = a[k];
  return dense_eigenvalues(std::move(c), n);
}

cxd dense_determinant(std::vector<cxd> a, int n) {
  cxd det = 1.0;
  for (int k = 0; k < n; ++k) {
    int piv = k;
    for (int i = k + 1; i < n; ++i)
      if (std::abs(at(a, n, i, k)) > std::abs(at(a, n, piv, k))) piv = i;
    if (std::abs(at(a, n, piv, k)) <= 1e-300) return 0.0;
    if (piv != k) {
      for (int j = 0; j < n; ++j) std::swap(at(a, n, piv, j), at(a, n, k, j));
      det = -det;
    }
    det *= at(a, n, k, k);
    for (int i = k + 1; i < n; ++i) {
      const cxd f = at(a, n, i, k) / at(a, n, k, k);
      for (int j = k; j < n; ++j) at(a, n, i, j) -= f * at(a, n, k, j);
    }
  }
  return det;
}

double dense_determinant_real(const std::vector<double>& a, int n) {
  std::vector<cxd> c(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) c[k] = a[k];
  return dense_determinant(std::move(c), n).real();
}

}  // namespace purikit
