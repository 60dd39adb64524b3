#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "purikit/matrix.hpp"

namespace purikit {

template <int N>
struct HermitianEigen {
  std::array<double, N> values;  // ascending
  Mat<N> vectors;                // column k pairs with values[k]
};

// Cyclic Jacobi with phase-factored rotations. Input is read as Hermitian
// (lower triangle inferred from the upper one).
template <int N>
HermitianEigen<N> hermitian_eigendecomposition(const Mat<N>& input) {
  Mat<N> a = input.hermitized();
  Mat<N> v = Mat<N>::identity();

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0, scale = 0;
    for (int i = 0; i < N; ++i) {
      scale = std::max(scale, std::abs(a(i, i)));
      for (int j = i + 1; j < N; ++j) off = std::max(off, std::abs(a(i, j)));
    }
    if (off <= 1e-16 * std::max(scale, 1e-300)) break;

    for (int p = 0; p < N; ++p) {
      for (int q = p + 1; q < N; ++q) {
        const cxd apq = a(p, q);
        const double r = std::abs(apq);
        if (r <= 1e-300) {
          a(p, q) = 0;
          a(q, p) = 0;
          continue;
        }
        const cxd phase = apq / r;  // e^{i phi}
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double tau = (aqq - app) / (2.0 * r);
        const double sg = tau >= 0 ? 1.0 : -1.0;
        const double t = sg / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // Unitary block on (p,q): [[c, s], [-s e^{-i phi}, c e^{-i phi}]].
        const cxd ep = std::conj(phase);

        for (int k = 0; k < N; ++k) {  // right-multiply columns p,q
          const cxd akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * ep * akq;
          a(k, q) = s * akp + c * ep * akq;
          const cxd vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * ep * vkq;
          v(k, q) = s * vkp + c * ep * vkq;
        }
        for (int k = 0; k < N; ++k) {  // left-multiply rows p,q by the adjoint
          const cxd apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * phase * aqk;
          a(q, k) = s * apk + c * phase * aqk;
        }
        a(p, q) = 0;
        a(q, p) = 0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
      }
    }
  }

  std::array<int, N> order{};
  for (int i = 0; i < N; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](int i, int j) { return a(i, i).real() < a(j, j).real(); });

  HermitianEigen<N> out;
  for (int k = 0; k < N; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    for (int i = 0; i < N; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

template <int N>
std::array<double, N> hermitian_eigenvalues(const Mat<N>& a) {
  return hermitian_eigendecomposition(a).values;
}

// Square root of a PSD Hermitian matrix; modes below zero (rounding noise)
// are clamped to zero.
template <int N>
Mat<N> hermitian_sqrt(const Mat<N>& a) {
  const auto eig = hermitian_eigendecomposition(a);
  Mat<N> r;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      cxd s = 0;
      for (int k = 0; k < N; ++k) {
        const double root = eig.values[k] > 0 ? std::sqrt(eig.values[k]) : 0.0;
        s += root * eig.vectors(i, k) * std::conj(eig.vectors(j, k));
      }
      r(i, j) = s;
    }
  return r.hermitized();
}

// Eigenvalues of a general complex matrix: Householder reduction to upper
// Hessenberg form, then Wilkinson-shifted QR with Givens rotations.
std::vector<cxd> dense_eigenvalues(std::vector<cxd> a, int n);
std::vector<cxd> dense_eigenvalues_real(const std::vector<double>& a, int n);

// Determinant via LU with partial pivoting.
cxd dense_determinant(std::vector<cxd> a, int n);
double dense_determinant_real(const std::vector<double>& a, int n);

}  // namespace purikit
