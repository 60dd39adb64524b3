#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>

namespace purikit {

using cxd = std::complex<double>;

// Dense square complex matrix of fixed size, row-major.
template <int N>
class Mat {
 public:
  Mat() : e_{} {}

  static Mat zero() { return Mat{}; }

  static Mat identity() {
    Mat m;
    for (int i = 0; i < N; ++i) m(i, i) = 1.0;
    return m;
  }

  cxd& operator()(int i, int j) { return e_[static_cast<std::size_t>(i) * N + j]; }
  const cxd& operator()(int i, int j) const { return e_[static_cast<std::size_t>(i) * N + j]; }

  Mat operator+(const Mat& o) const {
    Mat r;
    for (std::size_t k = 0; k < e_.size(); ++k) r.e_[k] = e_[k] + o.e_[k];
    return r;
  }

  Mat operator-(const Mat& o) const {
    Mat r;
    for (std::size_t k = 0; k < e_.size(); ++k) r.e_[k] = e_[k] - o.e_[k];
    return r;
  }

  Mat operator*(const Mat& o) const {
    Mat r;
    for (int i = 0; i < N; ++i)
      for (int k = 0; k < N; ++k) {
        const cxd aik = (*this)(i, k);
        if (aik == cxd{}) continue;
        for (int j = 0; j < N; ++j) r(i, j) += aik * o(k, j);
      }
    return r;
  }

  friend Mat operator*(cxd s, const Mat& m) {
    Mat r;
    for (std::size_t k = 0; k < m.e_.size(); ++k) r.e_[k] = s * m.e_[k];
    return r;
  }

  Mat& operator*=(double s) {
    for (auto& z : e_) z *= s;
    return *this;
  }

  Mat adjoint() const {
    Mat r;
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) r(i, j) = std::conj((*this)(j, i));
    return r;
  }

  Mat conjugate() const {
    Mat r;
    for (std::size_t k = 0; k < e_.size(); ++k) r.e_[k] = std::conj(e_[k]);
    return r;
  }

  cxd trace() const {
    cxd t = 0;
    for (int i = 0; i < N; ++i) t += (*this)(i, i);
    return t;
  }

  double max_abs() const {
    double m = 0;
    for (const auto& z : e_) m = std::max(m, std::abs(z));
    return m;
  }

  // max_ij |a(i,j) - conj(a(j,i))|
  double hermiticity_defect() const {
    double d = 0;
    for (int i = 0; i < N; ++i)
      for (int j = i; j < N; ++j)
        d = std::max(d, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return d;
  }

  // Symmetrized copy with a(i,j) == conj(a(j,i)) holding exactly as stored.
  Mat hermitized() const {
    Mat r;
    for (int i = 0; i < N; ++i) {
      r(i, i) = (*this)(i, i).real();
      for (int j = i + 1; j < N; ++j) {
        const cxd a = 0.5 * ((*this)(i, j) + std::conj((*this)(j, i)));
        r(i, j) = a;
        r(j, i) = std::conj(a);
      }
    }
    return r;
  }

  static double distance(const Mat& a, const Mat& b) { return (a - b).max_abs(); }

 private:
  std::array<cxd, static_cast<std::size_t>(N) * N> e_;
};

using Mat2 = Mat<2>;
using Mat4 = Mat<4>;
using Mat16 = Mat<16>;

}  // namespace purikit
