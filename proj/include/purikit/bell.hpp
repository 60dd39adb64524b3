#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "purikit/matrix.hpp"
#include "purikit/rng.hpp"

namespace purikit {

// Bell-basis index order used everywhere in this library:
//   0: |Psi-> = (|01> - |10>)/sqrt(2)
//   1: |Phi-> = (|00> - |11>)/sqrt(2)
//   2: |Phi+> = (|00> + |11>)/sqrt(2)
//   3: |Psi+> = (|01> + |10>)/sqrt(2)
// Computational order: |00>, |01>, |10>, |11>, first qubit most significant.

struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kEigenFloor = -1e-10;  // min eigenvalue floor
inline constexpr double kXPatternTol = 1e-12;

struct ValidationReport {
  double hermiticity_defect = 0;
  double trace_defect = 0;  // |trace - 1|
  double min_eigenvalue = 0;

  bool hermitian_ok() const { return hermiticity_defect <= kHermitianTol; }
  bool trace_ok() const { return trace_defect <= kTraceTol; }
  bool psd_ok() const { return min_eigenvalue >= kEigenFloor; }
  bool ok() const { return hermitian_ok() && trace_ok() && psd_ok(); }
  std::string summary() const;
};

ValidationReport validate_density(const Mat4& m);

// Basis change: columns of the returned unitary are the Bell states written
// in the computational basis.
const Mat4& bell_basis_unitary();
Mat4 bell_to_computational(const Mat4& bell);
Mat4 computational_to_bell(const Mat4& comp);

// Pure two-qubit state as Bell-basis amplitudes.
struct BellVector {
  std::array<cxd, 4> c{};

  double norm() const;
  static BellVector bell_state(int k);
};

// Two-qubit density matrix stored in the Bell basis. Invariants held by
// construction: exact conjugate symmetry, trace within 1e-12 of one,
// eigenvalues above -1e-10.
class BellDensityMatrix {
 public:
  // Validates, then stores the exactly-symmetrized matrix. Throws
  // ValidationError with the failed checks spelled out.
  static BellDensityMatrix from_matrix(const Mat4& m);

  // Caller guarantees the invariants (used on internally constructed data).
  static BellDensityMatrix unchecked(const Mat4& m) { return BellDensityMatrix(m); }

  static BellDensityMatrix bell_state(int k);
  static BellDensityMatrix maximally_mixed();
  static BellDensityMatrix werner(double fidelity);  // fidelity on |Psi->
  static BellDensityMatrix pure(const BellVector& v);

  const Mat4& matrix() const { return m_; }
  cxd entry(int i, int j) const { return m_(i, j); }
  std::array<double, 4> diagonal() const;

 private:
  explicit BellDensityMatrix(const Mat4& m) : m_(m) {}
  Mat4 m_;
};

// X-patterned state: diagonal plus the (Psi-,Psi+) and (Phi-,Phi+) coherences.
struct XState {
  double r1 = 0, r2 = 0, r3 = 0, r4 = 0;
  cxd r14, r23;

  // Checks r_i in [0,1] (1e-10 slack), trace within 1e-12 of one, and
  // |r14| <= sqrt(r1 r4), |r23| <= sqrt(r2 r3) (1e-10 slack).
  static XState validated(double r1, double r2, double r3, double r4,
                          cxd r14 = {}, cxd r23 = {});

  // nullopt unless every off-pattern entry is within 1e-12 of zero.
  static std::optional<XState> from_density(const BellDensityMatrix& rho);

  BellDensityMatrix embed() const;  // off-pattern entries exactly zero
  std::array<double, 4> eigenvalues() const;  // closed form, descending

  // (r1, r2, r3, r4, Re r14, Im r14, Re r23, Im r23)
  std::array<double, 8> to_vector() const;
  static XState from_vector(const std::array<double, 8>& v);  // no validation
};

enum class StateKind { general, x_state, bell_diagonal };

// Normalized Wishart draw (G G^dagger / trace), then restricted to the
// requested pattern; coherences of x_state draws are clipped onto the
// positivity bounds with their phases kept.
BellDensityMatrix random_density(Rng& rng, StateKind kind);
BellDensityMatrix random_density(std::uint64_t seed, StateKind kind);
XState random_x_state(std::uint64_t seed);

}  // namespace purikit
