#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>

#include "purikit/bell.hpp"
#include "purikit/eigen.hpp"
#include "purikit/measures.hpp"
#include "purikit/rng.hpp"

using namespace purikit;

namespace {

BellVector random_unit_vector(Rng& rng) {
  BellVector v;
  double norm2 = 0;
  for (int i = 0; i < 4; ++i) {
    v.c[i] = cxd(rng.normal(), rng.normal());
    norm2 += std::norm(v.c[i]);
  }
  const double inv = 1.0 / std::sqrt(norm2);
  for (auto& a : v.c) a *= inv;
  return v;
}

// Independent route: C = |<psi*| sigma_y (x) sigma_y |psi>| evaluated in the
// computational basis, i.e. |2 psi_1 psi_2 - 2 psi_0 psi_3| (no conjugation).
double concurrence_via_spin_flip(const BellVector& psi) {
  const Mat4 u = bell_basis_unitary();
  cxd comp[4] = {};
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k) comp[i] += u(i, k) * psi.c[k];
  return std::abs(2.0 * comp[1] * comp[2] - 2.0 * comp[0] * comp[3]);
}

// Rank-2 state with a coherence outside the X pattern; purifies to the
// singlet in one protocol step even though its singlet fidelity is c.
BellDensityMatrix seesaw_state(double c) {
  Mat4 m = Mat4::zero();
  m(0, 0) = c;
  m(2, 2) = (1.0 - c) / 2.0;
  m(3, 3) = (1.0 - c) / 2.0;
  m(2, 3) = (1.0 - c) / 2.0;
  m(3, 2) = (1.0 - c) / 2.0;
  return BellDensityMatrix::from_matrix(m);
}

// Rank-2 state: x |u><u| + (1-x) |phi+><phi+| with |u> = (|psi-> + i|phi->)/sqrt(2).
BellDensityMatrix dephased_state(double x) {
  Mat4 m = Mat4::zero();
  m(0, 0) = x / 2.0;
  m(1, 1) = x / 2.0;
  m(0, 1) = cxd(0.0, -x / 2.0);
  m(1, 0) = cxd(0.0, x / 2.0);
  m(2, 2) = 1.0 - x;
  return BellDensityMatrix::from_matrix(m);
}

}  // namespace

TEST_CASE("pure concurrence: Bell states and product states") {
  for (int k = 0; k < 4; ++k) {
    BellVector v{};
    v.c[k] = 1.0;
    CHECK(concurrence_pure(v) == doctest::Approx(1.0).epsilon(1e-12));
  }
  // |00> = (|phi+> + |phi->)/sqrt(2) is separable.
  BellVector prod{};
  prod.c[1] = 1.0 / std::sqrt(2.0);
  prod.c[2] = 1.0 / std::sqrt(2.0);
  CHECK(concurrence_pure(prod) == doctest::Approx(0.0).epsilon(1e-12));
  // |01> = (|psi+> + |psi->)/sqrt(2) likewise.
  BellVector prod2{};
  prod2.c[0] = 1.0 / std::sqrt(2.0);
  prod2.c[3] = 1.0 / std::sqrt(2.0);
  CHECK(concurrence_pure(prod2) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("pure concurrence agrees with the spin-flip overlap") {
  Rng rng(2024);
  for (int t = 0; t < 400; ++t) {
    const BellVector v = random_unit_vector(rng);
    CHECK(std::abs(concurrence_pure(v) - concurrence_via_spin_flip(v)) < 1e-12);
  }
}

TEST_CASE("pure concurrence rejects non-unit vectors") {
  BellVector v{};
  v.c[0] = 0.5;
  CHECK_THROWS_AS(concurrence_pure(v), ValidationError);
}

TEST_CASE("mixed concurrence reduces to the pure formula on projectors") {
  Rng rng(77);
  for (int t = 0; t < 100; ++t) {
    const BellVector v = random_unit_vector(rng);
    const double pure = concurrence_pure(v);
    const double mixed = concurrence_mixed(BellDensityMatrix::pure(v));
    CHECK(std::abs(pure - mixed) < 1e-9);
  }
}

TEST_CASE("mixed concurrence on Bell-diagonal states is max(0, 2 max_i r_i - 1)") {
  CHECK(concurrence_mixed(BellDensityMatrix::werner(0.8)) ==
        doctest::Approx(0.6).epsilon(1e-10));
  CHECK(concurrence_mixed(BellDensityMatrix::maximally_mixed()) ==
        doctest::Approx(0.0).epsilon(1e-10));
  CHECK(concurrence_mixed(BellDensityMatrix::werner(0.5)) ==
        doctest::Approx(0.0).epsilon(1e-10));
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const BellDensityMatrix rho = random_density(seed, StateKind::bell_diagonal);
    const auto diag = rho.diagonal();
    double top = diag[0];
    for (double d : diag) top = std::max(top, d);
    const double expected = std::max(0.0, 2.0 * top - 1.0);
    CHECK(std::abs(concurrence_mixed(rho) - expected) < 1e-9);
  }
}

TEST_CASE("seesaw family: concurrence c but singlet fidelity only c") {
  for (const double c : {0.1, 0.3, 0.5, 0.9}) {
    const BellDensityMatrix rho = seesaw_state(c);
    CHECK(std::abs(concurrence_mixed(rho) - c) < 1e-9);
    BellVector singlet{};
    singlet.c[0] = 1.0;
    CHECK(fidelity(rho, singlet) == doctest::Approx(c).epsilon(1e-12));
  }
}

TEST_CASE("bell_fidelities returns the Bell-basis diagonal") {
  const BellDensityMatrix rho = BellDensityMatrix::werner(0.7);
  const auto f = bell_fidelities(rho);
  CHECK(f[0] == doctest::Approx(0.7).epsilon(1e-14));
  CHECK(f[1] == doctest::Approx(0.1).epsilon(1e-14));
  CHECK(f[2] == doctest::Approx(0.1).epsilon(1e-14));
  CHECK(f[3] == doctest::Approx(0.1).epsilon(1e-14));
  Rng rng(5);
  const BellVector v = random_unit_vector(rng);
  const auto g = bell_fidelities(BellDensityMatrix::pure(v));
  for (int k = 0; k < 4; ++k)
    CHECK(std::abs(g[k] - std::norm(v.c[k])) < 1e-13);
}

TEST_CASE("fidelity is the expectation value of the projector") {
  Rng rng(6);
  for (int t = 0; t < 50; ++t) {
    const BellDensityMatrix rho = random_density(1000 + t, StateKind::general);
    const BellVector v = random_unit_vector(rng);
    cxd quad = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        quad += std::conj(v.c[i]) * rho.entry(i, j) * v.c[j];
    CHECK(std::abs(fidelity(rho, v) - quad.real()) < 1e-13);
    CHECK(std::abs(quad.imag()) < 1e-13);
  }
}

TEST_CASE("maximally entangled family members are unit-norm with concurrence 1") {
  Rng rng(9);
  for (int t = 0; t < 200; ++t) {
    double u[4], norm2 = 0;
    for (double& x : u) {
      x = rng.normal();
      norm2 += x * x;
    }
    const double inv = 1.0 / std::sqrt(norm2);
    const MaxEntangledVector e{u[0] * inv, u[1] * inv, u[2] * inv, u[3] * inv};
    const BellVector v = e.realize();
    CHECK(std::abs(v.norm() - 1.0) < 1e-12);
    CHECK(std::abs(concurrence_pure(v) - 1.0) < 1e-10);
  }
}

TEST_CASE("max entangled fidelity: exact cases") {
  // The singlet itself is in the family (b- = 1 realizes i|psi->).
  const auto singlet = max_entangled_fidelity(BellDensityMatrix::bell_state(0));
  CHECK(singlet.value == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(std::abs(singlet.argmax.b_minus) > 1.0 - 1e-6);

  // Isotropic mixing: every family member sees fidelity 1/4.
  const auto mixed = max_entangled_fidelity(BellDensityMatrix::maximally_mixed());
  CHECK(mixed.value == doctest::Approx(0.25).epsilon(1e-9));

  // Werner state: the singlet is optimal among the family.
  const auto werner = max_entangled_fidelity(BellDensityMatrix::werner(0.7));
  CHECK(werner.value == doctest::Approx(0.7).epsilon(1e-8));
}

TEST_CASE("seesaw family stays at fidelity 1/2; dephased family reaches x") {
  for (const double c : {0.1, 0.3, 0.5}) {
    const auto r = max_entangled_fidelity(seesaw_state(c));
    CHECK(r.value <= 0.5 + 1e-9);
  }
  for (const double x : {0.55, 0.75, 0.9}) {
    const auto r = max_entangled_fidelity(dephased_state(x));
    CHECK(r.value >= x - 1e-9);
  }
}

TEST_CASE("ascent value matches the top eigenvalue of the induced quadratic form") {
  // Reconstruct the 4x4 symmetric form G from fidelity() evaluations alone:
  // G_ii = f(e_i), G_ij = f((e_i + e_j)/sqrt(2)) - (G_ii + G_jj)/2.
  auto family_member = [](int i, int j, double wi, double wj) {
    MaxEntangledVector e{};
    double* slots[4] = {&e.a_minus, &e.a_plus, &e.b_minus, &e.b_plus};
    *slots[i] += wi;
    *slots[j] += wj;
    return e;
  };
  const double s2 = 1.0 / std::sqrt(2.0);
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const BellDensityMatrix rho = random_density(seed, StateKind::general);
    Mat4 g = Mat4::zero();
    for (int i = 0; i < 4; ++i)
      g(i, i) = fidelity(rho, family_member(i, i, 0.5, 0.5).realize());
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) {
        const double f = fidelity(rho, family_member(i, j, s2, s2).realize());
        const double off = f - 0.5 * (g(i, i).real() + g(j, j).real());
        g(i, j) = off;
        g(j, i) = off;
      }
    const auto eig = hermitian_eigendecomposition(g);
    const double top = eig.values[3];
    const auto r = max_entangled_fidelity(rho, 64, 1e-12);
    CHECK(std::abs(r.value - top) < 1e-9);
  }
}
