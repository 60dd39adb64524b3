#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cmath>
#include <vector>

#include "purikit/eigen.hpp"
#include "purikit/fixed_points.hpp"

using namespace purikit;

namespace {

// Hand-derived derivative of the ambient map, kept independent of the
// finite-difference code on purpose.
std::array<double, 64> analytic_jacobian(const ParamVector& v) {
  const double r1 = v[0], r2 = v[1], r3 = v[2], r4 = v[3];
  const double a = v[4], b = v[5], c = v[6], d = v[7];
  const double n = (r1 + r2) * (r1 + r2) + (r3 + r4) * (r3 + r4);

  const std::array<double, 8> num = {
      r1 * r1 + r2 * r2, 2 * r3 * r4,       2 * r1 * r2, r3 * r3 + r4 * r4,
      a * a - b * b + c * c - d * d,        2 * (a * b + c * d),
      2 * (a * c - b * d),                  -2 * (b * c + a * d)};

  // dN/dv_j
  const std::array<double, 8> dn = {2 * (r1 + r2), 2 * (r1 + r2),
                                    2 * (r3 + r4), 2 * (r3 + r4),
                                    0, 0, 0, 0};

  // d num_i / d v_j
  std::array<std::array<double, 8>, 8> dnum{};
  dnum[0] = {2 * r1, 2 * r2, 0, 0, 0, 0, 0, 0};
  dnum[1] = {0, 0, 2 * r4, 2 * r3, 0, 0, 0, 0};
  dnum[2] = {2 * r2, 2 * r1, 0, 0, 0, 0, 0, 0};
  dnum[3] = {0, 0, 2 * r3, 2 * r4, 0, 0, 0, 0};
  dnum[4] = {0, 0, 0, 0, 2 * a, -2 * b, 2 * c, -2 * d};
  dnum[5] = {0, 0, 0, 0, 2 * b, 2 * a, 2 * d, 2 * c};
  dnum[6] = {0, 0, 0, 0, 2 * c, -2 * d, 2 * a, -2 * b};
  dnum[7] = {0, 0, 0, 0, -2 * d, -2 * c, -2 * b, -2 * a};

  std::array<double, 64> j{};
  for (int i = 0; i < 8; ++i)
    for (int k = 0; k < 8; ++k)
      j[i * 8 + k] = (dnum[i][k] * n - num[i] * dn[k]) / (n * n);
  return j;
}

double spectral_radius(const std::array<double, 64>& j) {
  double r = 0;
  for (const auto& z :
       dense_eigenvalues_real(std::vector<double>(j.begin(), j.end()), 8))
    r = std::max(r, std::abs(z));
  return r;
}

}  // namespace

TEST_CASE("map_f equals the x map") {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    const XState x = random_x_state(seed);
    const ParamVector f = map_f(x.to_vector());
    const auto y = apply_x(x).x.to_vector();
    for (int i = 0; i < 8; ++i) CHECK(std::abs(f[i] - y[i]) < 1e-13);
  }
}

TEST_CASE("finite-difference jacobian matches the analytic derivative") {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const ParamVector v = random_x_state(seed).to_vector();
    const Jacobian8 j = jacobian(v);
    CHECK(j.consistency_defect < 1e-6);
    const auto want = analytic_jacobian(v);
    for (int k = 0; k < 64; ++k) CHECK(std::abs(j.m[k] - want[k]) < 1e-5);
  }
}

TEST_CASE("jacobian spectral radius at hand-picked rest points") {
  // the fully mixed state is superstable: derivative vanishes
  const Jacobian8 mixed = jacobian({0.25, 0.25, 0.25, 0.25, 0, 0, 0, 0});
  CHECK(spectral_radius(mixed.m) < 1e-6);

  // the half/half diagonal point has radius two
  const Jacobian8 saddle = jacobian({0.5, 0, 0, 0.5, 0, 0, 0, 0});
  CHECK(spectral_radius(saddle.m) == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("search recovers the full catalog of valid fixed points") {
  const auto records = find_fixed_points({});

  struct Known {
    ParamVector v;
    Stability verdict;
  };
  const std::vector<Known> table = {
      {{1, 0, 0, 0, 0, 0, 0, 0}, Stability::stable},
      {{0, 0, 0, 1, 0, 0, 0, 0}, Stability::stable},
      {{0.1409, 0.2344, 0.1245, 0.5, 0, 0, 0, 0}, Stability::unstable},
      {{0.5, 0.1245, 0.2344, 0.1409, 0, 0, 0, 0}, Stability::unstable},
      {{0.25, 0.25, 0.25, 0.25, 0, 0, 0, 0}, Stability::stable},
      {{0.25, 0.25, 0.25, 0.25, 0.25, 0, -0.25, 0}, Stability::unstable},
      {{0.25, 0.25, 0.25, 0.25, 0.25, 0, 0.25, 0}, Stability::unstable},
      {{0.5, 0, 0, 0.5, 0, 0, 0, 0}, Stability::unstable},
      {{0.5, 0, 0, 0.5, 0.5, 0, 0, 0}, Stability::unstable},
  };

  for (const auto& known : table) {
    const FixedPointRecord* best = nullptr;
    double best_d = 1e9;
    for (const auto& r : records) {
      double d = 0;
      for (int i = 0; i < 8; ++i)
        d = std::max(d, std::abs(r.v[i] - known.v[i]));
      if (d < best_d) {
        best_d = d;
        best = &r;
      }
    }
    REQUIRE(best != nullptr);
    CHECK(best_d < 5e-4);
    CHECK(best->residual <= 1e-9);
    CHECK(best->verdict == known.verdict);
  }

  int stable = 0;
  for (const auto& r : records)
    if (r.verdict == Stability::stable) ++stable;
  CHECK(stable == 3);

  // six diagonal fixed points, no more
  int diagonal = 0;
  for (const auto& r : records)
    if (std::hypot(r.v[4], r.v[5]) < 1e-8 && std::hypot(r.v[6], r.v[7]) < 1e-8)
      ++diagonal;
  CHECK(diagonal == 6);

  for (const auto& r : records) {
    CHECK(r.valid);
    CHECK(is_valid_x_vector(r.v));
    // product of eigenvalue magnitudes equals |det J|
    const Jacobian8 j = jacobian(r.v);
    double prod = 1;
    for (const double m : r.eigen_magnitudes) prod *= m;
    const double det = std::abs(
        dense_determinant_real(std::vector<double>(j.m.begin(), j.m.end()), 8));
    CHECK(std::abs(prod - det) < 1e-8 * (1.0 + det));
  }
}

TEST_CASE("period-two search finds the swap cycle") {
  FixedPointSearchConfig cfg;
  cfg.period = 2;
  const auto records = find_fixed_points(cfg);
  REQUIRE(!records.empty());

  const ParamVector want = {0.37548081180081290, 0, 0.35901415996940260,
                            0.26550502822978460, 0, 0, 0, 0};
  bool found = false;
  for (const auto& r : records) {
    CHECK(r.period == 2);
    CHECK(r.residual <= 1e-9);
    CHECK(r.valid);

    // genuinely period two: the one-step image is a different point
    const ParamVector mid = map_f(r.v);
    double hop = 0, ret = 0;
    const ParamVector back = map_f(mid);
    for (int i = 0; i < 8; ++i) {
      hop = std::max(hop, std::abs(mid[i] - r.v[i]));
      ret = std::max(ret, std::abs(back[i] - r.v[i]));
    }
    CHECK(hop > 1e-3);
    CHECK(ret <= 1e-9);
    CHECK(r.verdict == Stability::unstable);

    double d = 0;
    for (int i = 0; i < 8; ++i) d = std::max(d, std::abs(r.v[i] - want[i]));
    const ParamVector partner = map_f(want);
    double dp = 0;
    for (int i = 0; i < 8; ++i) dp = std::max(dp, std::abs(r.v[i] - partner[i]));
    if (d < 1e-6 || dp < 1e-6) found = true;
  }
  CHECK(found);
}

TEST_CASE("search results do not depend on threading") {
  FixedPointSearchConfig serial;
  serial.parallel = false;
  serial.grid_density = 6;
  FixedPointSearchConfig parallel = serial;
  parallel.parallel = true;

  const auto a = find_fixed_points(serial);
  const auto b = find_fixed_points(parallel);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (int k = 0; k < 8; ++k) CHECK(a[i].v[k] == b[i].v[k]);
    CHECK(a[i].verdict == b[i].verdict);
  }
}

TEST_CASE("invalid rest points are reported when asked for") {
  FixedPointSearchConfig cfg;
  cfg.valid_only = false;
  cfg.grid_density = 8;
  const auto records = find_fixed_points(cfg);
  int invalid = 0;
  for (const auto& r : records)
    if (!r.valid) ++invalid;
  // the map has genuine rest points outside the physical set
  CHECK(invalid > 0);
}
