#pragma once

#include <string>
#include <vector>

#include "purikit/map.hpp"

namespace purikit {

// The recurrence as a self-map of the ambient 8-vector space; identical to
// map_step, named for its role here.
ParamVector map_f(const ParamVector& v);

struct Jacobian8 {
  std::array<double, 64> m;   // row-major d f_i / d v_j
  double consistency_defect;  // max entry gap between the h and h/2 estimates
};

// Central differences at h and h/2, Richardson-extrapolated.
Jacobian8 jacobian(const ParamVector& v, double h = 1e-6);

enum class Stability { stable, unstable, marginal };
const char* to_string(Stability s);

struct FixedPointRecord {
  ParamVector v;
  int period;       // 1 or 2; period-2 records store one point per orbit
  double residual;  // max-norm of f^period(v) - v
  std::array<double, 8> eigen_magnitudes;  // of the period-map Jacobian, descending
  Stability verdict;
  bool valid;  // lies in the physical X-state set
};

struct FixedPointSearchConfig {
  int grid_density = 12;   // diagonal simplex granularity 1/density
  int period = 1;
  int max_newton_iters = 80;
  double residual_tol = 1e-9;
  double dedup_tol = 1e-6;
  bool parallel = true;
  bool valid_only = true;  // drop records outside the physical set
};

// Newton search seeded on the diagonal simplex grid crossed with real
// coherence seeds {0, +-0.25, +-0.5}. Deterministic: results are deduped
// in seed order and sorted, independent of thread count.
std::vector<FixedPointRecord> find_fixed_points(
    const FixedPointSearchConfig& cfg = {});

bool is_valid_x_vector(const ParamVector& v, double tol = 1e-8);

std::string format_fixed_point_table(const std::vector<FixedPointRecord>& recs);

}  // namespace purikit
