#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "purikit/bell.hpp"

namespace purikit {

inline constexpr double kDegenerateTol = 1e-12;

// Normalization collapsed: the post-selected branch has vanishing weight.
struct DegenerateNormalization : std::runtime_error {
  double normalization;
  int step;  // -1 for a single map application

  DegenerateNormalization(double n, int s)
      : std::runtime_error("degenerate normalization " + std::to_string(n) +
                           (s >= 0 ? " at step " + std::to_string(s) : std::string{})),
        normalization(n),
        step(s) {}
};

struct MapOutcome {
  XState x;
  BellDensityMatrix state;      // x embedded, off-pattern entries exactly zero
  double normalization;         // N
  double success_probability;   // N / 2
};

// Ambient 8-vector form (r1, r2, r3, r4, Re r14, Im r14, Re r23, Im r23)
// used by iteration and by the fixed-point search.
using ParamVector = std::array<double, 8>;

// N = (r1 + r2)^2 + (r3 + r4)^2; on trace-one states this is >= 1/2.
double map_normalization(const ParamVector& v);

// One application of the purification recurrence in closed form, without
// renormalization hygiene; smooth in v. Throws DegenerateNormalization
// when N <= 1e-12.
ParamVector map_step(const ParamVector& v);

MapOutcome apply_x(const XState& in);
MapOutcome apply_general(const BellDensityMatrix& in);

struct TrajectoryPoint {
  int step;  // 1-based
  XState x;
  double normalization;
  double p_success;
  double p_cumulative;  // product of per-step success probabilities
};

struct Trajectory {
  std::optional<XState> initial;  // absent when the start was general
  std::vector<TrajectoryPoint> points;
  bool stopped_early = false;
};

// Repeated application; a general (non-X) start contributes its first
// application through apply_general, every later step through apply_x.
// Stops early once the max-norm change of the 8-vector drops below
// stop_tolerance (0 disables). DegenerateNormalization carries the step.
Trajectory iterate(const XState& start, int steps, double stop_tolerance = 0.0);
Trajectory iterate(const BellDensityMatrix& start, int steps,
                   double stop_tolerance = 0.0);

}  // namespace purikit
