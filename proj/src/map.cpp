#include "purikit/map.hpp"

#include <cmath>

namespace purikit {

namespace {

struct RawStep {
  double r1, r2, r3, r4;
  cxd z14, z23;
  double n;
};

// Closed form of the post-selected recurrence. X inputs pass exact zeros
// for z12/z34/z13/z24, which reduces every expression to the X special
// case bit for bit.
RawStep map_core(double r1, double r2, double r3, double r4, cxd z12, cxd z34,
                 cxd z13, cxd z24, cxd z14, cxd z23) {
  const double s12 = 2.0 * z12.real();
  const double s34 = 2.0 * z34.real();
  const double n = (r1 + r2) * (r1 + r2) + (r3 + r4) * (r3 + r4) - s12 * s12 -
                   s34 * s34;
  if (n <= kDegenerateTol) throw DegenerateNormalization(n, -1);

  RawStep o;
  // z^2 + conj(z)^2 = 2 (Re z)^2 - 2 (Im z)^2
  o.r1 = (r1 * r1 + r2 * r2 -
          2.0 * (z12.real() * z12.real() - z12.imag() * z12.imag())) / n;
  o.r2 = 2.0 * (r3 * r4 - std::norm(z34)) / n;
  o.r3 = 2.0 * (r1 * r2 - std::norm(z12)) / n;
  o.r4 = (r3 * r3 + r4 * r4 -
          2.0 * (z34.real() * z34.real() - z34.imag() * z34.imag())) / n;
  o.z14 = (z14 * z14 + z23 * z23 - z13 * z13 - z24 * z24) / n;
  o.z23 = 2.0 * (std::conj(z23) * std::conj(z14) -
                 std::conj(z13) * std::conj(z24)) / n;
  o.n = n;
  return o;
}

cxd clip_or_throw(cxd z, double bound) {
  const double mag = std::abs(z);
  if (mag <= bound || mag <= 0) return z;
  if (mag - bound > 1e-12)
    throw ValidationError("map output coherence " + std::to_string(mag) +
                          " exceeds positivity bound " + std::to_string(bound));
  return z * (bound / mag);
}

// Trace renormalization plus coherence clipping; both act at rounding
// scale only, the closed form already preserves the trace identically.
MapOutcome finish(const RawStep& raw) {
  const double s = raw.r1 + raw.r2 + raw.r3 + raw.r4;
  const double r1 = raw.r1 / s, r2 = raw.r2 / s, r3 = raw.r3 / s, r4 = raw.r4 / s;
  cxd z14 = raw.z14 / s, z23 = raw.z23 / s;
  z14 = clip_or_throw(z14, std::sqrt(std::max(r1, 0.0) * std::max(r4, 0.0)));
  z23 = clip_or_throw(z23, std::sqrt(std::max(r2, 0.0) * std::max(r3, 0.0)));
  const XState x = XState::validated(r1, r2, r3, r4, z14, z23);
  return MapOutcome{x, x.embed(), raw.n, raw.n / 2.0};
}

}  // namespace

double map_normalization(const ParamVector& v) {
  return (v[0] + v[1]) * (v[0] + v[1]) + (v[2] + v[3]) * (v[2] + v[3]);
}

ParamVector map_step(const ParamVector& v) {
  const RawStep o = map_core(v[0], v[1], v[2], v[3], cxd{}, cxd{}, cxd{}, cxd{},
                             cxd{v[4], v[5]}, cxd{v[6], v[7]});
  return {o.r1,         o.r2,         o.r3,         o.r4,
          o.z14.real(), o.z14.imag(), o.z23.real(), o.z23.imag()};
}

MapOutcome apply_x(const XState& in) {
  return finish(map_core(in.r1, in.r2, in.r3, in.r4, cxd{}, cxd{}, cxd{}, cxd{},
                         in.r14, in.r23));
}

MapOutcome apply_general(const BellDensityMatrix& in) {
  const Mat4& m = in.matrix();
  return finish(map_core(m(0, 0).real(), m(1, 1).real(), m(2, 2).real(),
                         m(3, 3).real(), m(0, 1), m(2, 3), m(0, 2), m(1, 3),
                         m(0, 3), m(1, 2)));
}

Trajectory iterate(const XState& start, int steps, double stop_tolerance) {
  Trajectory t;
  t.initial = start;
  XState cur = start;
  auto prev = cur.to_vector();
  double p_cum = 1.0;

  for (int k = 1; k <= steps; ++k) {
    const MapOutcome o = [&] {
      try {
        return apply_x(cur);
      } catch (const DegenerateNormalization& d) {
        throw DegenerateNormalization(d.normalization, k);
      }
    }();
    p_cum *= o.success_probability;
    t.points.push_back({k, o.x, o.normalization, o.success_probability, p_cum});

    const auto next = o.x.to_vector();
    double diff = 0;
    for (int i = 0; i < 8; ++i) diff = std::max(diff, std::abs(next[i] - prev[i]));
    cur = o.x;
    prev = next;
    if (stop_tolerance > 0 && diff < stop_tolerance) {
      t.stopped_early = true;
      break;
    }
  }
  return t;
}

Trajectory iterate(const BellDensityMatrix& start, int steps,
                   double stop_tolerance) {
  if (const auto x = XState::from_density(start))
    return iterate(*x, steps, stop_tolerance);

  Trajectory t;
  if (steps <= 0) return t;
  const MapOutcome first = [&] {
    try {
      return apply_general(start);
    } catch (const DegenerateNormalization& d) {
      throw DegenerateNormalization(d.normalization, 1);
    }
  }();
  t.points.push_back({1, first.x, first.normalization, first.success_probability,
                      first.success_probability});
  if (steps == 1) return t;

  const Trajectory rest = [&] {
    try {
      return iterate(first.x, steps - 1, stop_tolerance);
    } catch (const DegenerateNormalization& d) {
      throw DegenerateNormalization(d.normalization, d.step + 1);
    }
  }();
  for (TrajectoryPoint p : rest.points) {
    p.step += 1;
    p.p_cumulative *= first.success_probability;
    t.points.push_back(p);
  }
  t.stopped_early = rest.stopped_early;
  return t;
}

}  // namespace purikit
