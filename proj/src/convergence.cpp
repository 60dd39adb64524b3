#include "purikit/convergence.hpp"

#include <cmath>

namespace purikit {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::psi_minus: return "psi_minus";
    case Verdict::psi_plus: return "psi_plus";
    case Verdict::none: return "none";
    case Verdict::boundary: return "boundary";
  }
  return "?";
}

const char* to_string(IterVerdict v) {
  switch (v) {
    case IterVerdict::psi_minus: return "psi_minus";
    case IterVerdict::psi_plus: return "psi_plus";
    case IterVerdict::mixed: return "mixed";
    case IterVerdict::non_convergent: return "non_convergent";
  }
  return "?";
}

double quadratic_form_F(double r1, double r2) {
  return (2.0 * r1 - 1.0) * (1.0 - 2.0 * r2);
}

namespace {

Classification classify_margins(ConditionMargins minus, ConditionMargins plus) {
  Verdict v;
  if (minus.margin() > kBoundaryTol)
    v = Verdict::psi_minus;
  else if (plus.margin() > kBoundaryTol)
    v = Verdict::psi_plus;
  else if (std::abs(minus.margin()) <= kBoundaryTol ||
           std::abs(plus.margin()) <= kBoundaryTol)
    v = Verdict::boundary;
  else
    v = Verdict::none;
  return Classification{v, minus, plus};
}

}  // namespace

Classification condition_x(const XState& s) {
  return classify_margins({quadratic_form_F(s.r1, s.r2), 0.0},
                          {quadratic_form_F(s.r4, s.r3), 0.0});
}

Classification condition_general(const BellDensityMatrix& rho) {
  const Mat4& m = rho.matrix();
  const double r1 = m(0, 0).real(), r2 = m(1, 1).real();
  const double r3 = m(2, 2).real(), r4 = m(3, 3).real();
  const double im12 = 2.0 * m(0, 1).imag();
  const double re12 = 2.0 * m(0, 1).real();
  const double im34 = 2.0 * m(2, 3).imag();
  const double re34 = 2.0 * m(2, 3).real();
  return classify_margins(
      {quadratic_form_F(r1, r2), -(im12 * im12) - (re34 * re34)},
      {quadratic_form_F(r4, r3), -(im34 * im34) - (re12 * re12)});
}

IterationSummary classify_by_iteration(const XState& s, int max_steps,
                                       double tol) {
  const ParamVector mixed = {0.25, 0.25, 0.25, 0.25, 0, 0, 0, 0};
  XState cur = s;

  for (int k = 0; k <= max_steps; ++k) {
    if (cur.r1 > 1.0 - tol)
      return IterationSummary{IterVerdict::psi_minus, k, cur};
    if (cur.r4 > 1.0 - tol)
      return IterationSummary{IterVerdict::psi_plus, k, cur};
    const auto v = cur.to_vector();
    double dm = 0;
    for (int i = 0; i < 8; ++i) dm = std::max(dm, std::abs(v[i] - mixed[i]));
    if (dm < tol) return IterationSummary{IterVerdict::mixed, k, cur};
    if (k < max_steps) cur = apply_x(cur).x;
  }

  IterationSummary out{IterVerdict::non_convergent, max_steps, cur};
  const auto v = cur.to_vector();
  const auto v1 = map_step(v);
  double d1 = 0;
  for (int i = 0; i < 8; ++i) d1 = std::max(d1, std::abs(v1[i] - v[i]));
  if (d1 < tol) {
    out.fixed_point_detected = true;
  } else {
    const auto v2 = map_step(v1);
    double d2 = 0;
    for (int i = 0; i < 8; ++i) d2 = std::max(d2, std::abs(v2[i] - v[i]));
    if (d2 < tol) out.period2_detected = true;
  }
  return out;
}

}  // namespace purikit
