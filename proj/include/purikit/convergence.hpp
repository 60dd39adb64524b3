#pragma once

#include "purikit/map.hpp"

namespace purikit {

inline constexpr double kBoundaryTol = 1e-12;

enum class Verdict { psi_minus, psi_plus, none, boundary };
const char* to_string(Verdict v);

struct ConditionMargins {
  double lhs;
  double rhs;
  double margin() const { return lhs - rhs; }
};

struct Classification {
  Verdict verdict;
  ConditionMargins psi_minus;  // (2 r1 - 1)(1 - 2 r2) against its threshold
  ConditionMargins psi_plus;   // (2 r4 - 1)(1 - 2 r3) against its threshold
};

// F(r1, r2) = (2 r1 - 1)(1 - 2 r2); its sign is preserved by the map and
// it grows strictly while positive (unless r3 = r4 = 0 already).
double quadratic_form_F(double r1, double r2);

// X-state criterion: thresholds are zero. Verdicts with both margins
// nonpositive and one inside the 1e-12 band report boundary.
Classification condition_x(const XState& s);

// General-state criterion: the |Psi-> threshold is
// -(2 Im r12)^2 - (2 Re r34)^2 and the |Psi+> one mirrors it. For valid
// states at most one margin can be positive.
Classification condition_general(const BellDensityMatrix& rho);

enum class IterVerdict { psi_minus, psi_plus, mixed, non_convergent };
const char* to_string(IterVerdict v);

struct IterationSummary {
  IterVerdict verdict;
  int steps;  // steps taken when the verdict fired (0 = already there)
  XState final_state;
  bool fixed_point_detected = false;   // only set on non_convergent
  bool period2_detected = false;       // only set on non_convergent
};

// Runs the recurrence and reports which limit the trajectory reached:
// r1 within tol of 1, r4 within tol of 1, or the fully mixed state.
IterationSummary classify_by_iteration(const XState& s, int max_steps = 200,
                                       double tol = 1e-6);

}  // namespace purikit
