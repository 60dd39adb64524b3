#pragma once

#include <cstdint>
#include <vector>

#include "purikit/convergence.hpp"

namespace purikit {

// Every sweep here exists in two drivers: a plain-loop serial reference and
// an OpenMP kernel over independently seeded trials. Both call the same
// per-trial body and aggregate in trial order, so their results are
// identical and independent of thread count.

enum class Family { diagonal, dephasing1, dephasing2 };
const char* to_string(Family f);

struct FamilyEtas {
  double a = 0, b = 0, c = 0, d = 0;
};

// Grid families over the probability simplex (r4 = 1 - r1 - r2 - r3). The
// coherences sit outside the X pattern, in the entries that feed the
// general-map condition:
//   diagonal:    no coherences
//   dephasing1:  r12 = eta_a sqrt(r1 r2),   r34 = eta_b sqrt(r3 r4)
//   dephasing2:  r12 = i eta_c sqrt(r1 r2), r34 = eta_d sqrt(r3 r4)
BellDensityMatrix build_family_state(Family f, double r1, double r2, double r3,
                                     const FamilyEtas& etas);

struct RegionRow {
  double r1, r2, r3;
  Verdict label;
};

struct RegionScan {
  int grid = 0;
  std::vector<RegionRow> rows;  // cell centers (k + 1/2)/grid, simplex only
  int count_psi_minus = 0, count_psi_plus = 0, count_none = 0, count_boundary = 0;
  int rejected = 0;  // grid points whose constructed state failed validation
  double none_fraction() const;
};

RegionScan region_scan(Family f, const FamilyEtas& etas, int grid, bool parallel);
RegionScan region_scan_serial(Family f, const FamilyEtas& etas, int grid);

struct AgreementSweep {
  int requested = 0;
  int candidates = 0;   // sampled states inspected
  int qualifying = 0;   // margins beyond the filter
  int mismatches = 0;   // closed-form verdict vs iteration verdict
  int max_steps_used = 0;
  int monotonicity_violations = 0;  // F failed to grow along a psi_minus run
};

// Random X states, both margins filtered away from the boundary, each
// classified by condition and by iteration.
AgreementSweep prediction_agreement_sweep(int n, std::uint64_t seed,
                                          double margin_min, int max_steps,
                                          double tol, bool parallel);
AgreementSweep prediction_agreement_sweep_serial(int n, std::uint64_t seed,
                                                 double margin_min,
                                                 int max_steps, double tol);

struct DecaySweep {
  int n = 0;
  int violations = 0;     // |r14'| + |r23'| grew by more than 1e-14
  int equality_hits = 0;  // sum preserved within 1e-12 while above 1e-9
  double max_increase = 0;
};

DecaySweep coherence_decay_sweep(int n, std::uint64_t seed, bool parallel);
DecaySweep coherence_decay_sweep_serial(int n, std::uint64_t seed);

struct GeneralConvergenceSweep {
  int requested = 0;
  int candidates = 0;
  int qualifying = 0;        // general states passing the margin filter
  int r1_failures = 0;       // first application left r1' <= 1/2
  int convergence_failures = 0;
  int max_steps_used = 0;
};

GeneralConvergenceSweep general_convergence_sweep(int n, std::uint64_t seed,
                                                  double margin_min,
                                                  int max_steps, double tol,
                                                  bool parallel);
GeneralConvergenceSweep general_convergence_sweep_serial(int n,
                                                         std::uint64_t seed,
                                                         double margin_min,
                                                         int max_steps,
                                                         double tol);

struct OracleCheck {
  int trials = 0;
  int agreements = 0;
  double max_state_error = 0;
  double max_prob_error = 0;
  double tol = 0;
};

// Full 16-dimensional protocol simulation against the closed-form map on
// random general states.
OracleCheck oracle_check(int trials, std::uint64_t seed, double tol,
                         bool parallel);
OracleCheck oracle_check_serial(int trials, std::uint64_t seed, double tol);

struct MapValiditySweep {
  int n = 0;
  int validation_failures = 0;
  int pattern_failures = 0;
  double worst_trace_defect = 0;
  double worst_min_eigenvalue = 1;
};

// apply_general on random general states; outputs re-validated.
MapValiditySweep map_validity_sweep(int n, std::uint64_t seed, bool parallel);
MapValiditySweep map_validity_sweep_serial(int n, std::uint64_t seed);

}  // namespace purikit
