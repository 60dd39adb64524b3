#include "purikit/sweeps.hpp"

#include <cmath>

#include "purikit/oracle.hpp"

namespace purikit {

const char* to_string(Family f) {
  switch (f) {
    case Family::diagonal: return "diagonal";
    case Family::dephasing1: return "dephasing1";
    case Family::dephasing2: return "dephasing2";
  }
  return "?";
}

BellDensityMatrix build_family_state(Family f, double r1, double r2, double r3,
                                     const FamilyEtas& etas) {
  const double r4 = 1.0 - r1 - r2 - r3;
  const double b12 = std::sqrt(std::max(r1, 0.0) * std::max(r2, 0.0));
  const double b34 = std::sqrt(std::max(r3, 0.0) * std::max(r4, 0.0));
  cxd z12{}, z34{};
  switch (f) {
    case Family::diagonal:
      break;
    case Family::dephasing1:
      if (std::abs(etas.a) > 1.0 || std::abs(etas.b) > 1.0)
        throw ValidationError("dephasing1 etas outside [-1,1]");
      z12 = etas.a * b12;
      z34 = etas.b * b34;
      break;
    case Family::dephasing2:
      if (std::abs(etas.c) > 1.0 || std::abs(etas.d) > 1.0)
        throw ValidationError("dephasing2 etas outside [-1,1]");
      z12 = cxd{0.0, etas.c * b12};
      z34 = etas.d * b34;
      break;
  }
  Mat4 m = Mat4::zero();
  m(0, 0) = r1;
  m(1, 1) = r2;
  m(2, 2) = r3;
  m(3, 3) = r4;
  m(0, 1) = z12;
  m(1, 0) = std::conj(z12);
  m(2, 3) = z34;
  m(3, 2) = std::conj(z34);
  return BellDensityMatrix::from_matrix(m);
}

double RegionScan::none_fraction() const {
  return rows.empty() ? 0.0 : double(count_none) / double(rows.size());
}

namespace {

struct Cell {
  double r1, r2, r3;
};

std::vector<Cell> simplex_cells(int grid) {
  std::vector<Cell> cells;
  for (int i = 0; i < grid; ++i)
    for (int j = 0; j < grid; ++j)
      for (int k = 0; k < grid; ++k) {
        const double r1 = (i + 0.5) / grid;
        const double r2 = (j + 0.5) / grid;
        const double r3 = (k + 0.5) / grid;
        if (r1 + r2 + r3 < 1.0) cells.push_back({r1, r2, r3});
      }
  return cells;
}

struct CellResult {
  Verdict label = Verdict::none;
  bool rejected = false;
};

CellResult region_body(Family f, const FamilyEtas& etas, const Cell& c) {
  try {
    const BellDensityMatrix rho = build_family_state(f, c.r1, c.r2, c.r3, etas);
    const ValidationReport rep = validate_density(rho.matrix());
    if (!rep.ok()) return {Verdict::none, true};
    return {condition_general(rho).verdict, false};
  } catch (const ValidationError&) {
    return {Verdict::none, true};
  }
}

RegionScan fold_region(int grid, const std::vector<Cell>& cells,
                       const std::vector<CellResult>& results) {
  RegionScan scan;
  scan.grid = grid;
  for (std::size_t m = 0; m < cells.size(); ++m) {
    if (results[m].rejected) {
      ++scan.rejected;
      continue;
    }
    scan.rows.push_back({cells[m].r1, cells[m].r2, cells[m].r3, results[m].label});
    switch (results[m].label) {
      case Verdict::psi_minus: ++scan.count_psi_minus; break;
      case Verdict::psi_plus: ++scan.count_psi_plus; break;
      case Verdict::none: ++scan.count_none; break;
      case Verdict::boundary: ++scan.count_boundary; break;
    }
  }
  return scan;
}

}  // namespace

RegionScan region_scan_serial(Family f, const FamilyEtas& etas, int grid) {
  const auto cells = simplex_cells(grid);
  std::vector<CellResult> results(cells.size());
  for (std::size_t m = 0; m < cells.size(); ++m)
    results[m] = region_body(f, etas, cells[m]);
  return fold_region(grid, cells, results);
}

RegionScan region_scan(Family f, const FamilyEtas& etas, int grid, bool parallel) {
  if (!parallel) return region_scan_serial(f, etas, grid);
  const auto cells = simplex_cells(grid);
  std::vector<CellResult> results(cells.size());
  const int n = static_cast<int>(cells.size());
#pragma omp parallel for schedule(static)
  for (int m = 0; m < n; ++m) results[m] = region_body(f, etas, cells[m]);
  return fold_region(grid, cells, results);
}

// ---------------------------------------------------------------------------
// Margin-filtered random sweeps. Parallel drivers work through fixed-size
// chunks of candidate seeds and fold results in candidate order, so the
// aggregate equals the serial reference exactly.

namespace {

constexpr int kChunk = 2048;

IterVerdict expected_iteration(Verdict v) {
  switch (v) {
    case Verdict::psi_minus: return IterVerdict::psi_minus;
    case Verdict::psi_plus: return IterVerdict::psi_plus;
    default: return IterVerdict::mixed;
  }
}

struct AgreeRec {
  bool qualifying = false;
  bool mismatch = false;
  bool mono_violation = false;
  int steps = 0;
};

AgreeRec agree_body(std::uint64_t seed, double margin_min, int max_steps,
                    double tol) {
  const XState x = random_x_state(seed);
  const Classification cls = condition_x(x);
  AgreeRec rec;
  if (std::abs(cls.psi_minus.margin()) < margin_min ||
      std::abs(cls.psi_plus.margin()) < margin_min)
    return rec;
  rec.qualifying = true;

  const IterationSummary summary = classify_by_iteration(x, max_steps, tol);
  rec.steps = summary.steps;
  rec.mismatch = summary.verdict != expected_iteration(cls.verdict);

  if (cls.verdict == Verdict::psi_minus && summary.steps > 0) {
    const Trajectory t = iterate(x, summary.steps);
    double prev = quadratic_form_F(x.r1, x.r2);
    for (const auto& p : t.points) {
      const double cur = quadratic_form_F(p.x.r1, p.x.r2);
      if (cur < prev - 1e-12) rec.mono_violation = true;
      prev = cur;
    }
  }
  return rec;
}

void fold_agree(AgreementSweep& s, const AgreeRec& r) {
  ++s.candidates;
  if (!r.qualifying) return;
  ++s.qualifying;
  if (r.mismatch) ++s.mismatches;
  if (r.mono_violation) ++s.monotonicity_violations;
  s.max_steps_used = std::max(s.max_steps_used, r.steps);
}

struct GeneralRec {
  bool qualifying = false;
  bool r1_failure = false;
  bool convergence_failure = false;
  int steps = 0;
};

GeneralRec general_body(std::uint64_t seed, double margin_min, int max_steps,
                        double tol) {
  const BellDensityMatrix rho = random_density(seed, StateKind::general);
  const Classification cls = condition_general(rho);
  GeneralRec rec;
  if (cls.verdict != Verdict::psi_minus || cls.psi_minus.margin() < margin_min)
    return rec;
  rec.qualifying = true;

  const MapOutcome first = apply_general(rho);
  if (!(first.x.r1 > 0.5)) rec.r1_failure = true;

  const IterationSummary summary = classify_by_iteration(first.x, max_steps, tol);
  rec.steps = summary.steps + 1;
  if (summary.verdict != IterVerdict::psi_minus) rec.convergence_failure = true;
  return rec;
}

void fold_general(GeneralConvergenceSweep& s, const GeneralRec& r) {
  ++s.candidates;
  if (!r.qualifying) return;
  ++s.qualifying;
  if (r.r1_failure) ++s.r1_failures;
  if (r.convergence_failure) ++s.convergence_failures;
  s.max_steps_used = std::max(s.max_steps_used, r.steps);
}

}  // namespace

AgreementSweep prediction_agreement_sweep_serial(int n, std::uint64_t seed,
                                                 double margin_min,
                                                 int max_steps, double tol) {
  AgreementSweep s;
  s.requested = n;
  const std::uint64_t limit = std::uint64_t(n) * 1000 + 10000;
  for (std::uint64_t cand = 0; s.qualifying < n && cand < limit; ++cand)
    fold_agree(s, agree_body(seed + cand, margin_min, max_steps, tol));
  return s;
}

AgreementSweep prediction_agreement_sweep(int n, std::uint64_t seed,
                                          double margin_min, int max_steps,
                                          double tol, bool parallel) {
  if (!parallel)
    return prediction_agreement_sweep_serial(n, seed, margin_min, max_steps, tol);
  AgreementSweep s;
  s.requested = n;
  const std::uint64_t limit = std::uint64_t(n) * 1000 + 10000;
  std::vector<AgreeRec> recs(kChunk);
  for (std::uint64_t base = 0; s.qualifying < n && base < limit; base += kChunk) {
#pragma omp parallel for schedule(dynamic, 32)
    for (int t = 0; t < kChunk; ++t)
      recs[t] = agree_body(seed + base + t, margin_min, max_steps, tol);
    for (int t = 0; t < kChunk && s.qualifying < n; ++t) fold_agree(s, recs[t]);
  }
  return s;
}

GeneralConvergenceSweep general_convergence_sweep_serial(int n,
                                                         std::uint64_t seed,
                                                         double margin_min,
                                                         int max_steps,
                                                         double tol) {
  GeneralConvergenceSweep s;
  s.requested = n;
  const std::uint64_t limit = std::uint64_t(n) * 1000 + 10000;
  for (std::uint64_t cand = 0; s.qualifying < n && cand < limit; ++cand)
    fold_general(s, general_body(seed + cand, margin_min, max_steps, tol));
  return s;
}

GeneralConvergenceSweep general_convergence_sweep(int n, std::uint64_t seed,
                                                  double margin_min,
                                                  int max_steps, double tol,
                                                  bool parallel) {
  if (!parallel)
    return general_convergence_sweep_serial(n, seed, margin_min, max_steps, tol);
  GeneralConvergenceSweep s;
  s.requested = n;
  const std::uint64_t limit = std::uint64_t(n) * 1000 + 10000;
  std::vector<GeneralRec> recs(kChunk);
  for (std::uint64_t base = 0; s.qualifying < n && base < limit; base += kChunk) {
#pragma omp parallel for schedule(dynamic, 32)
    for (int t = 0; t < kChunk; ++t)
      recs[t] = general_body(seed + base + t, margin_min, max_steps, tol);
    for (int t = 0; t < kChunk && s.qualifying < n; ++t) fold_general(s, recs[t]);
  }
  return s;
}

// ---------------------------------------------------------------------------
// Unfiltered sweeps: one record per trial, folded in trial order.

namespace {

struct DecayRec {
  double increase = 0;
  bool equality_hit = false;
};

DecayRec decay_body(std::uint64_t seed) {
  const XState x = random_x_state(seed);
  const XState out = apply_x(x).x;
  const double before = std::abs(x.r14) + std::abs(x.r23);
  const double after = std::abs(out.r14) + std::abs(out.r23);
  return {after - before,
          std::abs(after - before) <= 1e-12 && before > 1e-9};
}

void fold_decay(DecaySweep& s, const DecayRec& r) {
  ++s.n;
  if (r.increase > 1e-14) ++s.violations;
  if (r.equality_hit) ++s.equality_hits;
  s.max_increase = std::max(s.max_increase, r.increase);
}

struct OracleRec {
  double state_error = 0;
  double prob_error = 0;
};

OracleRec oracle_body(std::uint64_t seed) {
  const BellDensityMatrix rho = random_density(seed, StateKind::general);
  const MapOutcome closed = apply_general(rho);
  const MapOutcome simulated = run_protocol(rho);
  return {Mat4::distance(closed.state.matrix(), simulated.state.matrix()),
          std::abs(closed.success_probability - simulated.success_probability)};
}

void fold_oracle(OracleCheck& s, const OracleRec& r) {
  ++s.trials;
  if (r.state_error <= s.tol && r.prob_error <= s.tol) ++s.agreements;
  s.max_state_error = std::max(s.max_state_error, r.state_error);
  s.max_prob_error = std::max(s.max_prob_error, r.prob_error);
}

struct ValidityRec {
  bool validation_failure = false;
  bool pattern_failure = false;
  double trace_defect = 0;
  double min_eigenvalue = 1;
};

ValidityRec validity_body(std::uint64_t seed) {
  const BellDensityMatrix rho = random_density(seed, StateKind::general);
  const MapOutcome out = apply_general(rho);
  const ValidationReport rep = validate_density(out.state.matrix());
  return {!rep.ok(), !XState::from_density(out.state).has_value(),
          rep.trace_defect, rep.min_eigenvalue};
}

void fold_validity(MapValiditySweep& s, const ValidityRec& r) {
  ++s.n;
  if (r.validation_failure) ++s.validation_failures;
  if (r.pattern_failure) ++s.pattern_failures;
  s.worst_trace_defect = std::max(s.worst_trace_defect, r.trace_defect);
  s.worst_min_eigenvalue = std::min(s.worst_min_eigenvalue, r.min_eigenvalue);
}

template <class Rec, class Body, class Agg, class Fold>
void run_trials(int n, std::uint64_t seed, bool parallel, Body body, Agg& agg,
                Fold fold) {
  std::vector<Rec> recs(n);
  if (parallel) {
#pragma omp parallel for schedule(dynamic, 32)
    for (int t = 0; t < n; ++t) recs[t] = body(seed + t);
  } else {
    for (int t = 0; t < n; ++t) recs[t] = body(seed + t);
  }
  for (int t = 0; t < n; ++t) fold(agg, recs[t]);
}

}  // namespace

DecaySweep coherence_decay_sweep_serial(int n, std::uint64_t seed) {
  return coherence_decay_sweep(n, seed, false);
}

DecaySweep coherence_decay_sweep(int n, std::uint64_t seed, bool parallel) {
  DecaySweep s;
  run_trials<DecayRec>(n, seed, parallel, decay_body, s, fold_decay);
  return s;
}

OracleCheck oracle_check_serial(int trials, std::uint64_t seed, double tol) {
  return oracle_check(trials, seed, tol, false);
}

OracleCheck oracle_check(int trials, std::uint64_t seed, double tol,
                         bool parallel) {
  OracleCheck s;
  s.tol = tol;
  run_trials<OracleRec>(trials, seed, parallel, oracle_body, s, fold_oracle);
  return s;
}

MapValiditySweep map_validity_sweep_serial(int n, std::uint64_t seed) {
  return map_validity_sweep(n, seed, false);
}

MapValiditySweep map_validity_sweep(int n, std::uint64_t seed, bool parallel) {
  MapValiditySweep s;
  run_trials<ValidityRec>(n, seed, parallel, validity_body, s, fold_validity);
  return s;
}

}  // namespace purikit
