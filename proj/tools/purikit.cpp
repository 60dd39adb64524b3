#include "CLI11.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>

#include "purikit/io.hpp"
#include "purikit/oracle.hpp"

using namespace purikit;

namespace {

// --seed wins, then PURIKIT_SEED, then 1.
std::uint64_t resolve_seed(bool seed_given, std::uint64_t seed_value) {
  if (seed_given) return seed_value;
  if (const char* env = std::getenv("PURIKIT_SEED")) {
    char* end = nullptr;
    errno = 0;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (errno != 0 || end == env || *end != '\0')
      throw ValidationError(std::string("PURIKIT_SEED is not a valid seed: ") +
                            env);
    return v;
  }
  return 1;
}

void emit_json(const json& payload, const std::string& out_path,
               const std::string& note) {
  if (out_path.empty()) {
    std::cout << payload.dump(2) << "\n";
  } else {
    write_text_file(out_path, payload.dump(2) + "\n");
    std::cout << note << "\n";
  }
}

json manifest_for(const std::string& command, std::uint64_t seed, json config) {
  return manifest_to_json(make_manifest(command, seed, std::move(config)));
}

// Example state 1: x |u><u| + (1-x) |phi+><phi+|, |u> = (|psi-> + i|phi->)/sqrt(2).
BellDensityMatrix dephased_example(double x) {
  Mat4 m = Mat4::zero();
  m(0, 0) = x / 2.0;
  m(1, 1) = x / 2.0;
  m(0, 1) = cxd{0.0, -x / 2.0};
  m(1, 0) = cxd{0.0, x / 2.0};
  m(2, 2) = 1.0 - x;
  return BellDensityMatrix::from_matrix(m);
}

// Example state 2: singlet weight c plus an equal mixture of |phi+>, |psi+>
// carrying their mutual coherence.
BellDensityMatrix seesaw_example(double c) {
  Mat4 m = Mat4::zero();
  m(0, 0) = c;
  m(2, 2) = (1.0 - c) / 2.0;
  m(3, 3) = (1.0 - c) / 2.0;
  m(2, 3) = (1.0 - c) / 2.0;
  m(3, 2) = (1.0 - c) / 2.0;
  return BellDensityMatrix::from_matrix(m);
}

int cmd_iterate(const std::string& state_path, int steps, double tol,
                std::uint64_t seed, const std::string& out) {
  const BellDensityMatrix rho = load_state_file(state_path);
  const Trajectory t = iterate(rho, steps, tol);
  json payload = trajectory_to_json(t);
  payload["manifest"] = manifest_for(
      "iterate", seed,
      json{{"state", state_path}, {"steps", steps}, {"tol", tol}});
  emit_json(payload, out,
            "wrote trajectory (" + std::to_string(t.points.size()) +
                " steps) to " + out);
  return 0;
}

int cmd_classify(const std::string& state_path, std::uint64_t seed,
                 const std::string& out) {
  const BellDensityMatrix rho = load_state_file(state_path);
  json payload = classification_to_json(condition_general(rho));
  if (const auto x = XState::from_density(rho)) {
    payload["x_condition"] = classification_to_json(condition_x(*x));
    payload["iteration"] = iteration_summary_to_json(classify_by_iteration(*x));
  }
  payload["manifest"] =
      manifest_for("classify", seed, json{{"state", state_path}});
  emit_json(payload, out, "wrote classification to " + out);
  return 0;
}

int cmd_regions(Family family, const FamilyEtas& etas, int grid,
                const std::string& format, std::uint64_t seed,
                const std::string& out) {
  const RegionScan scan = region_scan(family, etas, grid, true);
  const json manifest = manifest_for("regions", seed,
                                     json{{"family", to_string(family)},
                                          {"eta_a", etas.a},
                                          {"eta_b", etas.b},
                                          {"eta_c", etas.c},
                                          {"eta_d", etas.d},
                                          {"grid", grid},
                                          {"format", format}});
  if (scan.rejected > 0)
    std::cerr << "rejected " << scan.rejected
              << " grid points whose state failed validation\n";
  if (format == "json") {
    json payload = region_scan_to_json(scan);
    payload["manifest"] = manifest;
    emit_json(payload, out,
              "wrote region scan (" + std::to_string(scan.rows.size()) +
                  " cells) to " + out);
    return 0;
  }
  const std::string csv = region_scan_to_csv(scan);
  if (out.empty()) {
    std::cout << csv;
  } else {
    write_text_file(out, csv);
    write_text_file(out + ".manifest.json", manifest.dump(2) + "\n");
    std::cout << "wrote region scan (" << scan.rows.size() << " cells) to "
              << out << " with manifest " << out << ".manifest.json\n";
  }
  return 0;
}

int cmd_fixed_points(int grid, int period, std::uint64_t seed,
                     const std::string& out) {
  FixedPointSearchConfig cfg;
  cfg.grid_density = grid;
  cfg.period = period;
  const auto recs = find_fixed_points(cfg);
  std::cout << format_fixed_point_table(recs);
  if (!out.empty()) {
    json payload = fixed_points_to_json(recs);
    payload["manifest"] = manifest_for(
        "fixed-points", seed, json{{"grid", grid}, {"period", period}});
    write_text_file(out, payload.dump(2) + "\n");
    std::cout << "wrote " << recs.size() << " records to " << out << "\n";
  }
  return 0;
}

int cmd_oracle_check(int trials, double tol, std::uint64_t seed,
                     const std::string& out) {
  const OracleCheck chk = oracle_check(trials, seed, tol, true);
  char line[160];
  std::snprintf(line, sizeof line,
                "%d/%d agree (max state error %.3g, max prob error %.3g)",
                chk.agreements, chk.trials, chk.max_state_error,
                chk.max_prob_error);
  std::cout << line << "\n";
  if (!out.empty()) {
    json payload = oracle_check_to_json(chk);
    payload["manifest"] = manifest_for(
        "oracle-check", seed, json{{"trials", trials}, {"tol", tol}});
    write_text_file(out, payload.dump(2) + "\n");
    std::cout << "wrote report to " << out << "\n";
  }
  return chk.agreements == chk.trials ? 0 : 1;
}

int cmd_measure(const std::string& state_path, std::uint64_t seed,
                const std::string& out) {
  const BellDensityMatrix rho = load_state_file(state_path);
  json payload = measure_report_to_json(
      concurrence_mixed(rho), bell_fidelities(rho), max_entangled_fidelity(rho));
  payload["manifest"] =
      manifest_for("measure", seed, json{{"state", state_path}});
  emit_json(payload, out, "wrote measures to " + out);
  return 0;
}

int cmd_example(int which, double param, std::uint64_t seed,
                const std::string& out) {
  if (which == 1 && !(param > 0.5 && param <= 1.0))
    throw ValidationError("example 1 expects x in (0.5, 1]");
  if (which == 2 && !(param > 0.0 && param <= 0.5))
    throw ValidationError("example 2 expects c in (0, 0.5]");
  const BellDensityMatrix rho =
      which == 1 ? dephased_example(param) : seesaw_example(param);

  const MapOutcome closed = apply_general(rho);
  const MapOutcome simulated = run_protocol(rho);
  const double state_distance =
      Mat4::distance(closed.state.matrix(), simulated.state.matrix());
  const double prob_distance = std::abs(closed.success_probability -
                                        simulated.success_probability);
  const double conc = concurrence_mixed(rho);
  const MaxFidelityResult fmax = max_entangled_fidelity(rho);
  const bool oracle_agrees = state_distance <= 1e-10 && prob_distance <= 1e-10;

  json payload{
      {"example", which},
      {"param", param},
      {"state", state_to_json(rho)},
      {"closed_form",
       {{"r1_prime", closed.x.r1},
        {"success_probability", closed.success_probability}}},
      {"oracle",
       {{"r1_prime", simulated.x.r1},
        {"success_probability", simulated.success_probability},
        {"state_distance", state_distance}}},
      {"concurrence", conc},
      {"max_entangled_fidelity", fmax.value},
  };

  bool pass = oracle_agrees;
  if (which == 1) {
    const double x = param;
    const double expected_r1 = x * x / (x * x + (1.0 - x) * (1.0 - x));
    const bool r1_matches = std::abs(closed.x.r1 - expected_r1) <= 1e-12;
    const bool r1_grows = closed.x.r1 > x;
    const auto fids = bell_fidelities(rho);
    bool at_most_half = true;
    for (const double f : fids) at_most_half = at_most_half && f <= 0.5 + 1e-12;
    payload["expected"] = {{"r1_prime", expected_r1}};
    payload["checks"] = {{"r1_prime_matches", r1_matches},
                         {"r1_prime_exceeds_x", r1_grows},
                         {"initial_fidelities_at_most_half", at_most_half},
                         {"oracle_agrees", oracle_agrees}};
    pass = pass && r1_matches && r1_grows && at_most_half;
  } else {
    const double c = param;
    const bool r1_matches = std::abs(closed.x.r1 - 1.0) <= 1e-12;
    const bool prob_matches =
        std::abs(closed.success_probability - c * c / 2.0) <= 1e-12;
    const bool concurrence_matches = std::abs(conc - c) <= 1e-9;
    const bool fidelity_bounded = fmax.value <= 0.5 + 1e-9;
    payload["expected"] = {{"r1_prime", 1.0},
                           {"success_probability", c * c / 2.0},
                           {"concurrence", c}};
    payload["checks"] = {{"r1_prime_matches", r1_matches},
                         {"success_probability_matches", prob_matches},
                         {"concurrence_matches", concurrence_matches},
                         {"max_fidelity_at_most_half", fidelity_bounded},
                         {"oracle_agrees", oracle_agrees}};
    pass = pass && r1_matches && prob_matches && concurrence_matches &&
           fidelity_bounded;
  }
  payload["pass"] = pass;
  payload["manifest"] = manifest_for(
      "example", seed, json{{"example", which}, {"param", param}});
  emit_json(payload, out, "wrote example report to " + out);
  return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"recurrence purification toolkit: closed-form map, protocol "
               "simulation, fixed points, region scans, and measures"};
  app.require_subcommand(1);
  int rc = 0;

  std::string state_path, out_path, format = "csv", family_name = "diagonal";
  std::uint64_t seed = 0;
  int steps = 20, grid = 64, fp_grid = 12, period = 1, trials = 1000;
  int example_which = 1;
  double tol = 0.0, oracle_tol = 1e-10, example_param = 0.75;
  FamilyEtas etas;

  auto* it = app.add_subcommand("iterate", "run the purification map");
  it->add_option("--state", state_path, "input state JSON")->required();
  it->add_option("--steps", steps, "maximum steps")->check(CLI::Range(1, 100000));
  it->add_option("--tol", tol, "early-stop tolerance on the X parameters")
      ->check(CLI::NonNegativeNumber);
  auto* it_seed = it->add_option("--seed", seed, "manifest seed");
  it->add_option("--out", out_path, "output JSON path");
  it->callback([&] {
    rc = cmd_iterate(state_path, steps, tol,
                     resolve_seed(it_seed->count() > 0, seed), out_path);
  });

  auto* cl = app.add_subcommand("classify", "closed-form convergence verdict");
  cl->add_option("--state", state_path, "input state JSON")->required();
  auto* cl_seed = cl->add_option("--seed", seed, "manifest seed");
  cl->add_option("--out", out_path, "output JSON path");
  cl->callback([&] {
    rc = cmd_classify(state_path, resolve_seed(cl_seed->count() > 0, seed),
                      out_path);
  });

  auto* rg = app.add_subcommand("regions",
                                "label simplex grid points by convergence");
  rg->add_option("--family", family_name, "coherence family")
      ->check(CLI::IsMember({"diagonal", "dephasing1", "dephasing2"}));
  rg->add_option("--eta-a", etas.a, "dephasing1 r12 scale")
      ->check(CLI::Range(0.0, 1.0));
  rg->add_option("--eta-b", etas.b, "dephasing1 r34 scale")
      ->check(CLI::Range(0.0, 1.0));
  rg->add_option("--eta-c", etas.c, "dephasing2 r12 scale")
      ->check(CLI::Range(0.0, 1.0));
  rg->add_option("--eta-d", etas.d, "dephasing2 r34 scale")
      ->check(CLI::Range(0.0, 1.0));
  rg->add_option("--grid", grid, "points per axis")->check(CLI::Range(2, 4096));
  rg->add_option("--format", format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  auto* rg_seed = rg->add_option("--seed", seed, "manifest seed");
  rg->add_option("--out", out_path, "output path");
  rg->callback([&] {
    const Family family = family_name == "diagonal"     ? Family::diagonal
                          : family_name == "dephasing1" ? Family::dephasing1
                                                        : Family::dephasing2;
    rc = cmd_regions(family, etas, grid, format,
                     resolve_seed(rg_seed->count() > 0, seed), out_path);
  });

  auto* fp = app.add_subcommand("fixed-points",
                                "search the map for rest points and cycles");
  fp->add_option("--grid", fp_grid, "seed grid density")
      ->check(CLI::Range(2, 64));
  fp->add_option("--period", period, "orbit period to search")
      ->check(CLI::IsMember({1, 2}));
  auto* fp_seed = fp->add_option("--seed", seed, "manifest seed");
  fp->add_option("--out", out_path, "output JSON path");
  fp->callback([&] {
    rc = cmd_fixed_points(fp_grid, period,
                          resolve_seed(fp_seed->count() > 0, seed), out_path);
  });

  auto* oc = app.add_subcommand(
      "oracle-check", "compare the closed-form map with the full simulation");
  oc->add_option("--trials", trials, "random states to test")
      ->check(CLI::Range(1, 10000000));
  oc->add_option("--tol", oracle_tol, "agreement tolerance")
      ->check(CLI::NonNegativeNumber);
  auto* oc_seed = oc->add_option("--seed", seed, "RNG seed");
  oc->add_option("--out", out_path, "output JSON path");
  oc->callback([&] {
    rc = cmd_oracle_check(trials, oracle_tol,
                          resolve_seed(oc_seed->count() > 0, seed), out_path);
  });

  auto* me = app.add_subcommand("measure",
                                "entanglement measures of a stored state");
  me->add_option("--state", state_path, "input state JSON")->required();
  auto* me_seed = me->add_option("--seed", seed, "manifest seed");
  me->add_option("--out", out_path, "output JSON path");
  me->callback([&] {
    rc = cmd_measure(state_path, resolve_seed(me_seed->count() > 0, seed),
                     out_path);
  });

  auto* ex = app.add_subcommand("example",
                                "walk through a worked example with known analytic values");
  ex->add_option("which", example_which, "example number")
      ->required()
      ->check(CLI::IsMember({1, 2}));
  ex->add_option("param", example_param, "x in (0.5,1] or c in (0,0.5]")
      ->required();
  auto* ex_seed = ex->add_option("--seed", seed, "manifest seed");
  ex->add_option("--out", out_path, "output JSON path");
  ex->callback([&] {
    rc = cmd_example(example_which, example_param,
                     resolve_seed(ex_seed->count() > 0, seed), out_path);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const DegenerateNormalization& e) {
    std::cerr << "degenerate normalization: " << e.what() << "\n";
    return 3;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return rc;
}
