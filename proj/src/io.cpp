#include "purikit/io.hpp"

#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

namespace purikit {

json complex_to_json(cxd z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

cxd complex_from_json(const json& j) {
  if (j.is_number()) return cxd{j.get<double>(), 0.0};
  if (j.is_object() && j.contains("re") && j.contains("im"))
    return cxd{j.at("re").get<double>(), j.at("im").get<double>()};
  throw ValidationError("complex entries must be numbers or {re, im} objects");
}

json state_to_json(const BellDensityMatrix& rho) {
  json rows = json::array();
  for (int i = 0; i < 4; ++i) {
    json row = json::array();
    for (int j = 0; j < 4; ++j) row.push_back(complex_to_json(rho.entry(i, j)));
    rows.push_back(row);
  }
  return json{{"basis", "bell"}, {"matrix", rows}};
}

json x_state_to_json(const XState& x) {
  return json{{"basis", "bell"},
              {"x",
               {{"r", {x.r1, x.r2, x.r3, x.r4}},
                {"r14", complex_to_json(x.r14)},
                {"r23", complex_to_json(x.r23)}}}};
}

XState x_state_from_json(const json& j) {
  const json& x = j.contains("x") ? j.at("x") : j;
  if (!x.contains("r") || !x.at("r").is_array() || x.at("r").size() != 4)
    throw ValidationError("x state needs \"r\": [r1, r2, r3, r4]");
  const json& r = x.at("r");
  return XState::validated(
      r[0].get<double>(), r[1].get<double>(), r[2].get<double>(),
      r[3].get<double>(),
      x.contains("r14") ? complex_from_json(x.at("r14")) : cxd{},
      x.contains("r23") ? complex_from_json(x.at("r23")) : cxd{});
}

BellDensityMatrix state_from_json(const json& j) {
  if (!j.is_object()) throw ValidationError("state must be a JSON object");
  if (j.contains("basis") && j.at("basis") != "bell")
    throw ValidationError("states are stored in the bell basis only");

  if (j.contains("x")) return x_state_from_json(j).embed();

  if (!j.contains("matrix"))
    throw ValidationError("state needs a \"matrix\" or \"x\" field");
  const json& rows = j.at("matrix");
  if (!rows.is_array() || rows.size() != 4)
    throw ValidationError("matrix must have four rows");
  Mat4 m;
  for (int i = 0; i < 4; ++i) {
    if (!rows[i].is_array() || rows[i].size() != 4)
      throw ValidationError("matrix rows must have four entries");
    for (int k = 0; k < 4; ++k) m(i, k) = complex_from_json(rows[i][k]);
  }
  return BellDensityMatrix::from_matrix(m);
}

BellDensityMatrix load_state_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open state file " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError(path + ": " + e.what());
  }
  try {
    return state_from_json(j);
  } catch (const ValidationError& e) {
    throw ValidationError(path + ": " + e.what());
  } catch (const json::exception& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

RunManifest make_manifest(const std::string& command, std::uint64_t seed,
                          json config) {
  RunManifest m;
  m.command = command;
  m.seed = seed;
  m.config = std::move(config);
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  m.timestamp = buf;
  return m;
}

json manifest_to_json(const RunManifest& m) {
  return json{{"command", m.command},
              {"seed", m.seed},
              {"tool_version", m.tool_version},
              {"config", m.config},
              {"timestamp", m.timestamp}};
}

json trajectory_to_json(const Trajectory& t) {
  json points = json::array();
  for (const auto& p : t.points)
    points.push_back(json{{"step", p.step},
                          {"state", x_state_to_json(p.x)},
                          {"normalization", p.normalization},
                          {"p_success", p.p_success},
                          {"p_cumulative", p.p_cumulative}});
  json out = {{"points", points}, {"stopped_early", t.stopped_early}};
  out["initial"] = t.initial ? x_state_to_json(*t.initial) : json{};
  return out;
}

namespace {

json margins_to_json(const ConditionMargins& m) {
  return json{{"lhs", m.lhs}, {"rhs", m.rhs}, {"margin", m.margin()}};
}

}  // namespace

json classification_to_json(const Classification& c) {
  return json{{"verdict", to_string(c.verdict)},
              {"margins",
               {{"psi_minus", margins_to_json(c.psi_minus)},
                {"psi_plus", margins_to_json(c.psi_plus)}}}};
}

json iteration_summary_to_json(const IterationSummary& s) {
  return json{{"verdict", to_string(s.verdict)},
              {"steps", s.steps},
              {"final_state", x_state_to_json(s.final_state)},
              {"fixed_point_detected", s.fixed_point_detected},
              {"period2_detected", s.period2_detected}};
}

json fixed_points_to_json(const std::vector<FixedPointRecord>& recs) {
  json arr = json::array();
  for (const auto& r : recs) {
    json mags = json::array();
    for (const double m : r.eigen_magnitudes) mags.push_back(m);
    arr.push_back(json{{"v", r.v},
                       {"period", r.period},
                       {"residual", r.residual},
                       {"eigen_magnitudes", mags},
                       {"spectral_radius", r.eigen_magnitudes[0]},
                       {"verdict", to_string(r.verdict)},
                       {"valid", r.valid}});
  }
  return json{{"fixed_points", arr}};
}

json region_scan_to_json(const RegionScan& scan) {
  json rows = json::array();
  for (const auto& r : scan.rows)
    rows.push_back(json{{"r1", r.r1},
                        {"r2", r.r2},
                        {"r3", r.r3},
                        {"label", to_string(r.label)}});
  return json{{"grid", scan.grid},
              {"counts",
               {{"psi_minus", scan.count_psi_minus},
                {"psi_plus", scan.count_psi_plus},
                {"none", scan.count_none},
                {"boundary", scan.count_boundary}}},
              {"rejected", scan.rejected},
              {"none_fraction", scan.none_fraction()},
              {"rows", rows}};
}

json oracle_check_to_json(const OracleCheck& c) {
  return json{{"trials", c.trials},
              {"agreements", c.agreements},
              {"max_state_error", c.max_state_error},
              {"max_prob_error", c.max_prob_error},
              {"tol", c.tol}};
}

json measure_report_to_json(double concurrence,
                            const std::array<double, 4>& fidelities,
                            const MaxFidelityResult& max_fid) {
  return json{{"concurrence", concurrence},
              {"bell_fidelities",
               {fidelities[0], fidelities[1], fidelities[2], fidelities[3]}},
              {"max_entangled_fidelity", max_fid.value},
              {"argmax",
               {{"a_minus", max_fid.argmax.a_minus},
                {"a_plus", max_fid.argmax.a_plus},
                {"b_minus", max_fid.argmax.b_minus},
                {"b_plus", max_fid.argmax.b_plus}}}};
}

std::string region_scan_to_csv(const RegionScan& scan) {
  std::string out = "r1,r2,r3,label\n";
  char buf[128];
  for (const auto& r : scan.rows) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%s\n", r.r1, r.r2, r.r3,
                  to_string(r.label));
    out += buf;
  }
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write " + path);
  out << content;
  if (!out) throw ValidationError("write failed for " + path);
}

}  // namespace purikit
