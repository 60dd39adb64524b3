#pragma once

#include <cstdint>
#include <string>

#include "json.hpp"
#include "purikit/convergence.hpp"
#include "purikit/fixed_points.hpp"
#include "purikit/map.hpp"
#include "purikit/measures.hpp"
#include "purikit/sweeps.hpp"

namespace purikit {

using json = nlohmann::json;

inline constexpr const char* kToolVersion = "1.0.0";

json complex_to_json(cxd z);
cxd complex_from_json(const json& j);  // accepts a number or {"re","im"}

// Matrix form: {"basis":"bell","matrix":[[{re,im} x4] x4]}.
json state_to_json(const BellDensityMatrix& rho);
// Compact X form: {"basis":"bell","x":{"r1",...,"r14":{re,im},"r23":{re,im}}}.
json x_state_to_json(const XState& x);

// Accepts either form; validates before returning.
BellDensityMatrix state_from_json(const json& j);
XState x_state_from_json(const json& j);

// Parse and validation failures surface as ValidationError with the file
// path and parse position in the message.
BellDensityMatrix load_state_file(const std::string& path);

struct RunManifest {
  std::string command;
  std::uint64_t seed = 0;
  std::string tool_version = kToolVersion;
  json config;
  std::string timestamp;  // ISO 8601 UTC
};

RunManifest make_manifest(const std::string& command, std::uint64_t seed,
                          json config);
json manifest_to_json(const RunManifest& m);

json trajectory_to_json(const Trajectory& t);
json classification_to_json(const Classification& c);
json iteration_summary_to_json(const IterationSummary& s);
json fixed_points_to_json(const std::vector<FixedPointRecord>& recs);
json region_scan_to_json(const RegionScan& scan);
json oracle_check_to_json(const OracleCheck& c);
json measure_report_to_json(double concurrence,
                            const std::array<double, 4>& fidelities,
                            const MaxFidelityResult& max_fid);

// header r1,r2,r3,label; one row per cell, LF line endings.
std::string region_scan_to_csv(const RegionScan& scan);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace purikit
