#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <atomic>
#include <cstdlib>
#include <string>

#include "json.hpp"
#include "purikit/io.hpp"

using purikit::read_text_file;
using purikit::write_text_file;
using json = nlohmann::json;

namespace {

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  static std::atomic<int> counter{0};
  const std::string out_file =
      "/tmp/purikit_cli_out_" + std::to_string(counter++) + ".txt";
  const std::string cmd = std::string(PURIKIT_BIN) + " " + args + " > " +
                          out_file + " 2>&1";
  const int status = std::system(cmd.c_str());
  RunResult r;
  if (WIFEXITED(status)) r.code = WEXITSTATUS(status);
  try {
    r.out = read_text_file(out_file);
  } catch (...) {
  }
  return r;
}

const std::string kWerner07 = "/tmp/purikit_cli_werner07.json";
const std::string kInvalid = "/tmp/purikit_cli_invalid.json";
const std::string kDegenerate = "/tmp/purikit_cli_degenerate.json";
const std::string kSeesawHalf = "/tmp/purikit_cli_seesaw.json";

void write_fixtures() {
  write_text_file(kWerner07,
                  R"({"basis":"bell","x":{"r":[0.7,0.1,0.1,0.1]}})");
  // Coherence beyond the positivity bound sqrt(r1 r4).
  write_text_file(kInvalid,
                  R"({"x":{"r":[0.5,0.3,0.1,0.1],"r14":{"re":0.4,"im":0}}})");
  // Valid rank-2 state whose map normalization is exactly zero.
  json degen = {{"basis", "bell"},
                {"matrix",
                 {{0.25, 0.25, 0.0, 0.0},
                  {0.25, 0.25, 0.0, 0.0},
                  {0.0, 0.0, 0.25, 0.25},
                  {0.0, 0.0, 0.25, 0.25}}}};
  write_text_file(kDegenerate, degen.dump());
  // Off-X coherence between the third and fourth Bell states.
  json seesaw = {{"basis", "bell"},
                 {"matrix",
                  {{0.4, 0.0, 0.0, 0.0},
                   {0.0, 0.0, 0.0, 0.0},
                   {0.0, 0.0, 0.3, 0.3},
                   {0.0, 0.0, 0.3, 0.3}}}};
  write_text_file(kSeesawHalf, seesaw.dump());
}

const bool fixtures_ready = (write_fixtures(), true);

}  // namespace

TEST_CASE("help and argument errors") {
  CHECK(fixtures_ready);
  CHECK(run_cli("--help").code == 0);
  CHECK(run_cli("iterate --help").code == 0);
  CHECK(run_cli("--help").out.find("iterate") != std::string::npos);
  CHECK(run_cli("").code == 2);                       // missing subcommand
  CHECK(run_cli("iterate").code == 2);                // missing --state
  CHECK(run_cli("iterate --state x --bogus").code == 2);
  CHECK(run_cli("frobnicate").code == 2);
  CHECK(run_cli("regions --family nope").code == 2);
  CHECK(run_cli("regions --eta-a 1.5").code == 2);
}

TEST_CASE("iterate emits a trajectory with increasing fidelity") {
  const RunResult r = run_cli("iterate --state " + kWerner07 + " --steps 5");
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  REQUIRE(j.at("points").size() == 5);
  CHECK(j.at("initial").at("x").at("r")[0] == 0.7);
  double prev = 0.7;
  for (const auto& p : j.at("points")) {
    const double r1 = p.at("state").at("x").at("r")[0].get<double>();
    CHECK(r1 >= prev);
    prev = r1;
  }
  CHECK(prev > 0.99);
  CHECK(j.at("manifest").at("seed") == 1);
  CHECK(j.at("manifest").at("command") == "iterate");
}

TEST_CASE("exit codes: validation 2, degenerate 3") {
  CHECK(run_cli("iterate --state " + kInvalid).code == 2);
  CHECK(run_cli("iterate --state /tmp/purikit_cli_missing.json").code == 2);
  CHECK(run_cli("iterate --state " + kDegenerate + " --steps 3").code == 3);
}

TEST_CASE("classify reports both condition routes for X states") {
  const RunResult r = run_cli("classify --state " + kWerner07);
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j.at("verdict") == "psi_minus");
  CHECK(j.at("x_condition").at("verdict") == "psi_minus");
  CHECK(j.at("iteration").at("verdict") == "psi_minus");

  const RunResult g = run_cli("classify --state " + kSeesawHalf);
  REQUIRE(g.code == 0);
  const json gj = json::parse(g.out);
  CHECK(gj.at("verdict") == "psi_minus");
  CHECK(!gj.contains("x_condition"));
}

TEST_CASE("regions emits CSV on stdout and JSON with a manifest") {
  const RunResult csv = run_cli("regions --grid 8");
  REQUIRE(csv.code == 0);
  CHECK(csv.out.rfind("r1,r2,r3,label\n", 0) == 0);
  CHECK(csv.out.find("psi_minus") != std::string::npos);
  const RunResult again = run_cli("regions --grid 8");
  CHECK(csv.out == again.out);

  const RunResult js = run_cli(
      "regions --family dephasing1 --eta-a 0.4 --eta-b 0.1 --grid 8 "
      "--format json");
  REQUIRE(js.code == 0);
  const json j = json::parse(js.out);
  CHECK(j.at("grid") == 8);
  CHECK(j.at("counts").contains("none"));
  CHECK(j.at("manifest").at("config").at("family") == "dephasing1");
}

TEST_CASE("regions --out writes the CSV plus a manifest sidecar") {
  const std::string out = "/tmp/purikit_cli_regions.csv";
  const RunResult r = run_cli("regions --grid 6 --out " + out);
  REQUIRE(r.code == 0);
  const std::string csv = read_text_file(out);
  CHECK(csv.rfind("r1,r2,r3,label\n", 0) == 0);
  const json manifest = json::parse(read_text_file(out + ".manifest.json"));
  CHECK(manifest.at("command") == "regions");
  CHECK(manifest.at("config").at("grid") == 6);
  CHECK(manifest.at("tool_version") == "1.0.0");
}

TEST_CASE("fixed-points prints a table and serializes records") {
  const std::string out = "/tmp/purikit_cli_fp.json";
  const RunResult r = run_cli("fixed-points --grid 6 --out " + out);
  REQUIRE(r.code == 0);
  CHECK(r.out.find("verdict") != std::string::npos);
  const json j = json::parse(read_text_file(out));
  CHECK(j.at("fixed_points").size() >= 3);
  CHECK(j.at("manifest").at("config").at("period") == 1);
}

TEST_CASE("oracle-check certifies agreement") {
  const RunResult r = run_cli("oracle-check --trials 20 --seed 5");
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("20/20 agree", 0) == 0);
}

TEST_CASE("measure reports concurrence and the fidelity maximum") {
  write_text_file("/tmp/purikit_cli_werner08.json",
                  R"({"x":{"r":[0.8,0.066,0.067,0.067]}})");
  const RunResult r =
      run_cli("measure --state /tmp/purikit_cli_werner08.json");
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j.at("concurrence").get<double>() > 0.59);
  CHECK(j.at("bell_fidelities")[0].get<double>() == 0.8);
  CHECK(j.at("max_entangled_fidelity").get<double>() > 0.79);
  CHECK(j.at("argmax").contains("b_minus"));
}

TEST_CASE("example walkthroughs replicate the analytic values") {
  const RunResult e1 = run_cli("example 1 0.75");
  REQUIRE(e1.code == 0);
  const json j1 = json::parse(e1.out);
  CHECK(j1.at("closed_form").at("r1_prime").get<double>() ==
        doctest::Approx(0.9).epsilon(1e-12));
  CHECK(j1.at("pass") == true);

  const RunResult e2 = run_cli("example 2 0.4");
  REQUIRE(e2.code == 0);
  const json j2 = json::parse(e2.out);
  CHECK(j2.at("closed_form").at("r1_prime").get<double>() ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(j2.at("expected").at("success_probability").get<double>() ==
        doctest::Approx(0.08).epsilon(1e-12));
  CHECK(j2.at("checks").at("max_fidelity_at_most_half") == true);
  CHECK(j2.at("pass") == true);

  CHECK(run_cli("example 1 0.3").code == 2);   // x out of range
  CHECK(run_cli("example 2 0.75").code == 2);  // c out of range
  CHECK(run_cli("example 3 0.5").code == 2);
}

TEST_CASE("seed resolution: flag beats environment beats default") {
  const std::string out = "/tmp/purikit_cli_seed.json";
  setenv("PURIKIT_SEED", "123", 1);
  RunResult r = run_cli("oracle-check --trials 3 --out " + out);
  REQUIRE(r.code == 0);
  CHECK(json::parse(read_text_file(out)).at("manifest").at("seed") == 123);

  r = run_cli("oracle-check --trials 3 --seed 7 --out " + out);
  REQUIRE(r.code == 0);
  CHECK(json::parse(read_text_file(out)).at("manifest").at("seed") == 7);

  setenv("PURIKIT_SEED", "not-a-number", 1);
  CHECK(run_cli("oracle-check --trials 3").code == 2);
  unsetenv("PURIKIT_SEED");

  r = run_cli("oracle-check --trials 3 --out " + out);
  REQUIRE(r.code == 0);
  CHECK(json::parse(read_text_file(out)).at("manifest").at("seed") == 1);
}

TEST_CASE("repeated runs are identical apart from the timestamp") {
  const std::string out_a = "/tmp/purikit_cli_det_a.json";
  const std::string out_b = "/tmp/purikit_cli_det_b.json";
  REQUIRE(run_cli("iterate --state " + kWerner07 + " --steps 8 --out " +
                  out_a).code == 0);
  REQUIRE(run_cli("iterate --state " + kWerner07 + " --steps 8 --out " +
                  out_b).code == 0);
  json a = json::parse(read_text_file(out_a));
  json b = json::parse(read_text_file(out_b));
  a.at("manifest").erase("timestamp");
  b.at("manifest").erase("timestamp");
  CHECK(a.dump() == b.dump());
}
