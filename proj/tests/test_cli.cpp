// Copyright 2026 The Sentinel Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// End-to-end runs of the installed command-line binary: exit-code contract,
// file outputs, reproducibility.

#include <doctest.h>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string stderr_text;
};

RunResult run_cli(const std::string& args) {
  static int counter = 0;
  const fs::path err = fs::temp_directory_path() / ("sentinel_cli_err_" +
                                                    std::to_string(counter++) + ".txt");
  const std::string cmd = std::string(SENTINEL_CLI_PATH) + " " + args + " 2> " + err.string();
  const int raw = std::system(cmd.c_str());
  RunResult result;
  result.exit_code = WEXITSTATUS(raw);
  std::ifstream in(err);
  std::stringstream ss;
  ss << in.rdbuf();
  result.stderr_text = ss.str();
  fs::remove(err);
  return result;
}

json load_json(const fs::path& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  json j;
  in >> j;
  return j;
}

fs::path temp_file(const std::string& name) {
  return fs::temp_directory_path() / name;
}

}  // namespace

TEST_CASE("theorem subcommand verifies an admissible configuration") {
  const fs::path out = temp_file("cli_theorem.json");
  const RunResult r = run_cli("theorem --n2 2000 --p1 0.02 --p2 0.01 --nu 2.5 --alpha 0.05"
                              " --output " + out.string());
  CHECK(r.exit_code == 0);
  const json j = load_json(out);
  CHECK(j["report"]["verdict"] == true);
  CHECK(j["report"]["n1_floor"] == 1000);
  CHECK(j["report"]["penalty"] == 0.0);
  CHECK(j["config"]["alpha"] == 0.05);
  fs::remove(out);
}

TEST_CASE("theorem subcommand reports a hypothesis failure as exit 2") {
  // A weakly powered reference test (power ~0.45, threshold ~0.72) does not
  // satisfy the inequality's hypotheses, which is an analysis error.
  const RunResult r = run_cli("theorem --n2 1000 --p1 0.02 --p2 0.01 --nu 1.5 --alpha 0.05");
  CHECK(r.exit_code == 2);
  CHECK(r.stderr_text.find("power") != std::string::npos);
}

TEST_CASE("theorem subcommand rejects unverifiable scenarios with exit 2") {
  const RunResult r = run_cli("theorem --n2 10 --p1 0.02 --p2 0.01 --nu 1.5 --alpha 0.05");
  CHECK(r.exit_code == 2);
  CHECK(r.stderr_text.find("error") != std::string::npos);
  // User errors surface as diagnostics, never as stack traces.
  CHECK(r.stderr_text.find("terminate") == std::string::npos);
}

TEST_CASE("samplesize subcommand reports the bracket") {
  const fs::path out = temp_file("cli_samplesize.json");
  const RunResult r = run_cli(
      "samplesize --p0 0.1 --q 0.5 --alpha 0.05 --power 0.8 --mode first-hit --output " +
      out.string());
  CHECK(r.exit_code == 0);
  const json j = load_json(out);
  const std::int64_t n = j["n"];
  CHECK(n > 1);
  CHECK(double(j["power_at_n"]) >= 0.8);
  CHECK(double(j["power_at_prev"]) < 0.8);
  fs::remove(out);
}

TEST_CASE("power subcommand writes plot-ready csv") {
  const fs::path out = temp_file("cli_power.json");
  const fs::path curve = temp_file("cli_power.csv");
  const RunResult r = run_cli("power --p0 0.01 --q 0.02 --alpha 0.05 --n-max 2000 --curve-out " +
                              curve.string() + " --output " + out.string());
  CHECK(r.exit_code == 0);
  const json j = load_json(out);
  CHECK(std::int64_t(j["local_decreases"]) >= 1);

  std::ifstream csv(curve);
  std::string header;
  std::getline(csv, header);
  CHECK(header == "n,critical_value,attained_size,power");
  std::int64_t lines = 0;
  std::string line;
  while (std::getline(csv, line)) ++lines;
  CHECK(lines == 2000);
  fs::remove(out);
  fs::remove(curve);
}

TEST_CASE("missing and malformed inputs exit 1") {
  CHECK(run_cli("cusum --input /nonexistent.csv --stratum a --baseline "
                "2020-06-01:2020-07-06")
            .exit_code == 1);

  const fs::path bad = temp_file("cli_bad.csv");
  {
    std::ofstream out(bad);
    out << "date,stratum,count\n2020-06-01,a,-4\n";
  }
  const RunResult r = run_cli("cusum --input " + bad.string() +
                              " --stratum a --baseline 2020-06-01:2020-07-06");
  CHECK(r.exit_code == 1);
  fs::remove(bad);

  CHECK(run_cli("samplesize --p0 0.5 --q 0.4 --alpha 0.05 --power 0.8").exit_code == 1);
  CHECK(run_cli("bogus-subcommand").exit_code == 1);
}

TEST_CASE("simulated stream feeds the chart commands end to end") {
  const fs::path stream = temp_file("cli_stream.csv");
  const fs::path report = temp_file("cli_sim.json");
  // 36 baseline days, then an outbreak: mirrors a calendar split at
  // 2020-07-06 with monitoring from 2020-07-07.
  const RunResult sim = run_cli(
      "simulate --m 2000 --n 400 --rate 0.05 --nu 2.0 --outbreak-start 57 --horizon 120"
      " --seed 42 --stratum 20-29 --start-date 2020-06-01 --stream-out " +
      stream.string() + " --output " + report.string());
  REQUIRE(sim.exit_code == 0);

  const fs::path glr_json = temp_file("cli_glr.json");
  const fs::path glr_trace = temp_file("cli_glr_trace.csv");
  const RunResult glr = run_cli("glr --input " + stream.string() +
                                " --stratum 20-29 --baseline 2020-06-01:2020-07-06"
                                " --target-arl 370 --reps 120 --seed 7 --trace-out " +
                                glr_trace.string() + " --output " + glr_json.string());
  REQUIRE(glr.exit_code == 0);
  const json gj = load_json(glr_json);
  CHECK(gj["baseline_days"] == 36);
  CHECK(double(gj["baseline_mean"]) > 10.0);
  CHECK(gj["alarm_date"] != nullptr);  // a doubled rate must trip the chart

  std::ifstream trace(glr_trace);
  std::string header;
  std::getline(trace, header);
  CHECK(header == "date,count,statistic,threshold,alarmed");

  const fs::path cusum_json = temp_file("cli_cusum.json");
  const RunResult cusum = run_cli("cusum --input " + stream.string() +
                                  " --stratum 20-29 --baseline 2020-06-01:2020-07-06"
                                  " --target-arl 370 --output " +
                                  cusum_json.string());
  REQUIRE(cusum.exit_code == 0);
  const json cj = load_json(cusum_json);
  CHECK(cj["alarm_date"] != nullptr);
  CHECK(double(cj["k"]) > double(cj["lambda0"]));

  fs::remove(stream);
  fs::remove(report);
  fs::remove(glr_json);
  fs::remove(glr_trace);
  fs::remove(cusum_json);
}

TEST_CASE("reports are byte-identical modulo the timestamp") {
  const fs::path a = temp_file("cli_repro_a.json");
  const fs::path b = temp_file("cli_repro_b.json");
  const std::string args =
      "theorem --suite 25 --seed 99 --n2 0 --p1 0 --p2 0 --alpha 0.05 --output ";
  REQUIRE(run_cli(args + a.string()).exit_code == 0);
  REQUIRE(run_cli(args + b.string()).exit_code == 0);
  json ja = load_json(a);
  json jb = load_json(b);
  ja.erase("generated_at");
  jb.erase("generated_at");
  CHECK(ja.dump() == jb.dump());
  fs::remove(a);
  fs::remove(b);
}

TEST_CASE("delay experiment subcommand emits summaries for both strata") {
  const fs::path out = temp_file("cli_delay.json");
  const RunResult r = run_cli(
      "simulate --experiment delay --m 200 --rate 0.3 --rate2 0.15 --n2 51 --nu 1.5"
      " --target-arl 60 --reps 20 --seed 3 --chart cusum --output " + out.string());
  CHECK(r.exit_code == 0);
  const json j = load_json(out);
  CHECK(j["n1"] == 25);
  CHECK(double(j["chart_limit"]) > 0.0);
  CHECK(j["delay_1"]["replications"] == 20);
  CHECK(double(j["delay_2"]["mean"]) > 0.0);
  fs::remove(out);
}

TEST_CASE("lemmas subcommand passes its default grid") {
  const fs::path out = temp_file("cli_lemmas.json");
  const RunResult r = run_cli("lemmas --n-max 100 --output " + out.string());
  CHECK(r.exit_code == 0);
  const json j = load_json(out);
  CHECK(j["all_ok"] == true);
  CHECK(j["families"]["cdf_crossing"]["violations"].empty());
  fs::remove(out);
}
