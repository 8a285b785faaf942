#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

std::string cli_bin() {
  const char* env = std::getenv("COORDSOLVE_CLI_BIN");
  REQUIRE_MESSAGE(env != nullptr, "COORDSOLVE_CLI_BIN must point at the CLI");
  return env;
}

std::string scenario_dir() {
  if (const char* env = std::getenv("COORDSOLVE_SCENARIO_DIR")) return env;
  return "scenarios";
}

std::string fresh_out_dir(const std::string& tag) {
  const std::string base =
      std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp") +
      "/coordsolve_cli_" + tag;
  std::system(("rm -rf " + base + " && mkdir -p " + base).c_str());
  return base;
}

int run(const std::string& args) {
  const std::string cmd = cli_bin() + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE_MESSAGE(in.good(), ("missing output file: " + path).c_str());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("fixed-points emits one CSV row per root") {
  const auto out = fresh_out_dir("fp");
  const int code = run("-s " + scenario_dir() + "/canonical.json -o " + out +
                       " fixed-points");
  CHECK(code == 0);
  const auto csv = slurp(out + "/canonical.fixed-points.csv");
  CHECK(csv.rfind("supply,kind,slope\n", 0) == 0);
  int lines = 0;
  for (char c : csv)
    if (c == '\n') ++lines;
  CHECK(lines == 4);  // header + three fixed points
}

TEST_CASE("full command surface succeeds on the canonical scenario") {
  const auto out = fresh_out_dir("all");
  const std::string base =
      "-s " + scenario_dir() + "/canonical.json -o " + out + " ";
  CHECK(run(base + "validate") == 0);
  CHECK(run(base + "correspondence --sl 0.3") == 0);
  CHECK(run(base + "dynamics --s0 0.5 --sl 0") == 0);
  CHECK(run(base + "solve") == 0);
  CHECK(run(base + "capacity --k 0.8") == 0);
  CHECK(run(base + "alt --cl 0.2 --sl 0.3") == 0);
  CHECK(run(base + "welfare") == 0);
  CHECK(run(base + "planner") == 0);
  CHECK(run(base + "decompose") == 0);
  CHECK(run(base + "sweep --param gamma --from 1.4 --to 1.6 --steps 3") == 0);

  for (const char* f :
       {"canonical.validate.json", "canonical.correspondence.csv",
        "canonical.dynamics.csv", "canonical.dynamics.json",
        "canonical.solve.json", "canonical.capacity.json",
        "canonical.alt.csv", "canonical.alt.json", "canonical.welfare.csv",
        "canonical.planner.json", "canonical.decompose.json",
        "canonical.sweep.csv"})
    CHECK(!slurp(out + "/" + f).empty());

  const auto solve_json = slurp(out + "/canonical.solve.json");
  CHECK(solve_json.find("\"s_l_star\": 1.0") != std::string::npos);
  CHECK(solve_json.find("\"regime\": \"III\"") != std::string::npos);
  CHECK(solve_json.find("\"dominance_margin\"") != std::string::npos);
}

TEST_CASE("assumption-3 failures exit with code 2") {
  const auto out = fresh_out_dir("nomult");
  CHECK(run("-s " + scenario_dir() + "/single_low.json -o " + out +
            " solve") == 2);
  CHECK(run("-s " + scenario_dir() + "/single_low.json -o " + out +
            " fixed-points") == 0);
}

TEST_CASE("input errors exit with code 1") {
  const auto out = fresh_out_dir("bad");
  const std::string bad = out + "/bad.json";
  std::ofstream(bad) << R"({"name":"bad","demand":{"q_max":1,"beta":1,)"
                     << R"("gamma":-1,"alpha":2},)"
                     << R"("cost":{"kind":"uniform","c_bar":1}})";
  CHECK(run("-s " + bad + " -o " + out + " solve") == 1);
  CHECK(run("-s /no/such/file.json -o " + out + " solve") == 1);
}

TEST_CASE("numerical failures exit with code 3") {
  const auto out = fresh_out_dir("osc");
  const std::string osc = out + "/oscillator.json";
  std::ofstream(osc) << R"({"name":"oscillator","demand":{"q_max":0.3,)"
                     << R"("beta":0.1,"gamma":0.01,"alpha":1},)"
                     << R"("cost":{"kind":"uniform","c_bar":0.5}})";
  CHECK(run("-s " + osc + " -o " + out + " dynamics --s0 0 --sl 0") == 3);
}

TEST_CASE("report runs are byte-identical") {
  const auto out1 = fresh_out_dir("rep1");
  const auto out2 = fresh_out_dir("rep2");
  const std::string base = "-s " + scenario_dir() + "/canonical.json -o ";
  CHECK(run(base + out1 + " report") == 0);
  CHECK(run(base + out2 + " report") == 0);
  const auto a = slurp(out1 + "/canonical.report.json");
  const auto b = slurp(out2 + "/canonical.report.json");
  CHECK(a == b);
  CHECK(a.find("\"schema_version\": 1") != std::string::npos);
}
