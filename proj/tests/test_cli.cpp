#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "sobmor/runconfig.hpp"

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(SOBMOR_CLI_PATH) + " " + args + " 2>&1";
  std::array<char, 4096> buf{};
  RunResult res;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0)
    res.output.append(buf.data(), got);
  const int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("sobmor_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("cex-fit example run") {
  const fs::path dir = fresh_dir("cexfit");
  const RunResult r = run_cli(
      "cex-fit --d 2 --p 1.5 --q 2 --q1 1.5 --r 2.5,3,4,6 --n 30:44 --out " +
      dir.string());
  CHECK(r.exit_code == 0);
  const std::string csv = slurp(dir / "cex_fit.csv");
  CHECK(csv.starts_with(
      "r,slope,intercept,max_residual,predicted,verdict,agrees\n"));
  CHECK(csv.find("blowup") != std::string::npos);
  CHECK(csv.find("bounded") != std::string::npos);
  CHECK(csv.find("false") == std::string::npos);
}

TEST_CASE("configuration errors exit with code 2") {
  CHECK(run_cli("validate --d 1").exit_code == 2);
  CHECK(run_cli("validate --d nope").exit_code == 2);
  CHECK(run_cli("verify-holder --r 9 --seeds 1 --cells 32").exit_code == 2);
  CHECK(run_cli("report").exit_code == 2);  // --in is required
  CHECK(run_cli("no-such-command").exit_code == 2);

  const RunResult r = run_cli("verify-holder --r 9 --seeds 1 --cells 32");
  CHECK(r.output.find("ROutOfRange") != std::string::npos);
}

TEST_CASE("unknown config keys are rejected by name") {
  const fs::path dir = fresh_dir("badconf");
  std::ofstream(dir / "bad.conf") << "d = 2\nwidgets = 7\n";
  const RunResult r =
      run_cli("validate --config " + (dir / "bad.conf").string());
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("UnknownKey") != std::string::npos);
  CHECK(r.output.find("widgets") != std::string::npos);
}

TEST_CASE("flags override config file entries") {
  const fs::path dir = fresh_dir("override");
  std::ofstream(dir / "run.conf")
      << "# reference parameters\nd = 2\np = 1.5\nq = 2\nq1 = 1.25\n";
  const RunResult r =
      run_cli("validate --config " + (dir / "run.conf").string() +
              " --q1 1.5 --out " + dir.string());
  CHECK(r.exit_code == 0);
  const std::string csv = slurp(dir / "validate.csv");
  CHECK(csv.find("2,1.5,2,1.5,") != std::string::npos);
}

TEST_CASE("unwritable output exits with code 3") {
  CHECK(run_cli("validate --out /proc/definitely/not/writable").exit_code ==
        3);
}

TEST_CASE("reruns are byte-identical") {
  const fs::path a = fresh_dir("det_a");
  const fs::path b = fresh_dir("det_b");
  const std::string args =
      "cex-norms --d 2 --p 1.5 --q 2 --q1 1.5 --r 2.5,3 --n 15:20 --out ";
  CHECK(run_cli(args + a.string()).exit_code == 0);
  CHECK(run_cli(args + b.string()).exit_code == 0);
  CHECK(slurp(a / "cex_norms.csv") == slurp(b / "cex_norms.csv"));

  const std::string vargs =
      "verify-lemma1 --seeds 3 --cells 64 --format json --out ";
  CHECK(run_cli(vargs + a.string()).exit_code == 0);
  CHECK(run_cli(vargs + b.string()).exit_code == 0);
  CHECK(slurp(a / "lemma1.json") == slurp(b / "lemma1.json"));
}

TEST_CASE("report aggregates csv artifacts into json") {
  const fs::path dir = fresh_dir("report");
  CHECK(run_cli("sigma --theta 0.5 --n 9 --r 1,2 --out " + dir.string())
            .exit_code == 0);
  const RunResult r =
      run_cli("report --in " + (dir / "sigma_norms.csv").string() + "," +
              (dir / "sigma_schedule.csv").string() + " --out " +
              dir.string());
  CHECK(r.exit_code == 0);
  const std::string json = slurp(dir / "report.json");
  CHECK(json.find("\"reports\"") != std::string::npos);
  CHECK(json.find("sigma_norms.csv") != std::string::npos);
  CHECK(json.find("\"columns\"") != std::string::npos);
}

TEST_CASE("environment variable overrides the output directory") {
  const fs::path dir = fresh_dir("envdir");
  const std::string cmd = "SOBMOR_OUT_DIR=" + dir.string() + " " +
                          std::string(SOBMOR_CLI_PATH) +
                          " validate --out /somewhere/else >/dev/null 2>&1";
  CHECK(std::system(cmd.c_str()) == 0);
  CHECK(fs::exists(dir / "validate.csv"));
}

TEST_CASE("config text round-trips byte-identically") {
  using namespace sobmor;
  RunConfig cfg;
  cfg.d = 3;
  cfg.p = 2.0;
  cfg.q = 3.0;
  cfg.q1 = 2.5;
  cfg.n = "12:40";
  cfg.r = "1.5,2,3.25";
  cfg.out = "/tmp/somewhere";
  const std::string text = serialize_config(cfg);

  RunConfig parsed;
  apply_key_values(parsed, parse_key_values(text));
  CHECK(serialize_config(parsed) == text);

  // malformed values are named
  RunConfig sink;
  CHECK_THROWS_AS(
      apply_key_values(sink, parse_key_values("cells = many\n")), Error);
  CHECK_THROWS_AS(
      apply_key_values(sink, parse_key_values("zz = 1\n")), Error);
  CHECK_NOTHROW(
      apply_key_values(sink, parse_key_values("# comment only\n\n")));

  CHECK(parse_n_range("30:44") == std::pair<int, int>{30, 44});
  CHECK(parse_n_range("12") == std::pair<int, int>{12, 12});
  CHECK_THROWS_AS(parse_n_range("44:30"), Error);
  CHECK(parse_r_list("2.5,3,4").size() == 3);
}
