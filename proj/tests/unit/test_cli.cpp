#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "archdpg_cli/commands.hpp"
#include "archdpg_cli/csv.hpp"
#include "archdpg_cli/run_config.hpp"

using namespace archdpg;
using namespace archdpg::cli;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const fs::path kConfigDir = ARCHDPG_CONFIG_DIR;
const std::string kExe = ARCHDPG_EXE;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(slurp(p));
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> row;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) row.push_back(cell);
    rows.push_back(row);
  }
  return rows;
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("archdpg_cli_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

int run(const std::string& args) {
  const std::string cmd = kExe + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

json cantilever_json() { return json::parse(slurp(kConfigDir / "cantilever.json")); }

std::string config_error(const json& j) {
  try {
    parse_run_config(j);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("number format") {
  CHECK(format_number(1.0) == "1.000000000000000e+00");
  CHECK(format_number(-0.0) == "0.000000000000000e+00");
  CHECK(format_number(-2.5e-300) == "-2.500000000000000e-300");
  CHECK(format_number(INFINITY) == "inf");
  CHECK(format_number(-INFINITY) == "-inf");
  CHECK(format_number(NAN) == "nan");
  const std::regex sci(R"(-?\d\.\d{15}e[+-]\d{2,3})");
  for (double v : {3.14159, -1e-17, 6.02e23, 1.0 / 3.0}) {
    CHECK(std::regex_match(format_number(v), sci));
    CHECK(std::stod(format_number(v)) == doctest::Approx(v).epsilon(1e-15));
  }
}

TEST_CASE("csv table layout") {
  CsvTable t({"a", "b"});
  t.cell(1.5).cell(2).end_row();
  CHECK(t.text() == "a,b\n1.500000000000000e+00,2\n");
  CHECK(t.rows() == 1);
  t.cell(1.0);
  CHECK_THROWS_AS(t.end_row(), std::logic_error);
}

TEST_CASE("shipped configs parse") {
  for (const char* name : {"cantilever.json", "clamped_eps1e-1.json", "clamped_eps1e-3.json", "clamped_eps1e-3_standard.json"}) {
    const RunConfig rc = load_run_config(kConfigDir / name);
    CHECK(rc.mesh().num_elements() == 8);
  }
  const RunConfig cant = load_run_config(kConfigDir / "cantilever.json");
  CHECK(cant.problem.bc.code() == "fc");
  REQUIRE(cant.problem.load.point_loads.size() == 1);
  CHECK(cant.problem.load.point_loads[0].component == Component::W);
  CHECK(cant.n_list == std::vector<int>{8, 16, 32, 64, 128, 256});
}

TEST_CASE("config errors name the offending key") {
  json j = cantilever_json();
  j["discretization"]["tau"] = 1e-5;
  CHECK(config_error(j).find("discretization.tau") != std::string::npos);

  j = cantilever_json();
  j["colour"] = "red";
  CHECK(config_error(j).find("'colour'") != std::string::npos);

  j = cantilever_json();
  j["parameters"].erase("lambda");
  CHECK(config_error(j).find("parameters.lambda") != std::string::npos);

  j = cantilever_json();
  j["parameters"]["lambda"] = 7.0;
  CHECK(config_error(j).find("parameters") != std::string::npos);

  j = cantilever_json();
  j["bc"] = "cx";
  CHECK(config_error(j).find("bc") != std::string::npos);

  j = cantilever_json();
  j["load"]["point_loads"][0]["position"] = 0.5;
  CHECK(config_error(j).find("position") != std::string::npos);

  j = cantilever_json();
  j["n_list"] = json::array({8, 4});
  CHECK(config_error(j).find("n_list") != std::string::npos);

  j = cantilever_json();
  j["load"]["f_u"] = json{{"type", "tan"}};
  CHECK(config_error(j).find("load.f_u.type") != std::string::npos);

  CHECK_THROWS_AS(load_run_config("/nonexistent/config.json"), ConfigError);
}

TEST_CASE("n-list parsing") {
  CHECK(parse_n_list("8,16,32") == std::vector<int>{8, 16, 32});
  CHECK_THROWS_AS(parse_n_list("8,x"), ConfigError);
  CHECK_THROWS_AS(parse_n_list("16,8"), ConfigError);
  CHECK_THROWS_AS(parse_n_list("0"), ConfigError);
  CHECK_THROWS_AS(parse_n_list(""), ConfigError);
}

TEST_CASE("solve writes the cantilever files with C_stab = 1") {
  const RunConfig rc = load_run_config(kConfigDir / "cantilever.json");
  CommandOptions opt;
  opt.out_dir = scratch("solve");
  std::ostringstream log;
  const auto written = cmd_solve(rc, opt, log);
  CHECK(written.size() == 4);
  const auto fields = read_csv(opt.out_dir / "solution.csv");
  CHECK(fields[0] == std::vector<std::string>{"x", "u", "w", "theta", "n", "q", "m"});
  CHECK(fields.size() == 1 + 8 * 21);
  const auto summary = read_csv(opt.out_dir / "summary.csv");
  bool found = false;
  for (const auto& row : summary)
    if (row[0] == "C_stab") {
      found = true;
      CHECK(std::stod(row[1]) == 1.0);
    }
  CHECK(found);
  for (const auto& p : written) {
    const std::string text = slurp(p);
    CHECK(text.back() == '\n');
  }
  fs::remove_all(opt.out_dir);
}

TEST_CASE("zero load writes all-zero field columns") {
  json j = cantilever_json();
  j["load"] = json::object();
  const RunConfig rc = parse_run_config(j);
  CommandOptions opt;
  opt.out_dir = scratch("zero");
  std::ostringstream log;
  cmd_solve(rc, opt, log);
  const auto rows = read_csv(opt.out_dir / "solution.csv");
  for (std::size_t r = 1; r < rows.size(); ++r)
    for (std::size_t c = 1; c < rows[r].size(); ++c) CHECK(rows[r][c] == "0.000000000000000e+00");
  fs::remove_all(opt.out_dir);
}

TEST_CASE("stability table") {
  CommandOptions opt;
  opt.out_dir = scratch("stability");
  std::ostringstream log;
  StabilityOptions st;
  cmd_stability(st, opt, log);
  const auto cf = read_csv(opt.out_dir / "stability_cf.csv");
  CHECK(cf[0] == std::vector<std::string>{"lambda", "C_n", "C_q", "C_q0", "C_stab", "regime"});
  CHECK(cf.size() == 61);
  double prev_cn = 0.0;
  for (std::size_t r = 1; r < cf.size(); ++r) {
    CHECK(std::stod(cf[r][4]) == 1.0);
    const double lam = std::stod(cf[r][0]);
    const double cn = std::stod(cf[r][1]);
    if (lam >= 1.0) CHECK(cn > prev_cn);
    prev_cn = cn;
  }
  const auto ff = read_csv(opt.out_dir / "stability_ff.csv");
  CHECK(ff[1][4] == "uncovered");
  CHECK(lambda_grid(0.1, 6.0, 0.1).size() == 60);
  fs::remove_all(opt.out_dir);
}

TEST_CASE("executable exit codes and byte-stable output") {
  const fs::path out = scratch("exe");
  const std::string cfg = (kConfigDir / "cantilever.json").string();
  CHECK(run("solve --config " + cfg + " --out " + (out / "a").string()) == 0);
  CHECK(run("solve --config " + cfg + " --out " + (out / "b").string() + " --threads 2") == 0);
  for (const char* f : {"solution.csv", "traces.csv", "indicators.csv", "summary.csv"})
    CHECK(slurp(out / "a" / f) == slurp(out / "b" / f));

  std::ofstream(out / "bad.json") << R"({"parameters": {"epsilon": 1e-4, "mu": 1, "lambda": 6}, "bc": "fc", "bogus": 1})";
  CHECK(run("solve --config " + (out / "bad.json").string() + " --out " + out.string()) == 2);
  CHECK(run("solve --config " + (out / "missing.json").string()) == 2);
  CHECK(run("solve") == 2);
  CHECK(run("converge --config " + cfg + " --n-list 8,4 --out " + out.string()) == 2);

  std::ofstream(out / "singular.json")
      << R"({"parameters": {"epsilon": 0.1, "mu": 1, "lambda": 2}, "bc": "ff", "load": {"f_w": 1}})";
  CHECK(run("oracle --config " + (out / "singular.json").string() + " --out " + out.string()) == 3);

  std::ofstream(out / "blocker") << "file in the way";
  CHECK(run("stability --out " + (out / "blocker" / "sub").string()) != 0);
  CHECK(run("stability --out " + (out / "stab").string()) == 0);
  fs::remove_all(out);
}
