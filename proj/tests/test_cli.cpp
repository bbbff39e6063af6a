#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "gheat/cli.hpp"
#include "gheat/io.hpp"

using namespace gheat;
using nlohmann::json;

namespace {

int run(std::initializer_list<const char*> args) {
  std::vector<const char*> argv{"gheat"};
  argv.insert(argv.end(), args.begin(), args.end());
  return run_cli(static_cast<int>(argv.size()), argv.data());
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct TempFile {
  std::string path;
  explicit TempFile(std::string p) : path(std::move(p)) {}
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("builtin generators") {
  CHECK(builtin_graph("path-8", MeasurePolicy::Physical).size() == 8);
  CHECK(builtin_graph("lattice-window-3", MeasurePolicy::Normalized).size() == 7);
  CHECK(builtin_graph("star-3", MeasurePolicy::Physical).size() == 4);
  CHECK(builtin_graph("complete-5", MeasurePolicy::Normalized).size() == 5);
  CHECK(builtin_graph("complete-5", MeasurePolicy::Normalized).edge_count() == 10);
  CHECK_THROWS_AS(builtin_graph("blob-3", MeasurePolicy::Physical), InputError);
  CHECK_THROWS_AS(builtin_graph("path", MeasurePolicy::Physical), InputError);
  CHECK_THROWS_AS(builtin_graph("path-x", MeasurePolicy::Physical), InputError);
}

TEST_CASE("grid parsing") {
  auto lin = parse_grid("lin:0:10:11");
  REQUIRE(lin.size() == 11);
  CHECK(lin.front() == 0.0);
  CHECK(lin.back() == 10.0);

  auto log = parse_grid("log:0.01:100:5");
  REQUIRE(log.size() == 5);
  CHECK(log.front() == doctest::Approx(0.01));
  CHECK(log.back() == doctest::Approx(100.0));
  CHECK(log[2] == doctest::Approx(1.0));

  auto list = parse_grid("list:0.5,1,2");
  REQUIRE(list.size() == 3);
  CHECK(list[1] == 1.0);

  CHECK_THROWS_AS(parse_grid("log:0:1:5"), InputError);   // log needs a > 0
  CHECK_THROWS_AS(parse_grid("lin:5:1:3"), InputError);   // decreasing
  CHECK_THROWS_AS(parse_grid("list:2,1"), InputError);    // not increasing
  CHECK_THROWS_AS(parse_grid("nonsense"), InputError);
}

TEST_CASE("validate: lattice window passes, physical star fails") {
  TempFile out("cli_validate_out.json");
  RunConfig cfg;
  cfg.generator = "lattice-window-20";
  cfg.out_path = out.path;
  CHECK(cmd_validate(cfg) == kExitOk);
  json rep = json::parse(slurp(out.path));
  CHECK(rep["certificate"]["is_intrinsic"] == true);
  CHECK(rep["certificate"]["jump_size"] == 1.0);

  RunConfig star;
  star.generator = "star-3";
  star.measure = "physical";
  star.out_path = out.path;
  CHECK(cmd_validate(star) == kExitFail);
  json rep2 = json::parse(slurp(out.path));
  CHECK(rep2["certificate"]["max_ratio"] == doctest::Approx(3.0));
}

TEST_CASE("validate: malformed json file exits with the input code") {
  TempFile bad("cli_bad_graph.json");
  {
    std::ofstream f(bad.path);
    f << "{ not json";
  }
  CHECK(run({"validate", "--graph", bad.path.c_str()}) == kExitInput);
}

TEST_CASE("dgg sweep on the lattice window holds everywhere") {
  TempFile out("cli_dgg_out.jsonl");
  RunConfig cfg;
  cfg.generator = "lattice-window-10";
  cfg.t_grid = "log:0.1:10:5";
  cfg.out_path = out.path;
  cfg.workers = 2;
  CHECK(cmd_dgg(cfg) == kExitOk);

  // JSONL: each line parses; last line is the summary
  std::ifstream in(out.path);
  std::string line, last;
  size_t lines = 0;
  while (std::getline(in, line)) {
    json j = json::parse(line);
    ++lines;
    last = line;
  }
  json summary = json::parse(last);
  REQUIRE(summary.contains("summary"));
  CHECK(summary["summary"]["failures"] == 0);
  // 21 vertices: 21*22/2 unordered pairs x 5 times, plus the summary line
  CHECK(lines == 21 * 22 / 2 * 5 + 1);
}

TEST_CASE("dgg: named sets, r = 0 diagonal path, explicit lambda") {
  TempFile out("cli_dgg_sets.jsonl");
  RunConfig cfg;
  cfg.generator = "lattice-window-10";
  cfg.set_a = "0";
  cfg.set_b = "0";
  cfg.t_grid = "list:1";
  cfg.out_path = out.path;
  CHECK(cmd_dgg(cfg) == kExitOk);
  std::ifstream in(out.path);
  std::string line;
  std::getline(in, line);
  json j = json::parse(line);
  CHECK(j["r"] == 0.0);
  CHECK(j["holds"] == true);
}

TEST_CASE("dgg: a deliberately invalid lambda fails with negative slack") {
  TempFile out("cli_dgg_bad_lambda.jsonl");
  RunConfig cfg;
  cfg.generator = "lattice-window-5";
  cfg.set_a = "0";
  cfg.set_b = "1";
  cfg.t_grid = "list:1,2";
  cfg.lambda_policy = "999";
  cfg.out_path = out.path;
  CHECK(cmd_dgg(cfg) == kExitFail);
  std::ifstream in(out.path);
  std::string line;
  std::getline(in, line);
  json j = json::parse(line);
  CHECK(j["slack"].get<double>() < 0.0);
}

TEST_CASE("dgg: non-intrinsic hypothesis surfaces as exit 3") {
  CHECK(run({"dgg", "--generator", "star-3", "--measure", "physical"}) == kExitHypothesis);
}

TEST_CASE("dgg: functional trials are seeded and pass") {
  TempFile out("cli_dgg_fun.jsonl");
  RunConfig cfg;
  cfg.generator = "lattice-window-8";
  cfg.set_a = "0";
  cfg.set_b = "3";
  cfg.t_grid = "list:0.5,2";
  cfg.functional_trials = 25;
  cfg.seed = 7;
  cfg.out_path = out.path;
  CHECK(cmd_dgg(cfg) == kExitOk);
  std::string first_run = slurp(out.path);
  CHECK(cmd_dgg(cfg) == kExitOk);
  CHECK(slurp(out.path) == first_run);  // deterministic given config + seed
}

TEST_CASE("imp subcommand is monotone on a lattice subdomain") {
  TempFile out("cli_imp.jsonl");
  RunConfig cfg;
  cfg.generator = "lattice-window-10";
  cfg.set_omega = "-6,-5,-4,-3,-2,-1,0,1,2,3,4,5,6";
  cfg.set_a = "0";
  cfg.t_grid = "lin:0:20:21";
  cfg.out_path = out.path;
  CHECK(cmd_imp(cfg) == kExitOk);
  std::ifstream in(out.path);
  std::string line;
  int records = 0;
  while (std::getline(in, line)) {
    json j = json::parse(line);
    CHECK(j["nonincreasing"] == true);
    ++records;
  }
  CHECK(records == 3);  // kappa in {0.5, 1, 2}
}

TEST_CASE("zeta-table emits the r = 0 column as zero") {
  TempFile out("cli_zeta.csv");
  RunConfig cfg;
  cfg.s_param = 1.0;
  cfg.t_grid = "list:1";
  cfg.r_grid = "lin:0:5:6";
  cfg.out_path = out.path;
  CHECK(cmd_zeta_table(cfg) == kExitOk);
  std::ifstream in(out.path);
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  CHECK(row.rfind("1,0,", 0) == 0);  // t=1 row starts with zeta(1,1,0) = 0
}

TEST_CASE("spectrum on p2 physical reports eigenvalues 0 and 2") {
  TempFile out("cli_spectrum.json");
  RunConfig cfg;
  cfg.generator = "path-2";
  cfg.measure = "physical";
  cfg.out_path = out.path;
  CHECK(cmd_spectrum(cfg) == kExitOk);
  json rep = json::parse(slurp(out.path));
  CHECK(rep["lambda"].get<double>() == doctest::Approx(0.0).epsilon(1e-12));
  REQUIRE(rep["eigenvalues"].size() == 2);
  CHECK(rep["eigenvalues"][1].get<double>() == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(rep["residual_max"].get<double>() <= 1e-10);
}

TEST_CASE("spectrum decay check on a dirichlet domain") {
  TempFile out("cli_spectrum_decay.json");
  RunConfig cfg;
  cfg.generator = "path-10";
  cfg.measure = "physical";
  cfg.set_omega = "0,1,2,3,4";
  cfg.decay_check = true;
  cfg.out_path = out.path;
  CHECK(cmd_spectrum(cfg) == kExitOk);
  json rep = json::parse(slurp(out.path));
  CHECK(rep["decay"]["ok"] == true);
}

TEST_CASE("pang subcommand on a reduced grid") {
  TempFile out("cli_pang.csv");
  RunConfig cfg;
  cfg.d_min = 1;
  cfg.d_max = 6;
  cfg.t_grid = "log:0.25:16:7";
  cfg.out_path = out.path;
  CHECK(cmd_pang(cfg) == kExitOk);
  std::ifstream in(out.path);
  std::string header;
  std::getline(in, header);
  CHECK(header == "d,t,p,oracle_p,envelope_ratio,regime");
}

TEST_CASE("kernel dump writes the csv and the sidecar") {
  TempFile out("cli_kernel.csv");
  TempFile side("cli_kernel.csv.json");
  RunConfig cfg;
  cfg.generator = "path-4";
  cfg.measure = "normalized";
  cfg.t_value = 1.5;
  cfg.out_path = out.path;
  CHECK(cmd_kernel(cfg) == kExitOk);
  json sidecar = json::parse(slurp(side.path));
  CHECK(sidecar["conservation_ok"] == true);
  CHECK(sidecar["symmetry_ok"] == true);
  std::ifstream in(out.path);
  std::string header;
  std::getline(in, header);
  CHECK(header == "x,y,t,p");
}

TEST_CASE("run_cli maps errors to the exit-code contract") {
  CHECK(run({"dgg"}) == kExitInput);  // no graph at all
  CHECK(run({"validate", "--generator", "lattice-window-4"}) == kExitOk);
  CHECK(run({"validate", "--generator", "star-3", "--measure", "physical"}) == kExitFail);
}
