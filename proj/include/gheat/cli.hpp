#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gheat/graph.hpp"
#include "gheat/metric.hpp"

namespace gheat {

// Exit code contract shared by every subcommand.
inline constexpr int kExitOk = 0;          // all checks passed
inline constexpr int kExitFail = 1;        // an inequality or invariant failed
inline constexpr int kExitInput = 2;       // I/O, parse, malformed config
inline constexpr int kExitHypothesis = 3;  // theorem hypotheses violated

/// Configuration collected from the command line; every run is deterministic
/// given the config and the seed.
struct RunConfig {
  std::string graph_path;                 // --graph
  std::string generator;                  // --generator path-N|lattice-window-N|star-K|complete-K
  std::string measure = "normalized";     // --measure (builtin generators, CSV import)
  std::string metric_spec = "combinatorial";  // --metric combinatorial|default-intrinsic|explicit:<csv>
  std::string set_a, set_b, set_omega;    // comma-separated vertex ids
  std::string t_grid = "log:0.01:100:20"; // --t-grid log:a:b:n | lin:a:b:n | list:v1,v2,...
  std::string lambda_policy = "computed"; // --lambda computed|zero|<number>
  double tol = 1e-10;
  std::uint64_t seed = 12345;
  int workers = 1;
  std::string out_path = "-";

  // subcommand extras
  int functional_trials = 0;        // dgg: random functional-form trials per time point
  std::string kappas = "0.5,1,2";   // imp
  std::string f0_spec = "uniform";  // imp: uniform | delta:<id>
  int d_min = 1, d_max = 60;        // pang
  int refine = 1;                   // pang: t-grid density multiplier
  double s_param = 1.0;             // zeta-table
  std::string r_grid = "lin:0:10:11";
  double t_value = 1.0;             // kernel
  bool decay_check = false;         // spectrum
};

int run_cli(int argc, const char* const* argv);

// Pieces exposed for the test suites.
WeightedGraph load_graph(const RunConfig& cfg);
PseudoMetric load_metric(const RunConfig& cfg, const WeightedGraph& g);
std::vector<double> parse_grid(const std::string& spec);
WeightedGraph builtin_graph(const std::string& name, MeasurePolicy policy);

int cmd_validate(const RunConfig& cfg);
int cmd_dgg(const RunConfig& cfg);
int cmd_imp(const RunConfig& cfg);
int cmd_pang(const RunConfig& cfg);
int cmd_zeta_table(const RunConfig& cfg);
int cmd_spectrum(const RunConfig& cfg);
int cmd_kernel(const RunConfig& cfg);

}  // namespace gheat
