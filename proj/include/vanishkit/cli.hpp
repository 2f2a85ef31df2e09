#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace vanishkit {

struct TestFunctionConfig {
  std::string shape = "hat";  // hat | indicator (the indicator covers center +- halfwidth)
  double center = 0.0;
  double halfwidth = 0.25;
  double height = 1.0;
  double step = 0.0;  // 0: halfwidth / 1024
};

struct RunConfig {
  std::string command;
  /// Inline JSON, a path to a JSON file, or an example name.
  std::string measure_spec;
  TestFunctionConfig f;
  std::vector<double> radii;
  std::vector<double> grid;  // lo, hi, step
  std::vector<int> n_list;
  double epsilon = 0.05;
  double r_max = 1000.0;
  double annulus_step = 0.0;
  std::optional<double> tolerance;
  int truncation = 20;
  std::string mode;     // fourier: series | exp_sum | ft; rlcheck: series | constant | sinc2
  std::string out;      // empty: standard output
  std::string format = "csv";
  int quad_points = 512;
  double gap_floor = 0.05;
  std::size_t count = 0;  // prop51 decomposition size
  bool override_hypotheses = false;
  bool verdict = false;   // prop51: also run the family verdict on the generated measure
  std::optional<unsigned long long> seed;
};

/// Exit status: 0 success, 1 usage or input error, 2 a check ran and failed.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv (subcommand first) and calls run.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace vanishkit
