#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "vanishkit/measure.hpp"
#include "vanishkit/test_function.hpp"

namespace vanishkit {

MeasureExpr delta(double x, Complex weight = 1.0);
MeasureExpr finite_atoms(std::vector<Atom> atoms);
MeasureExpr lattice_comb(double spacing = 1.0, double offset = 0.0, LatticeWeights weights = LatticeWeights::one,
                         std::uint64_t seed = 0);
MeasureExpr lebesgue();
MeasureExpr indicator_measure(double a, double b, Complex value = 1.0);
MeasureExpr triangle_measure(double center, double halfwidth, double height);

/// sum_{n=0}^{truncation} 2^-n mu_n * mu_n~ with mu_n = delta_0 + lambda|[n, n+1], written out as
/// delta_0 + lambda|[n, n+1] + lambda|[-n-1, -n] + the unit triangle on [-1, 1].
MeasureExpr sinc_series_measure(int truncation);

class UnknownExample : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// ex_a, ex_nu, ex_tent, ex_bf, ex_b, ex_sinc_series(N) (N defaults to 20), j0_radial.
MeasureExpr build_example(std::string_view name);
std::vector<std::string> example_names();

// ------------------------------------------------------------ generator

/// Family of local measures supported in k, each placed at its translate.
struct Prop51Input {
  std::vector<LocalBlock> parts;
  std::vector<double> translates;
  Window k;
  std::string translate_rule = "explicit";

  std::size_t horizon() const { return parts.size(); }
};

struct HypothesisReport {
  bool h_support = false;
  std::optional<std::size_t> support_offender;
  bool h_bounded = false;
  double bounded_sup = 0.0;
  bool h_vague_null = false;
  double worst_pairing = 0.0;
  std::vector<double> pairing_trace;  // max over probes, for each index of the last quarter
  std::size_t trace_start = 0;
  bool h_udiscrete = false;
  double min_translate_gap = 0.0;
  bool overall = false;
};

struct Prop51Options {
  double vague_tolerance = 1e-3;
  double gap_floor = 1e-3;
  /// Hypothesis (ii) fails when the largest variation over the last half of the indices
  /// exceeds this factor times the largest over the first half.
  double growth_factor = 1.1;
};

/// Hats on k at three dyadic scales (|k|/4, |k|/8, |k|/16) and five evenly spaced centers.
std::vector<TestFunction> default_probe_family(const Window& k);

/// <g, part> for a local block.
Complex pairing(const TestFunction& g, const LocalBlock& part);
/// |part|(k).
double part_variation(const LocalBlock& part, const Window& k);

HypothesisReport validate_prop51(const Prop51Input& input, const std::vector<TestFunction>& probes,
                                 const Prop51Options& options = {});
HypothesisReport validate_prop51(const Prop51Input& input, const Prop51Options& options = {});

class HypothesesViolated : public std::runtime_error {
 public:
  explicit HypothesesViolated(HypothesisReport r);
  HypothesisReport report;
};

struct Prop51Measure {
  MeasureExpr measure;
  /// Hull of the placed supports t_n + k; restrictions to windows inside it are exact.
  Window covered;
  HypothesisReport hypotheses;
};

/// sum_n T_{t_n} part_n, resolved lazily per window. Throws HypothesesViolated unless
/// validation passes or `override_hypotheses` is set.
Prop51Measure generate_prop51(const Prop51Input& input, bool override_hypotheses = false,
                              const Prop51Options& options = {});

/// t = 1, -1, 2, -2, ... (count entries).
std::vector<double> alternating_translates(std::size_t count);

Prop51Input decompose_ex_a(std::size_t pairs);
/// First part is lambda|[-1, 1] at 0, then the pairs n = 1..pairs.
Prop51Input decompose_ex_b(std::size_t pairs);
Prop51Input decompose_ex_bf(std::size_t blocks);
Prop51Input decompose_nu(std::size_t blocks);
/// delta_0 at t_n = n.
Prop51Input constant_delta_input(std::size_t count);

}  // namespace vanishkit
