#pragma once

#include <limits>
#include <optional>
#include <string_view>
#include <vector>

#include "vanishkit/measure.hpp"
#include "vanishkit/test_function.hpp"

namespace vanishkit {

enum class Verdict { vanishing, not_vanishing, inconclusive, not_applicable };

/// "vanishing-up-to-horizon", "not-vanishing", "inconclusive", "not-applicable".
std::string_view to_string(Verdict v);

struct DecayEntry {
  double radius = 0.0;
  double sup = 0.0;
  /// sup plus the grid correction |mu|(local window) * Lip(f) * spacing.
  double upper_bound = 0.0;
};

struct DecayProfile {
  std::vector<DecayEntry> entries;
  double epsilon = 0.0;
  double annulus_step = 0.0;
  Verdict verdict = Verdict::inconclusive;
  /// Radius where the tail of entries below epsilon starts.
  std::optional<double> k_eps;
};

/// max |(mu * f)(x)| over grid points with lo <= |x| < hi; the grid has spacing at most `step`.
double annulus_sup(const MeasureExpr& mu, const TestFunction& f, double lo, double hi, double step);

/// Entry i covers radii[i] <= |x| < radii[i+1]; the last annulus has the width of the one
/// before it (or radii[0] if there is only one radius). annulus_step 0 means f.step() / 2.
///
/// Verdict: vanishing-up-to-horizon iff the last entry is below epsilon; not-vanishing if it
/// is at least epsilon and at least half of the first entry; inconclusive otherwise.
DecayProfile decay_profile(const MeasureExpr& mu, const TestFunction& f, const std::vector<double>& radii,
                           double epsilon, double annulus_step = 0.0);

/// Hats centred at 0 with half-widths 0.25, 0.125, 0.0625 followed by their autocorrelations.
std::vector<TestFunction> default_family();

struct FamilyVerdict {
  Verdict verdict = Verdict::inconclusive;
  std::vector<DecayProfile> profiles;
  /// Member whose last entry is largest.
  std::size_t worst = 0;
};

/// Decay profile of every member at radii {R/8, R/4, R/2} with grid step halfwidth/16 of the
/// member's support. Vanishing iff every member vanishes; not-vanishing if any member does.
FamilyVerdict vanishing_verdict(const MeasureExpr& mu, const std::vector<TestFunction>& family, double epsilon,
                                double r_max);

struct CoefficientReport {
  Verdict verdict = Verdict::inconclusive;
  /// Every scanned atom with |position| > radius has |weight| < epsilon.
  std::optional<double> radius;
  std::size_t scanned = 0;
  std::size_t violators = 0;
  /// The not-vanishing call rests on violators among the outermost quarter of the scan.
  bool heuristic = false;
};

CoefficientReport coefficients_vanishing(const std::vector<Atom>& atoms, double epsilon);
CoefficientReport coefficients_vanishing(const AtomSource& src, double epsilon, double r_max);
CoefficientReport coefficients_vanishing(const MeasureExpr& mu, double epsilon, double r_max);

/// Smallest distance between distinct atom positions in w; +inf with fewer than two atoms.
double min_gap(const std::vector<Atom>& atoms);
double min_gap(const AtomSource& src, const Window& w);
double min_gap(const MeasureExpr& mu, const Window& w);

struct PropCReport {
  Verdict coefficient_verdict = Verdict::not_applicable;
  Verdict decay_verdict = Verdict::not_applicable;
  double gap = 0.0;
  bool applicable = false;
  bool agree = false;
  CoefficientReport coefficients;
  DecayProfile profile;
};

/// Compares coefficient decay with convolution decay (radii {R/8, R/4, R/2}) on a uniformly
/// discrete atom source. Not applicable when the minimum gap on [-R, R] is below gap_floor.
PropCReport prop_c_crosscheck(const AtomSourcePtr& src, const TestFunction& f, double epsilon, double r_max,
                              double gap_floor, double annulus_step = 0.0);

struct MeanEntry {
  int n = 0;
  double average = 0.0;
  /// |T_h - T_2h| / 3 for the trapezoid sums at the test-function step.
  double error = 0.0;
};

struct MeanTrace {
  std::vector<MeanEntry> entries;
  double limit_estimate = 0.0;
};

/// (1/2n) int_{-n}^{n} |mu * f| by the trapezoid rule at f.step(). Throws QuadratureError when
/// the error estimate exceeds `tolerance`.
MeanTrace mean_abs(const MeasureExpr& mu, const TestFunction& f, const std::vector<int>& n_list,
                   double tolerance = 1e-6);

}  // namespace vanishkit
