#include "vanishkit/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "vanishkit/convolution.hpp"

namespace vanishkit {

namespace {

constexpr std::size_t kChunk = std::size_t{1} << 16;

struct SideGrid {
  double lo, hi;
  std::size_t m;
  double spacing() const { return (hi - lo) / static_cast<double>(m); }
  double at(std::size_t j) const { return lo + (hi - lo) * static_cast<double>(j) / static_cast<double>(m); }
};

SideGrid side_grid(double lo, double hi, double step) {
  const double len = hi - lo;
  std::size_t m = static_cast<std::size_t>(std::ceil(len / step - 1e-9));
  return {lo, hi, std::max<std::size_t>(m, 1)};
}

// Largest |mu|(x - supp f, widened by the spacing) for x in the annulus lo <= |x| < hi.
double local_norm_bound(const MeasureExpr& mu, const TestFunction& f, double lo, double hi, double spacing) {
  const Window fs = f.support();
  const double diam = fs.length();
  const double cell = std::max(diam, (hi - lo) / 10000.0);
  const double reach = cell + diam + 2.0 * spacing;
  double best = 0.0;
  for (double sign : {1.0, -1.0}) {
    // x in [lo, hi] (or its mirror); the atoms that matter lie in [x - fs.hi, x - fs.lo]
    const double a0 = sign > 0 ? lo - fs.hi - spacing : -hi - fs.hi - spacing;
    const double a1 = sign > 0 ? hi - fs.hi : -lo - fs.hi;
    for (double a = a0; a <= a1; a += cell) best = std::max(best, variation_on(mu, Window{a, a + reach}));
  }
  return best;
}

Verdict profile_verdict(const std::vector<DecayEntry>& e, double eps) {
  if (e.empty()) return Verdict::inconclusive;
  const double last = e.back().sup;
  if (last < eps) return Verdict::vanishing;
  if (last >= 0.5 * e.front().sup) return Verdict::not_vanishing;
  return Verdict::inconclusive;
}

}  // namespace

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::vanishing: return "vanishing-up-to-horizon";
    case Verdict::not_vanishing: return "not-vanishing";
    case Verdict::inconclusive: return "inconclusive";
    case Verdict::not_applicable: return "not-applicable";
  }
  return "inconclusive";
}

double annulus_sup(const MeasureExpr& mu, const TestFunction& f, double lo, double hi, double step) {
  if (!(step > 0.0)) throw std::invalid_argument("annulus step must be positive");
  if (!(lo >= 0.0 && hi > lo)) throw std::invalid_argument("annulus needs 0 <= lo < hi");
  const SideGrid g = side_grid(lo, hi, step);
  double best = 0.0;
  std::vector<double> xs;
  for (std::size_t start = 0; start < g.m; start += kChunk) {
    const std::size_t end = std::min(g.m, start + kChunk);
    xs.resize(end - start);
    for (std::size_t j = start; j < end; ++j) xs[j - start] = g.at(j);
    for (const auto& v : convolve_points(mu, f, xs)) best = std::max(best, std::abs(v));
    // mirror side, ascending
    for (std::size_t j = start; j < end; ++j) xs[end - 1 - j] = -g.at(j);
    for (const auto& v : convolve_points(mu, f, xs)) best = std::max(best, std::abs(v));
  }
  return best;
}

DecayProfile decay_profile(const MeasureExpr& mu, const TestFunction& f, const std::vector<double>& radii,
                           double epsilon, double annulus_step) {
  if (radii.empty()) throw std::invalid_argument("decay_profile: no radii");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] >= 0.0) || !std::isfinite(radii[i]) || (i > 0 && !(radii[i] > radii[i - 1]))) {
      throw std::invalid_argument("decay_profile: radii must be finite, nonnegative and strictly increasing");
    }
  }
  if (annulus_step < 0.0) throw std::invalid_argument("decay_profile: annulus step must be positive");
  DecayProfile p;
  p.epsilon = epsilon;
  p.annulus_step = annulus_step > 0.0 ? annulus_step : f.step() / 2.0;
  const double lip = f.lipschitz();
  for (std::size_t i = 0; i < radii.size(); ++i) {
    const double lo = radii[i];
    double hi;
    if (i + 1 < radii.size()) {
      hi = radii[i + 1];
    } else {
      const double width = radii.size() > 1 ? radii[i] - radii[i - 1] : std::max(radii[0], 1.0);
      hi = lo + width;
    }
    DecayEntry e;
    e.radius = lo;
    e.sup = annulus_sup(mu, f, lo, hi, p.annulus_step);
    const double spacing = side_grid(lo, hi, p.annulus_step).spacing();
    e.upper_bound = e.sup + local_norm_bound(mu, f, lo, hi, spacing) * lip * spacing;
    p.entries.push_back(e);
  }
  p.verdict = profile_verdict(p.entries, epsilon);
  if (p.verdict == Verdict::vanishing) {
    std::size_t start = p.entries.size();
    while (start > 0 && p.entries[start - 1].sup < epsilon) --start;
    p.k_eps = p.entries[start].radius;
  }
  return p;
}

std::vector<TestFunction> default_family() {
  std::vector<TestFunction> out;
  for (double hw : {0.25, 0.125, 0.0625}) out.push_back(tf_hat(0.0, hw, 1.0));
  for (std::size_t i = 0; i < 3; ++i) out.push_back(tf_autocorrelation(out[i]));
  return out;
}

FamilyVerdict vanishing_verdict(const MeasureExpr& mu, const std::vector<TestFunction>& family, double epsilon,
                                double r_max) {
  if (family.empty()) throw std::invalid_argument("vanishing_verdict: empty family");
  if (!(r_max > 0.0)) throw std::invalid_argument("vanishing_verdict: R_max must be positive");
  FamilyVerdict out;
  const std::vector<double> radii{r_max / 8.0, r_max / 4.0, r_max / 2.0};
  bool all_vanish = true;
  bool any_not = false;
  double worst = -1.0;
  for (std::size_t i = 0; i < family.size(); ++i) {
    const auto& f = family[i];
    auto p = decay_profile(mu, f, radii, epsilon, f.support().length() / 32.0);
    all_vanish = all_vanish && p.verdict == Verdict::vanishing;
    any_not = any_not || p.verdict == Verdict::not_vanishing;
    if (p.entries.back().sup > worst) {
      worst = p.entries.back().sup;
      out.worst = i;
    }
    out.profiles.push_back(std::move(p));
  }
  out.verdict = all_vanish ? Verdict::vanishing : any_not ? Verdict::not_vanishing : Verdict::inconclusive;
  return out;
}

CoefficientReport coefficients_vanishing(const std::vector<Atom>& atoms, double epsilon) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("coefficients_vanishing: epsilon must be positive");
  CoefficientReport r;
  r.scanned = atoms.size();
  std::vector<Atom> sorted = atoms;
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const Atom& a, const Atom& b) { return std::abs(a.position) < std::abs(b.position); });
  const std::size_t quarter = (sorted.size() + 3) / 4;
  double radius = 0.0;
  bool outer_violation = false;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (std::abs(sorted[i].weight) < epsilon) continue;
    ++r.violators;
    radius = std::max(radius, std::abs(sorted[i].position));
    if (i >= sorted.size() - quarter) outer_violation = true;
  }
  if (outer_violation) {
    r.verdict = Verdict::not_vanishing;
    r.heuristic = true;
  } else {
    r.verdict = Verdict::vanishing;
    r.radius = radius;
  }
  return r;
}

CoefficientReport coefficients_vanishing(const AtomSource& src, double epsilon, double r_max) {
  return coefficients_vanishing(src.enumerate(Window{-r_max, r_max}), epsilon);
}

CoefficientReport coefficients_vanishing(const MeasureExpr& mu, double epsilon, double r_max) {
  return coefficients_vanishing(atoms_in(mu, Window{-r_max, r_max}), epsilon);
}

double min_gap(const std::vector<Atom>& atoms) {
  std::vector<double> pos;
  pos.reserve(atoms.size());
  for (const auto& a : atoms) pos.push_back(a.position);
  std::sort(pos.begin(), pos.end());
  pos.erase(std::unique(pos.begin(), pos.end()), pos.end());
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < pos.size(); ++i) gap = std::min(gap, pos[i] - pos[i - 1]);
  return gap;
}

double min_gap(const AtomSource& src, const Window& w) { return min_gap(src.enumerate(w)); }
double min_gap(const MeasureExpr& mu, const Window& w) { return min_gap(atoms_in(mu, w)); }

PropCReport prop_c_crosscheck(const AtomSourcePtr& src, const TestFunction& f, double epsilon, double r_max,
                              double gap_floor, double annulus_step) {
  if (!src) throw std::invalid_argument("prop_c_crosscheck: null source");
  if (!(gap_floor > 0.0)) throw std::invalid_argument("prop_c_crosscheck: gap floor must be positive");
  PropCReport r;
  r.gap = min_gap(*src, Window{-r_max, r_max});
  if (r.gap < gap_floor) return r;
  r.applicable = true;
  r.coefficients = coefficients_vanishing(*src, epsilon, r_max);
  r.coefficient_verdict = r.coefficients.verdict;
  const double step = annulus_step > 0.0 ? annulus_step : f.support().length() / 256.0;
  r.profile = decay_profile(MeasureExpr::pure_point(src), f, {r_max / 8.0, r_max / 4.0, r_max / 2.0}, epsilon, step);
  r.decay_verdict = r.profile.verdict;
  r.agree = r.coefficient_verdict == r.decay_verdict;
  return r;
}

MeanTrace mean_abs(const MeasureExpr& mu, const TestFunction& f, const std::vector<int>& n_list, double tolerance) {
  MeanTrace t;
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    if (n_list[i] <= 0 || (i > 0 && n_list[i] <= n_list[i - 1])) {
      throw std::invalid_argument("mean_abs: n list must be positive and strictly increasing");
    }
  }
  for (int n : n_list) {
    const double len = 2.0 * n;
    std::size_t m = static_cast<std::size_t>(std::ceil(len / f.step() - 1e-9));
    m += m % 2;
    const double h = len / static_cast<double>(m);
    double fine = 0.0;
    double coarse = 0.0;
    std::vector<double> xs;
    for (std::size_t start = 0; start <= m; start += kChunk) {
      const std::size_t end = std::min(m + 1, start + kChunk);
      xs.resize(end - start);
      for (std::size_t j = start; j < end; ++j) {
        xs[j - start] = -static_cast<double>(n) + len * static_cast<double>(j) / static_cast<double>(m);
      }
      const auto vs = convolve_points(mu, f, xs);
      for (std::size_t j = start; j < end; ++j) {
        const double a = std::abs(vs[j - start]);
        const double w = (j == 0 || j == m) ? 0.5 : 1.0;
        fine += w * a;
        if (j % 2 == 0) coarse += w * a;
      }
    }
    fine *= h;
    coarse *= 2.0 * h;
    MeanEntry e;
    e.n = n;
    e.average = fine / len;
    e.error = std::abs(fine - coarse) / 3.0 / len;
    if (e.error > tolerance) {
      throw QuadratureError("mean_abs: trapezoid error estimate " + std::to_string(e.error) + " exceeds tolerance at n = " +
                            std::to_string(n));
    }
    t.entries.push_back(e);
  }
  if (!t.entries.empty()) t.limit_estimate = t.entries.back().average;
  return t;
}

}  // namespace vanishkit
