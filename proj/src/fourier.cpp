#include "vanishkit/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "vanishkit/bessel.hpp"
#include "vanishkit/convolution.hpp"

namespace vanishkit {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::size_t kResync = 64;

Complex unit(double phase) { return {std::cos(phase), std::sin(phase)}; }

// sum_j c_j e^{i w (x0 + j dx)} with a rotation recurrence resynchronised every kResync terms.
template <typename Coef>
Complex rotating_sum(std::size_t n, double w, double x0, double dx, Coef&& coef) {
  Complex acc{};
  Complex rot = unit(w * dx);
  Complex e{};
  for (std::size_t j = 0; j < n; ++j) {
    if (j % kResync == 0) {
      e = unit(w * (x0 + dx * static_cast<double>(j)));
    } else {
      e *= rot;
    }
    acc += coef(j) * e;
  }
  return acc;
}

double l2_norm_squared(const TestFunction& f) {
  const auto s = f.samples();
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    const double h = f.node(i + 1) - f.node(i);
    acc += h * (std::norm(s[i]) + (s[i] * std::conj(s[i + 1])).real() + std::norm(s[i + 1])) / 3.0;
  }
  return acc;
}

}  // namespace

double sinc(double u) {
  if (std::abs(u) < 1e-5) {
    const double u2 = u * u;
    return 1.0 - u2 / 6.0 + u2 * u2 / 120.0;
  }
  return std::sin(u) / u;
}

Complex exp_sum(const std::vector<Atom>& atoms, double k) {
  Complex acc{};
  for (const auto& a : atoms) acc += a.weight * unit(-2.0 * kPi * k * a.position);
  return acc;
}

Complex ft_compact(const TestFunction& g, double k, Direction dir) {
  const double w = (dir == Direction::forward ? -2.0 : 2.0) * kPi * k;
  const double h = g.step();
  const auto s = g.samples();
  // samples sit at lo + i * h except the last, which is exactly hi; both ends are zero
  const Complex sum = rotating_sum(s.size() - 1, w, g.support().lo, h, [&](std::size_t j) { return s[j]; });
  const double sk = sinc(kPi * k * h);
  return h * sk * sk * sum;
}

QuadResult ft_compact(const DensitySource& g, double k, Direction dir, double tol) {
  const auto support = g.support();
  if (!support || std::isinf(support->lo) || std::isinf(support->hi)) {
    throw std::invalid_argument("ft_compact: density needs a compact support");
  }
  const double w = (dir == Direction::forward ? -2.0 : 2.0) * kPi * k;
  const auto bps = g.breakpoints(*support);
  const ScalarFn fn = [&](double s) { return g.eval(s) * unit(w * s); };
  return integrate(fn, support->lo, support->hi, bps, tol);
}

double sinc_autocorr_density(int n, double x) {
  const double s = sinc(kPi * x);
  return 1.0 + 2.0 * std::cos(kPi * x * (2.0 * n + 1.0)) * s + s * s;
}

double series_density(double x, int truncation) {
  if (truncation < 0) throw std::invalid_argument("series_density: truncation must be >= 0");
  double acc = 0.0;
  for (int n = 0; n <= truncation; ++n) acc += std::ldexp(sinc_autocorr_density(n, x), -n);
  return acc;
}

double series_tail_bound(int truncation) { return std::ldexp(1.0, 2 - truncation); }

BesselCheck bessel_j0_check(double r, int quad_points) {
  if (!(r >= 0.0)) throw std::invalid_argument("bessel_j0_check: r must be >= 0");
  if (quad_points < 64) throw std::invalid_argument("bessel_j0_check: need at least 64 quadrature points");
  BesselCheck c;
  c.lhs = 2.0 * kPi * bessel_j0(2.0 * kPi * r);
  double acc = 0.0;
  for (int j = 0; j < quad_points; ++j) {
    const double t = 2.0 * kPi * j / quad_points;
    acc += std::cos(2.0 * kPi * r * std::cos(t));
  }
  c.rhs = acc * 2.0 * kPi / quad_points;
  return c;
}

SpectralDensity series_spectral_density(int truncation) {
  if (truncation < 0) throw std::invalid_argument("series density truncation must be >= 0");
  SpectralDensity d;
  d.eval = [truncation](double k) { return Complex{series_density(k, truncation)}; };
  d.descriptor = "series_density(N=" + std::to_string(truncation) + ")";
  d.truncation = truncation;
  d.sup = 8.0;
  d.tail = series_tail_bound(truncation);
  d.nonnegative = true;
  return d;
}

SpectralDensity constant_spectral_density(double c) {
  SpectralDensity d;
  d.eval = [c](double) { return Complex{c}; };
  d.descriptor = "constant(" + std::to_string(c) + ")";
  d.sup = std::abs(c);
  d.nonnegative = c >= 0.0;
  return d;
}

SpectralDensity sinc2_spectral_density() {
  SpectralDensity d;
  d.eval = [](double k) {
    const double s = sinc(kPi * k);
    return Complex{s * s};
  };
  d.descriptor = "sinc^2";
  d.sup = 1.0;
  d.nonnegative = true;
  return d;
}

MeasureExpr spectral_measure(const SpectralDensity& d) {
  return MeasureExpr::abs_cont(
      std::make_shared<FunctionDensity>(d.eval, d.sup, "spectral:" + d.descriptor, std::nullopt, d.nonnegative));
}

RLReport rl_crosscheck(const MeasureExpr& mu, const SpectralDensity& density, const TestFunction& f,
                       const std::vector<double>& xs, double tolerance) {
  if (!(tolerance > 0.0)) throw std::invalid_argument("rl_crosscheck: tolerance must be positive");
  if (!density.eval) throw std::invalid_argument("rl_crosscheck: density has no evaluator");
  RLReport r;
  r.x = xs;
  r.truncation_tail = density.tail * l2_norm_squared(f);
  if (r.truncation_tail > tolerance) {
    throw TruncationTailTooLarge("density truncation tail " + std::to_string(r.truncation_tail) +
                                 " exceeds tolerance " + std::to_string(tolerance));
  }
  // |f^(k)| <= V / (2 pi k)^2, so the two tails together are at most sup V^2 / (24 pi^4 K^3)
  const double v = f.derivative_variation();
  const double pi4 = kPi * kPi * kPi * kPi;
  const double budget = tolerance / 10.0;
  r.cutoff = std::max(1.0, std::cbrt(density.sup * v * v / (24.0 * pi4 * budget)));
  if (r.cutoff > 2000.0) throw TruncationTailTooLarge("frequency cutoff above 2000; use a smoother test function");
  r.cutoff_tail = density.sup * v * v / (24.0 * pi4 * r.cutoff * r.cutoff * r.cutoff);

  const TestFunction g = tf_autocorrelation(f);
  std::vector<double> sorted = xs;
  std::sort(sorted.begin(), sorted.end());
  const auto direct_sorted = convolve_points(mu, g, sorted);
  r.direct.resize(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const auto pos = std::lower_bound(sorted.begin(), sorted.end(), xs[i]) - sorted.begin();
    r.direct[i] = direct_sorted[static_cast<std::size_t>(pos)];
  }

  const double kmax = r.cutoff;
  std::size_t panels = static_cast<std::size_t>(std::ceil(2.0 * kmax * 8.0));
  panels += panels % 2;
  std::vector<Complex> previous;
  std::vector<double> nodes, weights;
  for (; panels <= (std::size_t{1} << 20); panels *= 2) {
    simpson_rule(-kmax, kmax, panels, nodes, weights);
    std::vector<Complex> wk(nodes.size());
    for (std::size_t j = 0; j < nodes.size(); ++j) {
      wk[j] = weights[j] * density.eval(nodes[j]) * std::norm(ft_compact(f, nodes[j]));
    }
    const double dk = 2.0 * kmax / static_cast<double>(panels);
    std::vector<Complex> current(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
      current[i] = rotating_sum(wk.size(), 2.0 * kPi * xs[i], -kmax, dk, [&](std::size_t j) { return wk[j]; });
    }
    if (!previous.empty()) {
      double change = 0.0;
      for (std::size_t i = 0; i < xs.size(); ++i) change = std::max(change, std::abs(current[i] - previous[i]));
      if (change < budget) {
        r.spectral = std::move(current);
        r.panels = panels;
        break;
      }
    }
    previous = std::move(current);
  }
  if (r.spectral.size() != xs.size()) throw QuadratureError("rl_crosscheck: frequency quadrature did not converge");
  for (std::size_t i = 0; i < xs.size(); ++i) {
    r.max_deviation = std::max(r.max_deviation, std::abs(r.direct[i] - r.spectral[i]));
  }
  return r;
}

DecayProfile rajchman_check(const MeasureExpr& mu, const TestFunction& f, const std::vector<double>& radii,
                            double epsilon, double annulus_step) {
  return decay_profile(mu, tf_autocorrelation(f), radii, epsilon, annulus_step);
}

}  // namespace vanishkit
