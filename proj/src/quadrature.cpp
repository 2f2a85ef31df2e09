#include "vanishkit/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace vanishkit {

namespace {

Complex simpson(const ScalarFn& fn, double a, double b, std::size_t n) {
  const double h = (b - a) / static_cast<double>(n);
  // one-sided limits at the ends: pieces meet at breakpoints where the integrand may jump
  Complex s = fn(std::nextafter(a, b)) + fn(std::nextafter(b, a));
  for (std::size_t i = 1; i < n; ++i) {
    s += fn(a + h * static_cast<double>(i)) * ((i % 2 == 1) ? 4.0 : 2.0);
  }
  return s * (h / 3.0);
}

}  // namespace

QuadResult integrate(const ScalarFn& fn, double a, double b, std::span<const double> breakpoints, double tol,
                     std::size_t initial_panels, std::size_t max_panels) {
  if (!(b > a)) return {};
  std::vector<double> cuts{a};
  for (double p : breakpoints) {
    if (p > a && p < b) cuts.push_back(p);
  }
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  QuadResult total;
  const double piece_tol = tol / static_cast<double>(cuts.size() - 1);
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double lo = cuts[k];
    const double hi = cuts[k + 1];
    std::size_t n = std::max<std::size_t>(2, initial_panels + initial_panels % 2);
    Complex coarse = simpson(fn, lo, hi, n);
    for (;;) {
      n *= 2;
      const Complex fine = simpson(fn, lo, hi, n);
      const double err = std::abs(fine - coarse) / 15.0;
      if (err <= piece_tol) {
        total.value += fine;
        total.error += err;
        break;
      }
      if (n >= max_panels) {
        throw QuadratureError("quadrature did not converge on [" + std::to_string(lo) + ", " +
                              std::to_string(hi) + "], estimated error " + std::to_string(err));
      }
      coarse = fine;
    }
  }
  return total;
}

Complex gauss_legendre4(const ScalarFn& fn, double a, double b) {
  static constexpr double x1 = 0.33998104358485626480;
  static constexpr double x2 = 0.86113631159405257522;
  static constexpr double w1 = 0.65214515486254614263;
  static constexpr double w2 = 0.34785484513745385737;
  const double c = 0.5 * (a + b);
  const double r = 0.5 * (b - a);
  return r * (w1 * (fn(c - r * x1) + fn(c + r * x1)) + w2 * (fn(c - r * x2) + fn(c + r * x2)));
}

void simpson_rule(double a, double b, std::size_t panels, std::vector<double>& nodes, std::vector<double>& weights) {
  panels += panels % 2;
  nodes.resize(panels + 1);
  weights.resize(panels + 1);
  const double h = (b - a) / static_cast<double>(panels);
  for (std::size_t i = 0; i <= panels; ++i) {
    nodes[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(panels);
    weights[i] = (i == 0 || i == panels) ? h / 3.0 : ((i % 2 == 1) ? 4.0 * h / 3.0 : 2.0 * h / 3.0);
  }
}

}  // namespace vanishkit
