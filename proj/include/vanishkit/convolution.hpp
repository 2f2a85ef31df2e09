#pragma once

#include <span>
#include <vector>

#include "vanishkit/measure.hpp"
#include "vanishkit/test_function.hpp"

namespace vanishkit {

/// Uniform grid lo + (hi - lo) * i / (points - 1); integer multiples of a dyadic
/// step land exactly on their values.
struct Grid {
  Window range;
  std::size_t points = 1;

  static Grid with_step(const Window& range, double step);
  double step() const;
  double at(std::size_t i) const;
  std::vector<double> nodes() const;
};

struct SampledFunction {
  std::vector<double> x;
  std::vector<Complex> value;
};

/// (mu * f)(x) = int f(x - t) dmu(t). Atoms contribute exact finite sums; density
/// leaves are integrated panel by panel against the linear pieces of f using their
/// first two moments.
Complex convolve(const MeasureExpr& mu, const TestFunction& f, double x);
/// Batched convolve at ascending points; each value equals convolve at that point.
std::vector<Complex> convolve_points(const MeasureExpr& mu, const TestFunction& f, std::span<const double> xs);
SampledFunction convolve_grid(const MeasureExpr& mu, const TestFunction& f, const Grid& grid);

/// |mu|(w): atom weights in the closed window plus the variation of the density part.
double variation_on(const MeasureExpr& mu, const Window& w);
/// max over the search grid of |mu|(x + k); a lower bound for ||mu||_K.
double sup_norm_K(const MeasureExpr& mu, const Window& k, const Window& search, double step);
/// max over the search grid of |(mu * g)(x)|; a lower bound for p_g(mu).
double seminorm_pg(const MeasureExpr& mu, const TestFunction& g, const Window& search, double step);

}  // namespace vanishkit
