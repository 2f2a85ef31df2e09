#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "vanishkit/analysis.hpp"
#include "vanishkit/measure.hpp"
#include "vanishkit/quadrature.hpp"
#include "vanishkit/test_function.hpp"

namespace vanishkit {

/// sin(u)/u with sinc(0) = 1.
double sinc(double u);

enum class Direction { forward, inverse };

/// sum w e^{-2 pi i k t} over the atoms.
Complex exp_sum(const std::vector<Atom>& atoms, double k);

/// int g(s) e^{-+2 pi i k s} ds, exact for the piecewise-linear g:
/// h sinc^2(pi k h) sum_i g_i e^{-+2 pi i k x_i}.
Complex ft_compact(const TestFunction& g, double k, Direction dir = Direction::forward);
/// Same transform for a density with declared compact support, by adaptive Simpson.
/// Throws std::invalid_argument without a support and QuadratureError if it does not converge.
QuadResult ft_compact(const DensitySource& g, double k, Direction dir = Direction::forward, double tol = 1e-8);

/// 1 + 2 cos(pi x (2n+1)) sinc(pi x) + sinc^2(pi x).
double sinc_autocorr_density(int n, double x);
/// sum_{n=0}^{N} 2^-n sinc_autocorr_density(n, x).
double series_density(double x, int truncation);
/// Pointwise bound 2^{2-N} on the omitted terms n > N.
double series_tail_bound(int truncation);

struct BesselCheck {
  double lhs = 0.0;  // 2 pi J0(2 pi r)
  double rhs = 0.0;  // int_0^{2 pi} cos(2 pi r cos t) dt, periodic trapezoid
};

BesselCheck bessel_j0_check(double r, int quad_points = 512);

struct SpectralDensity {
  std::function<Complex(double)> eval;
  std::string descriptor;
  std::optional<int> truncation;
  /// sup |eval|, used for the frequency cutoff.
  double sup = 1.0;
  /// Bound on |true density - eval| pointwise (nonzero for truncated series).
  double tail = 0.0;
  bool nonnegative = false;
};

SpectralDensity series_spectral_density(int truncation);
SpectralDensity constant_spectral_density(double c = 1.0);
/// sinc^2(pi k), the transform of the unit triangle on [-1, 1].
SpectralDensity sinc2_spectral_density();

/// The density k -> eval(k) as an absolutely continuous measure.
MeasureExpr spectral_measure(const SpectralDensity& d);

class TruncationTailTooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RLReport {
  std::vector<double> x;
  std::vector<Complex> direct;
  std::vector<Complex> spectral;
  double max_deviation = 0.0;
  /// Frequency cutoff and the bound on the discarded tail.
  double cutoff = 0.0;
  double cutoff_tail = 0.0;
  double truncation_tail = 0.0;
  std::size_t panels = 0;
};

/// Direct side (mu * g)(x) with g = f * f~; spectral side int_{-K}^{K} density(k) |f^(k)|^2 e^{2 pi i k x} dk
/// with K chosen so the tail is below tolerance / 10. Throws TruncationTailTooLarge when the
/// density's own truncation error, integrated against |f^|^2, exceeds the tolerance.
RLReport rl_crosscheck(const MeasureExpr& mu, const SpectralDensity& density, const TestFunction& f,
                       const std::vector<double>& xs, double tolerance = 1e-4);

/// Decay profile of |mu * (f * f~)|.
DecayProfile rajchman_check(const MeasureExpr& mu, const TestFunction& f, const std::vector<double>& radii,
                            double epsilon = 0.05, double annulus_step = 0.0);

}  // namespace vanishkit
