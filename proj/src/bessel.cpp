#include "vanishkit/bessel.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace vanishkit {

namespace {

constexpr double series_limit = 16.0;

double j0_series(double x) {
  // sum (-1)^m (x/2)^{2m} / (m!)^2; the largest term near x = 16 is ~2e5, so the
  // 64-bit mantissa of long double keeps the cancellation error near 1e-14.
  const long double q = -static_cast<long double>(x) * x / 4.0L;
  long double term = 1.0L;
  long double sum = 1.0L;
  for (int m = 1; m < 200; ++m) {
    term *= q / (static_cast<long double>(m) * m);
    sum += term;
    if (std::fabs(term) < 1e-22L * std::fabs(sum) && m > 4) break;
  }
  return static_cast<double>(sum);
}

double j0_hankel(double x) {
  // J0(x) = sqrt(2/(pi x)) (P cos(x - pi/4) - Q sin(x - pi/4)), with
  // a_k = prod_{j<=k} (2j-1)^2 / (k! 8^k) and P, Q the even/odd alternating parts.
  double p = 0.0, q = 0.0;
  double term = 1.0;
  double last = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 200; ++k) {
    if (std::fabs(term) > last) break;  // asymptotic series starts to diverge
    last = std::fabs(term);
    switch (k % 4) {
      case 0: p += term; break;
      case 1: q -= term; break;
      case 2: p -= term; break;
      case 3: q += term; break;
    }
    if (std::fabs(term) < 1e-17) break;
    const double odd = 2.0 * k + 1.0;
    term *= odd * odd / (8.0 * (k + 1) * x);
  }
  const double phase = x - std::numbers::pi / 4.0;
  return std::sqrt(2.0 / (std::numbers::pi * x)) * (p * std::cos(phase) - q * std::sin(phase));
}

}  // namespace

double bessel_j0(double x) {
  x = std::fabs(x);
  return x <= series_limit ? j0_series(x) : j0_hankel(x);
}

}  // namespace vanishkit
