#pragma once

namespace vanishkit {

/// Bessel function of the first kind of order zero. Power series (in extended
/// precision) for |x| <= 16, Hankel asymptotic expansion beyond, truncated at its
/// smallest term. Absolute error below 1e-13 on the real line.
double bessel_j0(double x);

}  // namespace vanishkit
