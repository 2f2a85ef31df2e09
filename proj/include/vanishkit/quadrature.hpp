#pragma once

#include <functional>
#include <span>

#include "vanishkit/window.hpp"

namespace vanishkit {

using ScalarFn = std::function<Complex(double)>;

struct QuadResult {
  Complex value;
  double error = 0.0;  // refinement-based estimate
};

/// Composite Simpson over [a, b], split at the given breakpoints, doubling the
/// panel count until two successive refinements agree within `tol`. Throws
/// QuadratureError if `max_panels` per piece is reached first.
QuadResult integrate(const ScalarFn& fn, double a, double b, std::span<const double> breakpoints = {},
                     double tol = 1e-10, std::size_t initial_panels = 8, std::size_t max_panels = 1u << 20);

/// Four-point Gauss-Legendre rule on [a, b].
Complex gauss_legendre4(const ScalarFn& fn, double a, double b);

/// Weights and nodes of composite Simpson with `panels` (even) subintervals on [a, b].
void simpson_rule(double a, double b, std::size_t panels, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace vanishkit
