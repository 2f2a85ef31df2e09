#pragma once

// Reference computations written straight from the defining formulas, sharing no code
// with the library beyond the Atom and Complex types.

#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <vector>

#include "vanishkit/window.hpp"

namespace oracle {

using vanishkit::Atom;
using vanishkit::Complex;

inline double hat(double center, double hw, double height, double x) {
  const double d = std::abs(x - center);
  return d < hw ? height * (1.0 - d / hw) : 0.0;
}

inline std::vector<Atom> from_map(const std::map<double, Complex>& m) {
  std::vector<Atom> out;
  for (const auto& [p, w] : m) {
    if (w != Complex{}) out.push_back({p, w});
  }
  return out;
}

// sum over n != 0 of delta_{n + 1/n} - delta_n, restricted to [lo, hi].
inline std::vector<Atom> ex_a(double lo, double hi) {
  std::map<double, Complex> m;
  const long long reach = static_cast<long long>(std::max(std::abs(lo), std::abs(hi))) + 3;
  for (long long n = -reach; n <= reach; ++n) {
    if (n == 0) continue;
    const double dn = static_cast<double>(n);
    const double p = dn + 1.0 / dn;
    if (p >= lo && p <= hi) m[p] += 1.0;
    if (dn >= lo && dn <= hi) m[dn] -= 1.0;
  }
  return from_map(m);
}

// sum over n >= 1, 0 <= k < n of (1/n) delta_{n + k/n}.
inline std::vector<Atom> ex_nu(double lo, double hi) {
  std::map<double, Complex> m;
  for (long long n = std::max(1LL, static_cast<long long>(std::floor(lo)) - 1); n <= static_cast<long long>(hi) + 1;
       ++n) {
    const double dn = static_cast<double>(n);
    for (long long k = 0; k < n; ++k) {
      const double p = dn + static_cast<double>(k) / dn;
      if (p >= lo && p <= hi) m[p] += 1.0 / dn;
    }
  }
  return from_map(m);
}

inline Complex atom_convolve(const std::vector<Atom>& atoms, const std::function<double(double)>& f, double x) {
  Complex v{};
  for (const auto& a : atoms) v += a.weight * f(x - a.position);
  return v;
}

// Composite trapezoid with n panels.
inline Complex trapezoid(const std::function<Complex(double)>& g, double a, double b, long n) {
  const double h = (b - a) / static_cast<double>(n);
  Complex s = 0.5 * (g(a) + g(b));
  for (long i = 1; i < n; ++i) s += g(a + h * static_cast<double>(i));
  return s * h;
}

}  // namespace oracle
