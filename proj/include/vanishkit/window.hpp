#pragma once

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace vanishkit {

using Complex = std::complex<double>;

/// Compact interval [lo, hi] of the real line. Both endpoints belong to the window.
struct Window {
  double lo = 0.0;
  double hi = 0.0;

  Window() = default;
  Window(double lo_, double hi_);

  double length() const { return hi - lo; }
  bool contains(double x) const { return lo <= x && x <= hi; }
  bool intersects(const Window& other) const { return lo <= other.hi && other.lo <= hi; }
  Window shifted(double t) const { return {lo + t, hi + t}; }
  Window reflected() const { return {-hi, -lo}; }
  Window widened(double eps) const { return {lo - eps, hi + eps}; }

  friend bool operator==(const Window&, const Window&) = default;
};

std::optional<Window> intersect(const Window& a, const Window& b);
Window hull(const Window& a, const Window& b);
/// Minkowski sum a + b.
Window minkowski(const Window& a, const Window& b);

struct Atom {
  double position = 0.0;
  Complex weight{0.0, 0.0};

  friend bool operator==(const Atom&, const Atom&) = default;
};

/// Sorts by position, adds weights of atoms whose positions compare equal and
/// drops atoms whose weight ends up exactly zero.
std::vector<Atom> merge_atoms(std::vector<Atom> atoms);

class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace vanishkit
