#include "vanishkit/window.hpp"

#include <algorithm>
#include <cmath>

namespace vanishkit {

Window::Window(double lo_, double hi_) : lo(lo_), hi(hi_) {
  if (std::isnan(lo) || std::isnan(hi) || lo > hi) {
    throw std::invalid_argument("window requires lo <= hi");
  }
}

std::optional<Window> intersect(const Window& a, const Window& b) {
  if (!a.intersects(b)) return std::nullopt;
  return Window{std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
}

Window hull(const Window& a, const Window& b) {
  return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
}

Window minkowski(const Window& a, const Window& b) { return {a.lo + b.lo, a.hi + b.hi}; }

std::vector<Atom> merge_atoms(std::vector<Atom> atoms) {
  std::stable_sort(atoms.begin(), atoms.end(),
                   [](const Atom& a, const Atom& b) { return a.position < b.position; });
  std::vector<Atom> out;
  out.reserve(atoms.size());
  for (const auto& a : atoms) {
    if (!out.empty() && out.back().position == a.position) {
      out.back().weight += a.weight;
    } else {
      out.push_back(a);
    }
  }
  std::erase_if(out, [](const Atom& a) { return a.weight == Complex{0.0, 0.0}; });
  return out;
}

}  // namespace vanishkit
