#include "vanishkit/convolution.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "vanishkit/quadrature.hpp"

namespace vanishkit {

Grid Grid::with_step(const Window& range, double step) {
  if (!(step > 0.0)) throw std::invalid_argument("grid step must be positive");
  const double n = std::round(range.length() / step);
  return {range, static_cast<std::size_t>(n) + 1};
}

double Grid::step() const { return points > 1 ? range.length() / static_cast<double>(points - 1) : 0.0; }

double Grid::at(std::size_t i) const {
  if (points <= 1) return range.lo;
  if (i + 1 == points) return range.hi;
  return range.lo + range.length() * static_cast<double>(i) / static_cast<double>(points - 1);
}

std::vector<double> Grid::nodes() const {
  std::vector<double> xs(points);
  for (std::size_t i = 0; i < points; ++i) xs[i] = at(i);
  return xs;
}

namespace {

std::vector<Window> union_of(std::vector<Window> ws) {
  std::sort(ws.begin(), ws.end(), [](const Window& a, const Window& b) { return a.lo < b.lo; });
  std::vector<Window> out;
  for (const auto& w : ws) {
    if (!out.empty() && w.lo <= out.back().hi) {
      out.back().hi = std::max(out.back().hi, w.hi);
    } else {
      out.push_back(w);
    }
  }
  return out;
}

// rho = value + slope (s - c) on [c, e]; with y = x - s the integrand is
// f(y) (value + slope (x - c - lo) - slope (y - lo)).
Complex affine_against(const Affine& r, const TestFunction& f, double x, double c, double e) {
  const double lo = f.support().lo;
  const Complex p0 = f.primitive(x - c) - f.primitive(x - e);
  const Complex p1 = f.moment_primitive(x - c) - f.moment_primitive(x - e);
  return (r.value + r.slope * (x - c - lo)) * p0 - r.slope * p1;
}

Complex panel_against(const PlacedDensity& leaf, const TestFunction& f, double x, double c, double d);

// int f(x - s) rho(s) ds over s in [c, d], exact when the moments are.
Complex density_against(const PlacedDensity& leaf, const TestFunction& f, double x, double c, double d) {
  if (leaf.piecewise_affine()) {
    if (auto r = leaf.affine_on(c, d)) return affine_against(*r, f, x, c, d);
    auto cuts = leaf.breakpoints(Window{c, d});
    cuts.insert(cuts.begin(), c);
    cuts.push_back(d);
    Complex acc{};
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      if (!(cuts[i + 1] > cuts[i])) continue;
      if (auto r = leaf.affine_on(cuts[i], cuts[i + 1])) {
        acc += affine_against(*r, f, x, cuts[i], cuts[i + 1]);
      } else {
        acc += panel_against(leaf, f, x, cuts[i], cuts[i + 1]);
      }
    }
    return acc;
  }
  return panel_against(leaf, f, x, c, d);
}

Complex panel_against(const PlacedDensity& leaf, const TestFunction& f, double x, double c, double d) {
  const auto samples = f.samples();
  const double h = f.step();
  const double lo = f.support().lo;
  const auto last_panel = static_cast<long long>(samples.size()) - 2;
  const double ylo = x - d;
  const double yhi = x - c;
  long long j0 = static_cast<long long>(std::floor((ylo - lo) / h));
  long long j1 = static_cast<long long>(std::ceil((yhi - lo) / h)) - 1;
  j0 = std::max(0LL, j0);
  j1 = std::min(last_panel, j1);
  Complex acc{};
  for (long long j = j0; j <= j1; ++j) {
    const auto ju = static_cast<std::size_t>(j);
    const double y0 = f.node(ju);
    const double ya = std::max(ylo, y0);
    const double yb = std::min(yhi, f.node(ju + 1));
    if (!(yb > ya)) continue;
    const Complex df = samples[ju + 1] - samples[ju];
    const Complex at_yb = samples[ju] + df * ((yb - y0) / h);
    const PanelMoments m = leaf.moments(x - yb, x - ya);
    acc += at_yb * m.m0 - (df / h) * m.m1;
  }
  return acc;
}

}  // namespace

std::vector<Complex> convolve_points(const MeasureExpr& mu, const TestFunction& f, std::span<const double> xs) {
  std::vector<Complex> out(xs.size());
  if (xs.empty() || mu.is_zero()) return out;
  std::vector<std::size_t> order(xs.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  if (!std::is_sorted(xs.begin(), xs.end())) {
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });
  }
  const double xmin = xs[order.front()];
  const double xmax = xs[order.back()];
  const Window fs = f.support();
  const Window range{xmin - fs.hi, xmax - fs.lo};
  const Flattened flat = flatten(mu, range);

  const auto atoms = atoms_in(flat, range);
  struct DensityLeaf {
    const PlacedDensity* leaf;
    std::vector<Window> pieces;
  };
  std::vector<DensityLeaf> dens;
  for (const auto& d : flat.densities) {
    auto ps = union_of(d.pieces(range));
    if (!ps.empty()) dens.push_back({&d, std::move(ps)});
  }

  std::size_t first = 0;
  for (std::size_t idx : order) {
    const double x = xs[idx];
    const double slo = x - fs.hi;
    const double shi = x - fs.lo;
    Complex v{};
    while (first < atoms.size() && atoms[first].position < slo) ++first;
    for (std::size_t k = first; k < atoms.size() && atoms[k].position <= shi; ++k) {
      v += atoms[k].weight * f(x - atoms[k].position);
    }
    for (const auto& d : dens) {
      auto it = std::lower_bound(d.pieces.begin(), d.pieces.end(), slo,
                                 [](const Window& p, double s) { return p.hi < s; });
      for (; it != d.pieces.end() && it->lo <= shi; ++it) {
        const double c = std::max(slo, it->lo);
        const double e = std::min(shi, it->hi);
        if (e > c) v += density_against(*d.leaf, f, x, c, e);
      }
    }
    out[idx] = v;
  }
  return out;
}

Complex convolve(const MeasureExpr& mu, const TestFunction& f, double x) {
  const double xs[1] = {x};
  return convolve_points(mu, f, xs).front();
}

SampledFunction convolve_grid(const MeasureExpr& mu, const TestFunction& f, const Grid& grid) {
  SampledFunction s;
  s.x = grid.nodes();
  s.value = convolve_points(mu, f, s.x);
  return s;
}

double variation_on(const MeasureExpr& mu, const Window& w) {
  const Flattened flat = flatten(mu, w);
  double total = 0.0;
  for (const auto& a : atoms_in(flat, w)) total += std::abs(a.weight);

  std::vector<const PlacedDensity*> live;
  std::vector<std::vector<Window>> covers;
  for (const auto& d : flat.densities) {
    auto ps = union_of(d.pieces(w));
    if (ps.empty()) continue;
    live.push_back(&d);
    covers.push_back(std::move(ps));
  }
  if (live.empty()) return total;

  bool additive = std::all_of(live.begin(), live.end(), [](const PlacedDensity* d) { return d->nonnegative(); });
  if (!additive) {
    // pairwise disjoint covers also make |sum| = sum of |.|
    std::vector<std::pair<Window, std::size_t>> tagged;
    for (std::size_t i = 0; i < covers.size(); ++i) {
      for (const auto& p : covers[i]) tagged.emplace_back(p, i);
    }
    std::sort(tagged.begin(), tagged.end(), [](const auto& a, const auto& b) { return a.first.lo < b.first.lo; });
    additive = true;
    double reach = -std::numeric_limits<double>::infinity();
    std::size_t owner = 0;
    for (const auto& [p, i] : tagged) {
      if (p.lo < reach && i != owner) {
        additive = false;
        break;
      }
      if (p.hi > reach) {
        reach = p.hi;
        owner = i;
      }
    }
  }
  if (additive) {
    for (std::size_t i = 0; i < live.size(); ++i) {
      for (const auto& p : covers[i]) total += live[i]->abs_mass(p.lo, p.hi);
    }
    return total;
  }

  std::vector<double> cuts;
  for (std::size_t i = 0; i < live.size(); ++i) {
    for (const auto& p : covers[i]) {
      cuts.push_back(p.lo);
      cuts.push_back(p.hi);
    }
    auto b = live[i]->breakpoints(w);
    cuts.insert(cuts.end(), b.begin(), b.end());
  }
  const ScalarFn density = [&](double s) {
    Complex v{};
    for (const auto* d : live) v += d->eval(s);
    return Complex{std::abs(v), 0.0};
  };
  return total + integrate(density, w.lo, w.hi, cuts, 1e-10 * std::max(1.0, w.length())).value.real();
}

double sup_norm_K(const MeasureExpr& mu, const Window& k, const Window& search, double step) {
  const Grid g = Grid::with_step(search, step);
  double best = 0.0;
  for (std::size_t i = 0; i < g.points; ++i) best = std::max(best, variation_on(mu, k.shifted(g.at(i))));
  return best;
}

double seminorm_pg(const MeasureExpr& mu, const TestFunction& g, const Window& search, double step) {
  const auto s = convolve_grid(mu, g, Grid::with_step(search, step));
  double best = 0.0;
  for (const auto& v : s.value) best = std::max(best, std::abs(v));
  return best;
}

}  // namespace vanishkit
