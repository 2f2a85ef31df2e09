#include "vanishkit/sources.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "vanishkit/bessel.hpp"
#include "vanishkit/quadrature.hpp"

namespace vanishkit {

namespace {

long long floor_ll(double x) { return static_cast<long long>(std::floor(x)); }
long long ceil_ll(double x) { return static_cast<long long>(std::ceil(x)); }

PanelMoments constant_moments(double a, double c, double d, Complex v) {
  if (!(d > c)) return {};
  return {v * (d - c), v * (0.5 * ((d - a) * (d - a) - (c - a) * (c - a)))};
}

PanelMoments& operator+=(PanelMoments& x, const PanelMoments& y) {
  x.m0 += y.m0;
  x.m1 += y.m1;
  return x;
}

PanelMoments triangle_moments(double center, double halfwidth, double height, double a, double b) {
  PanelMoments m;
  const double q = height / halfwidth;
  // rising flank
  {
    const double c = std::max(a, center - halfwidth);
    const double d = std::min(b, center);
    if (d > c) m += linear_moments(a, c, d, height * (1.0 - (center - c) / halfwidth), q);
  }
  {
    const double c = std::max(a, center);
    const double d = std::min(b, center + halfwidth);
    if (d > c) m += linear_moments(a, c, d, height * (1.0 - (c - center) / halfwidth), -q);
  }
  return m;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::string fmt_num(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

}  // namespace

PanelMoments linear_moments(double a, double c, double d, Complex rho_c, Complex q) {
  const double len = d - c;
  const double off = c - a;
  return {rho_c * len + q * (0.5 * len * len),
          rho_c * (0.5 * len * len + off * len) + q * (len * len * len / 3.0 + 0.5 * off * len * len)};
}

// ----------------------------------------------------------- DensitySource

std::vector<Window> DensitySource::pieces(const Window& w) const {
  if (auto s = support()) {
    if (auto i = intersect(*s, w)) return {*i};
    return {};
  }
  return {w};
}

std::vector<double> DensitySource::breakpoints(const Window&) const { return {}; }

PanelMoments DensitySource::moments(double a, double b) const {
  if (!(b > a)) return {};
  const auto cuts = breakpoints(Window{a, b});
  const ScalarFn f0 = [this](double s) { return eval(s); };
  const ScalarFn f1 = [this, a](double s) { return (s - a) * eval(s); };
  if (cuts.empty()) {
    const double mid = 0.5 * (a + b);
    const Complex whole = gauss_legendre4(f0, a, b);
    const Complex halves = gauss_legendre4(f0, a, mid) + gauss_legendre4(f0, mid, b);
    if (std::abs(whole - halves) <= 1e-14 * (1.0 + std::abs(halves))) {
      return {halves, gauss_legendre4(f1, a, mid) + gauss_legendre4(f1, mid, b)};
    }
  }
  const double tol = 1e-12 * std::max(1.0, b - a);
  return {integrate(f0, a, b, cuts, tol).value, integrate(f1, a, b, cuts, tol).value};
}

double DensitySource::abs_mass(double a, double b) const {
  if (!(b > a)) return 0.0;
  const auto cuts = breakpoints(Window{a, b});
  const ScalarFn f = [this](double s) { return Complex{std::abs(eval(s)), 0.0}; };
  return integrate(f, a, b, cuts, 1e-10 * std::max(1.0, b - a)).value.real();
}

// ------------------------------------------------------------ atom sources

FiniteAtomSource::FiniteAtomSource(std::vector<Atom> atoms, std::string name)
    : atoms_(merge_atoms(std::move(atoms))), name_(std::move(name)) {}

std::vector<Atom> FiniteAtomSource::enumerate(const Window& w) const {
  auto first = std::lower_bound(atoms_.begin(), atoms_.end(), w.lo,
                                [](const Atom& a, double x) { return a.position < x; });
  std::vector<Atom> out;
  for (auto it = first; it != atoms_.end() && it->position <= w.hi; ++it) out.push_back(*it);
  return out;
}

std::optional<Window> FiniteAtomSource::support() const {
  if (atoms_.empty()) return std::nullopt;
  return Window{atoms_.front().position, atoms_.back().position};
}

std::vector<Atom> ExampleAAtoms::enumerate(const Window& w) const {
  std::vector<Atom> out;
  for (long long n = ceil_ll(w.lo); n <= floor_ll(w.hi); ++n) {
    if (n != 0) out.push_back({static_cast<double>(n), -1.0});
  }
  // n + 1/n lies in [n, n + 1] for n >= 1, and mirrors for n <= -1.
  for (long long n = std::max(1LL, floor_ll(w.lo) - 1); n <= ceil_ll(w.hi); ++n) {
    const double p = static_cast<double>(n) + 1.0 / static_cast<double>(n);
    if (w.contains(p)) out.push_back({p, 1.0});
  }
  for (long long m = std::max(1LL, floor_ll(-w.hi) - 1); m <= ceil_ll(-w.lo); ++m) {
    const double p = -(static_cast<double>(m) + 1.0 / static_cast<double>(m));
    if (w.contains(p)) out.push_back({p, 1.0});
  }
  return merge_atoms(std::move(out));
}

std::vector<Atom> ExampleNuAtoms::enumerate(const Window& w) const {
  std::vector<Atom> out;
  for (long long n = std::max(1LL, floor_ll(w.lo)); n <= floor_ll(w.hi); ++n) {
    const double dn = static_cast<double>(n);
    const long long kmin = std::max(0LL, ceil_ll((w.lo - dn) * dn) - 1);
    const long long kmax = std::min(n - 1, floor_ll((w.hi - dn) * dn) + 1);
    for (long long k = kmin; k <= kmax; ++k) {
      const double p = dn + static_cast<double>(k) / dn;
      if (w.contains(p)) out.push_back({p, 1.0 / dn});
    }
  }
  return out;
}

std::optional<Window> ExampleNuAtoms::support() const {
  return Window{1.0, std::numeric_limits<double>::infinity()};
}

std::vector<Atom> RiemannCombAtoms::enumerate(const Window& w) const {
  std::vector<Atom> out;
  auto positive = [&out](double lo, double hi, double sign) {
    // block n occupies (n, n + 1]
    for (long long n = std::max(1LL, floor_ll(lo) - 1); n <= floor_ll(hi); ++n) {
      const double dn = static_cast<double>(n);
      const long long kmin = std::max(1LL, ceil_ll((lo - dn) * dn) - 1);
      const long long kmax = std::min(n, floor_ll((hi - dn) * dn) + 1);
      for (long long k = kmin; k <= kmax; ++k) {
        const double p = dn + static_cast<double>(k) / dn;
        if (lo <= p && p <= hi) out.push_back({sign * p, 1.0 / dn});
      }
    }
  };
  if (w.hi > 1.0) positive(std::max(w.lo, 1.0), w.hi, 1.0);
  if (w.lo < -1.0) positive(std::max(-w.hi, 1.0), -w.lo, -1.0);
  return merge_atoms(std::move(out));
}

LatticeAtoms::LatticeAtoms(double spacing, double offset, LatticeWeights weights, std::uint64_t seed)
    : spacing_(spacing), offset_(offset), weights_(weights), seed_(seed) {
  if (!(spacing > 0.0)) throw std::invalid_argument("lattice spacing must be positive");
}

Complex LatticeAtoms::weight(long long n) const {
  switch (weights_) {
    case LatticeWeights::one: return 1.0;
    case LatticeWeights::inverse: return 1.0 / (1.0 + static_cast<double>(std::llabs(n)));
    case LatticeWeights::rademacher:
      return (splitmix64(seed_ ^ splitmix64(static_cast<std::uint64_t>(n))) & 1U) ? 1.0 : -1.0;
  }
  return 0.0;
}

std::vector<Atom> LatticeAtoms::enumerate(const Window& w) const {
  std::vector<Atom> out;
  for (long long n = ceil_ll((w.lo - offset_) / spacing_) - 1; n <= floor_ll((w.hi - offset_) / spacing_) + 1; ++n) {
    const double p = offset_ + static_cast<double>(n) * spacing_;
    if (w.contains(p)) out.push_back({p, weight(n)});
  }
  return out;
}

std::string LatticeAtoms::descriptor() const {
  const char* kind = weights_ == LatticeWeights::one ? "one" : weights_ == LatticeWeights::inverse ? "inverse" : "rademacher";
  return "lattice(spacing=" + fmt_num(spacing_) + ",offset=" + fmt_num(offset_) + ",weights=" + kind + ")";
}

namespace {

std::vector<std::pair<double, std::size_t>> sorted_translates(const std::vector<LocalBlock>& blocks,
                                                              const std::vector<double>& translates) {
  if (blocks.size() != translates.size()) throw std::invalid_argument("one translate per block required");
  std::vector<std::pair<double, std::size_t>> order;
  order.reserve(translates.size());
  for (std::size_t i = 0; i < translates.size(); ++i) order.emplace_back(translates[i], i);
  std::sort(order.begin(), order.end());
  return order;
}

template <typename Fn>
void visit_translates(const std::vector<std::pair<double, std::size_t>>& order, const Window& k, double a, double b,
                      Fn&& fn) {
  // block at t meets [a, b] iff t in [a - k.hi, b - k.lo]
  const double eps = 1e-9 * (1.0 + std::abs(a) + std::abs(b));
  const double tlo = a - k.hi - eps;
  const double thi = b - k.lo + eps;
  auto it = std::lower_bound(order.begin(), order.end(), std::pair{tlo, std::size_t{0}});
  for (; it != order.end() && it->first <= thi; ++it) fn(it->first, it->second);
}

}  // namespace

TranslatedAtomSource::TranslatedAtomSource(std::shared_ptr<const std::vector<LocalBlock>> blocks,
                                           std::vector<double> translates, Window k, std::string name)
    : blocks_(std::move(blocks)), order_(sorted_translates(*blocks_, translates)), k_(k), name_(std::move(name)) {}

std::vector<Atom> TranslatedAtomSource::enumerate(const Window& w) const {
  std::vector<Atom> out;
  visit_translates(order_, k_, w.lo, w.hi, [&](double t, std::size_t i) {
    for (const auto& a : (*blocks_)[i].atoms) {
      const double p = t + a.position;
      if (w.contains(p)) out.push_back({p, a.weight});
    }
  });
  return merge_atoms(std::move(out));
}

std::optional<Window> TranslatedAtomSource::support() const {
  if (order_.empty()) return std::nullopt;
  return Window{order_.front().first + k_.lo, order_.back().first + k_.hi};
}

// --------------------------------------------------------- density sources

IndicatorDensity::IndicatorDensity(double lo, double hi, Complex value) : lo_(lo), hi_(hi), value_(value) {
  if (!(lo <= hi)) throw std::invalid_argument("indicator requires lo <= hi");
}

Complex IndicatorDensity::eval(double x) const { return (lo_ <= x && x <= hi_) ? value_ : Complex{}; }

double IndicatorDensity::local_bound(const Window& w) const {
  return (w.hi >= lo_ && w.lo <= hi_) ? std::abs(value_) : 0.0;
}

std::string IndicatorDensity::descriptor() const {
  if (std::isinf(lo_) && std::isinf(hi_)) return "lebesgue";
  return "indicator[" + fmt_num(lo_) + "," + fmt_num(hi_) + "]";
}

std::optional<Window> IndicatorDensity::support() const {
  if (std::isinf(lo_) || std::isinf(hi_)) return std::nullopt;
  return Window{lo_, hi_};
}

std::vector<Window> IndicatorDensity::pieces(const Window& w) const {
  const double a = std::max(w.lo, lo_);
  const double b = std::min(w.hi, hi_);
  if (!(a <= b)) return {};
  return {Window{a, b}};
}

std::vector<double> IndicatorDensity::breakpoints(const Window& w) const {
  std::vector<double> out;
  if (w.contains(lo_)) out.push_back(lo_);
  if (w.contains(hi_)) out.push_back(hi_);
  return out;
}

PanelMoments IndicatorDensity::moments(double a, double b) const {
  return constant_moments(a, std::max(a, lo_), std::min(b, hi_), value_);
}

double IndicatorDensity::abs_mass(double a, double b) const {
  const double len = std::min(b, hi_) - std::max(a, lo_);
  return len > 0.0 ? std::abs(value_) * len : 0.0;
}

std::optional<Affine> IndicatorDensity::affine_on(double a, double b) const {
  if (b < lo_ || a > hi_) return Affine{0.0, 0.0};
  if (lo_ <= a && b <= hi_) return Affine{value_, 0.0};
  return std::nullopt;
}

TriangleDensity::TriangleDensity(double center, double halfwidth, double height)
    : center_(center), halfwidth_(halfwidth), height_(height) {
  if (!(halfwidth > 0.0)) throw std::invalid_argument("triangle halfwidth must be positive");
}

Complex TriangleDensity::eval(double x) const {
  const double d = std::abs(x - center_);
  return d < halfwidth_ ? height_ * (1.0 - d / halfwidth_) : 0.0;
}

double TriangleDensity::local_bound(const Window&) const { return std::abs(height_); }

std::string TriangleDensity::descriptor() const {
  return "triangle(" + fmt_num(center_) + "," + fmt_num(halfwidth_) + "," + fmt_num(height_) + ")";
}

std::optional<Window> TriangleDensity::support() const {
  return Window{center_ - halfwidth_, center_ + halfwidth_};
}

std::vector<Window> TriangleDensity::pieces(const Window& w) const {
  if (auto i = intersect(*support(), w)) return {*i};
  return {};
}

std::vector<double> TriangleDensity::breakpoints(const Window& w) const {
  std::vector<double> out;
  for (double p : {center_ - halfwidth_, center_, center_ + halfwidth_}) {
    if (w.contains(p)) out.push_back(p);
  }
  return out;
}

PanelMoments TriangleDensity::moments(double a, double b) const {
  return triangle_moments(center_, halfwidth_, height_, a, b);
}

std::optional<Affine> TriangleDensity::affine_on(double a, double b) const {
  const double lo = center_ - halfwidth_;
  const double hi = center_ + halfwidth_;
  if (b <= lo || a >= hi) return Affine{0.0, 0.0};
  const double slope = height_ / halfwidth_;
  if (lo <= a && b <= center_) return Affine{eval(a), slope};
  if (center_ <= a && b <= hi) return Affine{eval(a), -slope};
  return std::nullopt;
}

double TriangleDensity::abs_mass(double a, double b) const {
  return std::abs(triangle_moments(center_, halfwidth_, 1.0, a, b).m0.real() * height_);
}

namespace {

double tent_halfwidth(long long n) { return std::ldexp(1.0, static_cast<int>(-n)); }

template <typename Fn>
void visit_tents(double a, double b, Fn&& fn) {
  const long long first = std::max(1LL, floor_ll(a));
  const long long last = std::min<long long>(TentSeriesDensity::max_index, ceil_ll(b));
  for (long long n = first; n <= last; ++n) {
    const double hw = tent_halfwidth(n);
    const double c = static_cast<double>(n);
    if (c + hw > a && c - hw < b) fn(c, hw);
  }
}

}  // namespace

Complex TentSeriesDensity::eval(double x) const {
  const long long n = std::llround(x);
  if (n < 1 || n > max_index) return 0.0;
  const double d = std::abs(x - static_cast<double>(n));
  const double hw = tent_halfwidth(n);
  return d < hw ? 1.0 - d / hw : 0.0;
}

double TentSeriesDensity::local_bound(const Window& w) const {
  double m = 0.0;
  visit_tents(w.lo, w.hi, [&](double, double) { m = 1.0; });
  return m;
}

std::optional<Window> TentSeriesDensity::support() const {
  return Window{0.5, static_cast<double>(max_index) + 0.5};
}

std::vector<Window> TentSeriesDensity::pieces(const Window& w) const {
  std::vector<Window> out;
  visit_tents(w.lo, w.hi, [&](double c, double hw) {
    if (auto i = intersect(Window{c - hw, c + hw}, w)) out.push_back(*i);
  });
  return out;
}

std::vector<double> TentSeriesDensity::breakpoints(const Window& w) const {
  std::vector<double> out;
  visit_tents(w.lo, w.hi, [&](double c, double hw) {
    for (double p : {c - hw, c, c + hw}) {
      if (w.contains(p)) out.push_back(p);
    }
  });
  return out;
}

PanelMoments TentSeriesDensity::moments(double a, double b) const {
  PanelMoments m;
  visit_tents(a, b, [&](double c, double hw) { m += triangle_moments(c, hw, 1.0, a, b); });
  return m;
}

double TentSeriesDensity::abs_mass(double a, double b) const { return moments(a, b).m0.real(); }

// Block n of the alternating density lives on [n, n + 1) with pieces of width 2^-n.
namespace {

constexpr long long max_dyadic_block = 1000;

struct DyadicBlock {
  double w;  // piece width

  // int_0^y rho(u) du, u local in [0, 1]
  double cumulative(double y) const {
    const double k = std::floor(y / w);
    const double r = y - k * w;
    return std::fmod(k, 2.0) == 0.0 ? r : w - r;
  }
  // int_0^y u rho(u) du
  double first_moment(double y) const {
    const double k = std::floor(y / w);
    const double p = std::floor(k / 2.0);
    const double base = -p * w * w;
    if (std::fmod(k, 2.0) != 0.0) {
      const double left = (2.0 * p + 1.0) * w;
      return base + 0.5 * w * w * (4.0 * p + 1.0) - 0.5 * (y - left) * (y + left);
    }
    const double left = 2.0 * p * w;
    return base + 0.5 * (y - left) * (y + left);
  }
  double sign(double y) const { return std::fmod(std::floor(y / w), 2.0) == 0.0 ? 1.0 : -1.0; }
};

}  // namespace

Complex AlternatingDyadicDensity::eval(double x) const {
  if (!(x >= 1.0)) return 0.0;
  const long long n = floor_ll(x);
  if (n > max_dyadic_block) return 0.0;
  return DyadicBlock{tent_halfwidth(n)}.sign(x - static_cast<double>(n));
}

double AlternatingDyadicDensity::local_bound(const Window& w) const { return w.hi >= 1.0 ? 1.0 : 0.0; }

std::optional<Window> AlternatingDyadicDensity::support() const {
  return Window{1.0, static_cast<double>(max_dyadic_block + 1)};
}

std::vector<Window> AlternatingDyadicDensity::pieces(const Window& w) const {
  std::vector<Window> out;
  for (long long n = std::max(1LL, floor_ll(w.lo)); n <= std::min(max_dyadic_block, floor_ll(w.hi)); ++n) {
    if (auto i = intersect(Window{static_cast<double>(n), static_cast<double>(n + 1)}, w)) out.push_back(*i);
  }
  return out;
}

std::vector<double> AlternatingDyadicDensity::breakpoints(const Window& w) const {
  std::vector<double> out;
  for (long long n = std::max(1LL, floor_ll(w.lo)); n <= std::min(max_dyadic_block, floor_ll(w.hi)); ++n) {
    const double h = tent_halfwidth(n);
    const double lo = std::max(w.lo, static_cast<double>(n));
    const double hi = std::min(w.hi, static_cast<double>(n + 1));
    const double first = std::ceil((lo - static_cast<double>(n)) / h);
    const double last = std::floor((hi - static_cast<double>(n)) / h);
    if (last - first > 4096.0 || out.size() > 4096) return {};
    for (double k = first; k <= last; k += 1.0) out.push_back(static_cast<double>(n) + k * h);
  }
  return out;
}

PanelMoments AlternatingDyadicDensity::moments(double a, double b) const {
  PanelMoments m;
  for (long long n = std::max(1LL, floor_ll(a)); n <= std::min(max_dyadic_block, floor_ll(b)); ++n) {
    const double dn = static_cast<double>(n);
    const double c = std::max(a, dn);
    const double d = std::min(b, dn + 1.0);
    if (!(d > c)) continue;
    const DyadicBlock blk{tent_halfwidth(n)};
    const double yc = c - dn;
    const double yd = d - dn;
    if ((yd - yc) / blk.w <= 64.0) {
      // few pieces: sum them directly
      double y = yc;
      while (y < yd) {
        const double k = std::floor(y / blk.w);
        const double end = std::min(yd, (k + 1.0) * blk.w);
        const double v = std::fmod(k, 2.0) == 0.0 ? 1.0 : -1.0;
        m += constant_moments(a, dn + y, dn + end, v);
        if (!(end > y)) break;
        y = end;
      }
    } else {
      const double f = blk.cumulative(yd) - blk.cumulative(yc);
      const double g = blk.first_moment(yd) - blk.first_moment(yc);
      m += PanelMoments{f, g + (dn - a) * f};
    }
  }
  return m;
}

double AlternatingDyadicDensity::abs_mass(double a, double b) const {
  const double len = std::min(b, static_cast<double>(max_dyadic_block + 1)) - std::max(a, 1.0);
  return len > 0.0 ? len : 0.0;
}

Complex J0RadialDensity::eval(double x) const {
  return 2.0 * std::numbers::pi * bessel_j0(2.0 * std::numbers::pi * std::abs(x));
}

double J0RadialDensity::local_bound(const Window&) const { return 2.0 * std::numbers::pi; }

FunctionDensity::FunctionDensity(std::function<Complex(double)> fn, double bound, std::string name,
                                 std::optional<Window> support, bool nonnegative)
    : fn_(std::move(fn)), bound_(bound), name_(std::move(name)), support_(support), nonneg_(nonnegative) {}

Complex FunctionDensity::eval(double x) const {
  if (support_ && !support_->contains(x)) return 0.0;
  return fn_(x);
}

TranslatedPiecesDensity::TranslatedPiecesDensity(std::shared_ptr<const std::vector<LocalBlock>> blocks,
                                                 std::vector<double> translates, Window k, std::string name)
    : blocks_(std::move(blocks)), order_(sorted_translates(*blocks_, translates)), k_(k), name_(std::move(name)) {}

template <typename Fn>
void TranslatedPiecesDensity::for_each_piece(double a, double b, Fn&& fn) const {
  visit_translates(order_, k_, a, b, [&](double t, std::size_t i) {
    for (const auto& p : (*blocks_)[i].pieces) {
      const Window placed = p.where.shifted(t);
      if (placed.hi >= a && placed.lo <= b) fn(placed, p.value);
    }
  });
}

Complex TranslatedPiecesDensity::eval(double x) const {
  Complex v{};
  for_each_piece(x, x, [&](const Window& where, Complex value) {
    // half-open convention keeps adjacent pieces from double counting
    if (where.lo <= x && x < where.hi) v += value;
  });
  return v;
}

double TranslatedPiecesDensity::local_bound(const Window& w) const {
  double m = 0.0;
  for_each_piece(w.lo, w.hi, [&](const Window&, Complex value) { m += std::abs(value); });
  return m;
}

std::optional<Window> TranslatedPiecesDensity::support() const {
  if (order_.empty()) return std::nullopt;
  return Window{order_.front().first + k_.lo, order_.back().first + k_.hi};
}

std::vector<Window> TranslatedPiecesDensity::pieces(const Window& w) const {
  std::vector<Window> out;
  for_each_piece(w.lo, w.hi, [&](const Window& where, Complex) {
    if (auto i = intersect(where, w)) out.push_back(*i);
  });
  std::sort(out.begin(), out.end(), [](const Window& x, const Window& y) { return x.lo < y.lo; });
  return out;
}

std::vector<double> TranslatedPiecesDensity::breakpoints(const Window& w) const {
  std::vector<double> out;
  for_each_piece(w.lo, w.hi, [&](const Window& where, Complex) {
    if (w.contains(where.lo)) out.push_back(where.lo);
    if (w.contains(where.hi)) out.push_back(where.hi);
  });
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

PanelMoments TranslatedPiecesDensity::moments(double a, double b) const {
  PanelMoments m;
  for_each_piece(a, b, [&](const Window& where, Complex value) {
    m += constant_moments(a, std::max(a, where.lo), std::min(b, where.hi), value);
  });
  return m;
}

}  // namespace vanishkit
