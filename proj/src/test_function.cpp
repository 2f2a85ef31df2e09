#include "vanishkit/test_function.hpp"

#include <algorithm>
#include <cmath>

namespace vanishkit {

TestFunction::TestFunction(Window support, std::vector<Complex> samples)
    : support_(support), samples_(std::move(samples)), step_(0.0) {
  if (samples_.size() < 3) throw std::invalid_argument("test function needs at least 3 samples");
  if (!(support_.lo < support_.hi)) throw std::invalid_argument("test function support must have lo < hi");
  if (samples_.front() != Complex{} || samples_.back() != Complex{}) {
    throw std::invalid_argument("test function end samples must be exactly zero");
  }
  step_ = support_.length() / static_cast<double>(samples_.size() - 1);
  cum0_.assign(samples_.size(), Complex{});
  cum1_.assign(samples_.size(), Complex{});
  for (std::size_t i = 0; i + 1 < samples_.size(); ++i) {
    const double u = node(i) - support_.lo;
    const double h = node(i + 1) - node(i);
    const Complex s0 = samples_[i];
    const Complex d = samples_[i + 1] - s0;
    cum0_[i + 1] = cum0_[i] + h * (s0 + 0.5 * d);
    cum1_[i + 1] = cum1_[i] + u * h * (s0 + 0.5 * d) + h * h * (0.5 * s0 + d / 3.0);
  }
}

namespace {
struct PanelPos {
  std::size_t i;
  double t;  // offset into panel i
};
}  // namespace

static PanelPos locate(const TestFunction& f, double y) {
  const auto n = f.size();
  auto i = static_cast<std::size_t>(std::max(0.0, (y - f.support().lo) / f.step()));
  if (i > n - 2) i = n - 2;
  while (i > 0 && f.node(i) > y) --i;
  while (i + 2 < n && f.node(i + 1) <= y) ++i;
  return {i, y - f.node(i)};
}

Complex TestFunction::primitive(double y) const {
  if (y <= support_.lo) return {};
  if (y >= support_.hi) return cum0_.back();
  const auto [i, t] = locate(*this, y);
  const Complex s0 = samples_[i];
  const Complex d = (samples_[i + 1] - s0) / (node(i + 1) - node(i));
  return cum0_[i] + t * (s0 + 0.5 * d * t);
}

Complex TestFunction::moment_primitive(double y) const {
  if (y <= support_.lo) return {};
  if (y >= support_.hi) return cum1_.back();
  const auto [i, t] = locate(*this, y);
  const double u = node(i) - support_.lo;
  const Complex s0 = samples_[i];
  const Complex d = (samples_[i + 1] - s0) / (node(i + 1) - node(i));
  return cum1_[i] + u * t * (s0 + 0.5 * d * t) + t * t * (0.5 * s0 + d * t / 3.0);
}

double TestFunction::node(std::size_t i) const {
  if (i + 1 >= samples_.size()) return support_.hi;
  return support_.lo + support_.length() * static_cast<double>(i) / static_cast<double>(samples_.size() - 1);
}

Complex TestFunction::operator()(double x) const {
  if (!(x > support_.lo && x < support_.hi)) return {};
  const double u = (x - support_.lo) / step_;
  auto i = static_cast<std::size_t>(u);
  if (i >= samples_.size() - 1) i = samples_.size() - 2;
  const double frac = u - static_cast<double>(i);
  return samples_[i] + (samples_[i + 1] - samples_[i]) * frac;
}

double TestFunction::sup_norm() const {
  double m = 0.0;
  for (const auto& s : samples_) m = std::max(m, std::abs(s));
  return m;
}

double TestFunction::lipschitz() const {
  double m = 0.0;
  for (std::size_t i = 0; i + 1 < samples_.size(); ++i) {
    m = std::max(m, std::abs(samples_[i + 1] - samples_[i]));
  }
  return m / step_;
}

double TestFunction::derivative_variation() const {
  Complex prev{};
  double v = 0.0;
  for (std::size_t i = 0; i + 1 < samples_.size(); ++i) {
    const Complex slope = (samples_[i + 1] - samples_[i]) / step_;
    v += std::abs(slope - prev);
    prev = slope;
  }
  return v + std::abs(prev);
}

Complex TestFunction::integral() const {
  Complex s{};
  for (const auto& v : samples_) s += v;  // end samples are zero
  return s * step_;
}

Complex TestFunction::integral(double a, double b) const {
  const double lo = std::max(a, support_.lo);
  const double hi = std::min(b, support_.hi);
  if (!(lo < hi)) return {};
  const auto first = static_cast<std::size_t>(std::floor((lo - support_.lo) / step_));
  Complex acc{};
  for (std::size_t i = std::min(first, samples_.size() - 2); i + 1 < samples_.size(); ++i) {
    const double c = std::max(lo, node(i));
    const double d = std::min(hi, node(i + 1));
    if (node(i) >= hi) break;
    if (d > c) acc += ((*this)(c) + (*this)(d)) * (0.5 * (d - c));
  }
  return acc;
}

TestFunction tf_hat(double center, double halfwidth, double height, double step) {
  if (!(halfwidth > 0.0) || !std::isfinite(halfwidth)) throw std::invalid_argument("tf_hat: halfwidth must be positive");
  if (step < 0.0) throw std::invalid_argument("tf_hat: step must be positive");
  if (step == 0.0) step = halfwidth / 1024.0;
  const auto flank = static_cast<std::size_t>(std::max(1.0, std::round(halfwidth / step)));
  std::vector<Complex> s(2 * flank + 1);
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double d = std::abs(static_cast<double>(i) - static_cast<double>(flank));
    s[i] = height * (1.0 - d / static_cast<double>(flank));
  }
  s.front() = s.back() = 0.0;
  return {Window{center - halfwidth, center + halfwidth}, std::move(s)};
}

TestFunction tf_indicator(double a, double b, double step) {
  if (!(b > a) || !(step > 0.0)) throw std::invalid_argument("tf_indicator: need a < b and step > 0");
  const auto n = static_cast<std::size_t>(std::max(1.0, std::round((b - a) / step)));
  const double h = (b - a) / static_cast<double>(n);
  std::vector<Complex> s(n + 2, Complex{1.0, 0.0});
  s.front() = s.back() = 0.0;
  return {Window{a - 0.5 * h, b + 0.5 * h}, std::move(s)};
}

namespace {

// Samples of f on the grid lo + i*h, extended until the support is covered.
std::vector<Complex> resample(const TestFunction& f, double h) {
  if (f.step() == h) return {f.samples().begin(), f.samples().end()};
  const auto n = static_cast<std::size_t>(std::ceil(f.support().length() / h - 1e-9));
  std::vector<Complex> s(n + 1);
  for (std::size_t i = 1; i < n; ++i) s[i] = f(f.support().lo + h * static_cast<double>(i));
  return s;
}

}  // namespace

TestFunction tf_convolve(const TestFunction& f, const TestFunction& g) {
  const double h = std::min(f.step(), g.step());
  const auto a = resample(f, h);
  const auto b = resample(g, h);
  std::vector<Complex> d(a.size() + b.size() - 1);
  for (std::size_t i = 1; i + 1 < a.size(); ++i) {
    if (a[i] == Complex{}) continue;
    for (std::size_t j = 1; j + 1 < b.size(); ++j) d[i + j] += a[i] * b[j];
  }
  // hat basis: (phi * phi) is h * (2/3, 1/6) at offsets 0 and +-1, so node values are exact
  std::vector<Complex> c(d.size());
  for (std::size_t k = 1; k + 1 < d.size(); ++k) c[k] = h * (2.0 / 3.0 * d[k] + (d[k - 1] + d[k + 1]) / 6.0);
  const double lo = f.support().lo + g.support().lo;
  const bool exact = f.step() == h && g.step() == h;
  const double hi = exact ? f.support().hi + g.support().hi : lo + h * static_cast<double>(c.size() - 1);
  return {Window{lo, hi}, std::move(c)};
}

TestFunction tf_reflect_conj(const TestFunction& f) {
  std::vector<Complex> s(f.samples().rbegin(), f.samples().rend());
  for (auto& v : s) v = std::conj(v);
  return {f.support().reflected(), std::move(s)};
}

TestFunction tf_autocorrelation(const TestFunction& f) { return tf_convolve(f, tf_reflect_conj(f)); }

TestFunction tf_scaled(const TestFunction& f, Complex c) {
  std::vector<Complex> s(f.samples().begin(), f.samples().end());
  for (auto& v : s) v *= c;
  s.front() = s.back() = 0.0;
  return {f.support(), std::move(s)};
}

}  // namespace vanishkit
