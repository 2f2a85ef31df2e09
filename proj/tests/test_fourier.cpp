#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "vanishkit/bessel.hpp"
#include "vanishkit/constructions.hpp"
#include "vanishkit/fourier.hpp"

using namespace vanishkit;
using std::numbers::pi;

namespace {

// Midpoint rule for int g(s) e^{-2 pi i k s} ds.
Complex brute_ft(const std::function<Complex(double)>& g, double a, double b, double k, long n = 200000) {
  const double h = (b - a) / static_cast<double>(n);
  Complex s{};
  for (long i = 0; i < n; ++i) {
    const double x = a + h * (static_cast<double>(i) + 0.5);
    s += g(x) * std::polar(1.0, -2.0 * pi * k * x);
  }
  return s * h;
}

}  // namespace

TEST_CASE("exp_sum") {
  CHECK(std::abs(exp_sum({{0.0, 1.0}}, 0.37) - Complex{1.0}) < 1e-15);
  CHECK(std::abs(exp_sum({{0.25, 1.0}}, 1.0) - Complex{0.0, -1.0}) < 1e-15);
  CHECK(std::abs(exp_sum({{0.5, 1.0}, {-0.5, 1.0}}, 1.0) - Complex{-2.0}) < 1e-14);
  const std::vector<Atom> real_atoms{{0.3, 2.0}, {-1.7, -0.5}, {4.0, 1.25}};
  for (double k : {0.1, 0.9, 3.3}) {
    CHECK(std::abs(exp_sum(real_atoms, -k) - std::conj(exp_sum(real_atoms, k))) < 1e-13);
  }
  CHECK(exp_sum({}, 1.0) == Complex{});
}

TEST_CASE("sinc") {
  CHECK(sinc(0.0) == 1.0);
  CHECK(sinc(pi) == doctest::Approx(0.0).epsilon(1e-15));
  for (double u : {1e-7, 3e-6, 9.9e-6, 1e-5, 0.5, 2.0}) {
    CHECK(sinc(u) == doctest::Approx(std::sin(u) / u).epsilon(1e-14));
  }
  CHECK(sinc(-0.7) == sinc(0.7));
}

TEST_CASE("ft_compact of test functions") {
  const auto ind = tf_indicator(-0.5, 0.5, 1e-3);
  CHECK(std::abs(ft_compact(ind, 0.0) - Complex{1.0}) < 1e-12);
  CHECK(std::abs(ft_compact(ind, 1.0)) < 1e-6);
  CHECK(std::abs(ft_compact(ind, 0.5) - Complex{2.0 / pi}) < 1e-6);

  const auto hat = tf_hat(0.3, 0.25, 1.0, 0.25 / 64);
  auto g = [&](double x) { return Complex{oracle::hat(0.3, 0.25, 1.0, x)}; };
  for (double k : {0.0, 0.7, 2.5, 11.0}) {
    CAPTURE(k);
    CHECK(std::abs(ft_compact(hat, k) - brute_ft(g, 0.05, 0.55, k)) < 1e-9);
    CHECK(std::abs(ft_compact(hat, k, Direction::inverse) - std::conj(ft_compact(hat, k))) < 1e-14);
  }
  // closed form for the hat: hw * height * sinc^2(pi k hw) e^{-2 pi i k c}
  for (double k : {0.4, 3.0}) {
    const Complex want = 0.25 * std::pow(sinc(pi * k * 0.25), 2) * std::polar(1.0, -2.0 * pi * k * 0.3);
    CHECK(std::abs(ft_compact(hat, k) - want) < 1e-13);
  }
}

TEST_CASE("ft_compact of densities") {
  const TriangleDensity tri(0.0, 1.0, 1.0);
  for (double k : {0.0, 0.3, 1.7}) {
    const auto r = ft_compact(tri, k);
    CHECK(std::abs(r.value - Complex{std::pow(sinc(pi * k), 2)}) < 1e-8);
  }
  const IndicatorDensity line(-INFINITY, INFINITY, 1.0);
  CHECK_THROWS_AS(ft_compact(line, 1.0), std::invalid_argument);
}

TEST_CASE("series density") {
  CHECK(series_density(0.0, 40) == doctest::Approx(8.0 - 4.0 * std::ldexp(1.0, -40)).epsilon(1e-12));
  for (int n : {0, 3, 10}) {
    // at x = 1 only the constant term survives
    CHECK(series_density(1.0, n) == doctest::Approx(2.0 - std::ldexp(1.0, -n)).epsilon(1e-12));
  }
  CHECK(series_tail_bound(10) == std::ldexp(1.0, -8));
  for (double x = -6.0; x <= 6.0; x += 0.01) CHECK(series_density(x, 30) >= -1e-12);
  for (double x : {0.13, 0.77, 2.4}) {
    CHECK(sinc_autocorr_density(2, x) ==
          doctest::Approx(1.0 + 2.0 * std::cos(5.0 * pi * x) * sinc(pi * x) + std::pow(sinc(pi * x), 2)));
  }
}

TEST_CASE("bessel identity") {
  for (double r : {0.0, 0.1, 1.0, 2.5, 7.3}) {
    const auto c = bessel_j0_check(r);
    CAPTURE(r);
    CHECK(std::abs(c.lhs - c.rhs) < 1e-8);
    CHECK(c.lhs == doctest::Approx(2.0 * pi * std::cyl_bessel_j(0.0, 2.0 * pi * r)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(bessel_j0_check(1.0, 16), std::invalid_argument);
  for (double x : {0.0, 0.5, 3.0, 11.9, 12.1, 15.9, 16.1, 40.0, 250.0}) {
    CAPTURE(x);
    CHECK(std::abs(bessel_j0(x) - std::cyl_bessel_j(0.0, x)) < 1e-12);
  }
}

TEST_CASE("plancherel for a piecewise-linear function") {
  const auto f = tf_hat(0.0, 0.5, 1.0, 0.5 / 64);
  // int |f|^2 = 2 * hw / 3 for the exact hat; the same by frequency
  const double k_max = 200.0;
  const long n = 400000;
  const double h = 2.0 * k_max / static_cast<double>(n);
  double freq = 0.0;
  for (long i = 0; i < n; ++i) freq += std::norm(ft_compact(f, -k_max + h * (static_cast<double>(i) + 0.5))) * h;
  CHECK(freq == doctest::Approx(1.0 / 3.0).epsilon(1e-8));
}

TEST_CASE("rl crosscheck") {
  const auto f = tf_hat(0.0, 0.5, 1.0, 0.5 / 64);
  std::vector<double> xs;
  for (int i = 0; i <= 24; ++i) xs.push_back(-3.0 + 0.25 * i);

  const auto series = rl_crosscheck(sinc_series_measure(30), series_spectral_density(30), f, xs);
  CHECK(series.max_deviation < 1e-4);
  CHECK(series.truncation_tail <= 1e-4);
  const auto point = rl_crosscheck(delta(0.0), constant_spectral_density(), f, xs);
  CHECK(point.max_deviation < 1e-4);
  CHECK(point.direct[12].real() == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
  const auto tri = rl_crosscheck(triangle_measure(0.0, 1.0, 1.0), sinc2_spectral_density(), f, xs);
  CHECK(tri.max_deviation < 1e-4);
  CHECK(tri.cutoff >= 1.0);

  CHECK_THROWS_AS(rl_crosscheck(sinc_series_measure(2), series_spectral_density(2), f, xs), TruncationTailTooLarge);
}

TEST_CASE("spectral measure of sinc squared has vanishing convolutions") {
  const auto f = tf_hat(0.0, 0.5, 1.0, 0.5 / 16);
  const auto p = decay_profile(spectral_measure(sinc2_spectral_density()), f, {10.0, 40.0, 160.0}, 0.05, 0.05);
  CHECK(p.verdict == Verdict::vanishing);
}

TEST_CASE("rajchman check") {
  const auto f = tf_hat(0.0, 0.25, 1.0, 0.25 / 32);
  CHECK(rajchman_check(sinc_series_measure(20), f, {10.0, 20.0, 40.0}).verdict == Verdict::vanishing);
  CHECK(rajchman_check(lattice_comb(1.0), f, {10.0, 20.0, 40.0}).verdict == Verdict::not_vanishing);
  CHECK(rajchman_check(delta(0.0), f, {10.0, 20.0}).verdict == Verdict::vanishing);
}
