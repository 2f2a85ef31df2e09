#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "oracles.hpp"
#include "vanishkit/analysis.hpp"
#include "vanishkit/constructions.hpp"
#include "vanishkit/convolution.hpp"
#include "vanishkit/measure_spec.hpp"

using namespace vanishkit;

namespace {

double tent_oracle(double x) {
  double v = 0.0;
  for (int n = 1; n < 60; ++n) {
    const double w = std::ldexp(1.0, -n);
    const double d = std::abs(x - n);
    if (d < w) v += 1.0 - d / w;
  }
  return v;
}

void check_same_atoms(const std::vector<Atom>& got, const std::vector<Atom>& want) {
  REQUIRE(got.size() == want.size());
  for (std::size_t i = 0; i < got.size(); ++i) {
    CHECK(got[i].position == want[i].position);
    CHECK(std::abs(got[i].weight - want[i].weight) < 1e-15);
  }
}

}  // namespace

TEST_CASE("example building blocks") {
  const TentSeriesDensity tent;
  for (double x : {0.0, 0.75, 1.0, 1.25, 1.5, 2.0, 2.1, 3.05, 7.0 + 1.0 / 256}) {
    CAPTURE(x);
    CHECK(tent.eval(x).real() == doctest::Approx(tent_oracle(x)).epsilon(1e-14));
  }
  const auto tent_pieces = tent.pieces(Window{0.0, 4.0});
  REQUIRE(tent_pieces.size() >= 3);
  CHECK(tent_pieces[0] == Window{0.5, 1.5});
  CHECK(tent_pieces[1] == Window{1.75, 2.25});

  const AlternatingDyadicDensity bf;
  for (int n = 1; n <= 6; ++n) {
    const auto m = bf.moments(n, n + 1);
    CHECK(std::abs(m.m0) < 1e-14);
    CHECK(bf.abs_mass(n, n + 1) == doctest::Approx(1.0));
  }
  CHECK(bf.eval(1.1).real() == 1.0);
  CHECK(bf.eval(1.6).real() == -1.0);

  check_same_atoms(atoms_in(build_example("ex_a"), Window{0.9, 1.2}), {{1.0, -1.0}});
  const auto names = example_names();
  for (const char* n : {"ex_a", "ex_nu", "ex_tent", "ex_bf", "ex_b", "ex_sinc_series(N)", "j0_radial"}) {
    CHECK(std::find(names.begin(), names.end(), n) != names.end());
  }
  CHECK_THROWS_AS(build_example("ex_zzz"), UnknownExample);
  CHECK_THROWS_AS(build_example("ex_sinc_series(x)"), UnknownExample);
}

TEST_CASE("generator reproduces ex_a and nu") {
  const auto gen_a = generate_prop51(decompose_ex_a(12000));
  CHECK(gen_a.hypotheses.overall);
  const Window w{-150.0, 150.0};
  check_same_atoms(atoms_in(gen_a.measure, w), oracle::ex_a(w.lo, w.hi));

  const auto gen_nu = generate_prop51(decompose_nu(200), true);
  check_same_atoms(atoms_in(gen_nu.measure, Window{0.0, 120.0}), oracle::ex_nu(0.0, 120.0));
  CHECK(gen_nu.covered == Window{1.0, 201.0});
}

TEST_CASE("ex_b from its decomposition") {
  const auto gen = generate_prop51(decompose_ex_b(40), true);
  const auto direct = build_example("ex_b");
  const Window w{-20.0, 20.0};
  check_same_atoms(atoms_in(gen.measure, w), atoms_in(direct, w));
  const auto f = tf_hat(0.0, 0.25, 1.0);
  for (double x : {-17.3, -2.0, 0.0, 0.6, 5.5, 19.1}) {
    CHECK(std::abs(convolve(gen.measure, f, x) - convolve(direct, f, x)) < 1e-12);
  }
  const auto p = decay_profile(direct, f, {10.0, 20.0, 40.0}, 0.05, 1e-3);
  for (const auto& e : p.entries) CHECK(e.sup <= 6.0 / e.radius);
}

TEST_CASE("hypothesis validation") {
  const auto a = validate_prop51(decompose_ex_a(12000));
  CHECK(a.overall);
  CHECK(a.worst_pairing < 1e-3);
  CHECK(a.min_translate_gap == 1.0);

  const auto nu = validate_prop51(decompose_nu(400));
  CHECK(nu.h_support);
  CHECK(nu.h_udiscrete);
  CHECK_FALSE(nu.h_vague_null);
  CHECK_FALSE(nu.overall);

  const auto d = validate_prop51(constant_delta_input(100));
  CHECK_FALSE(d.h_vague_null);
  CHECK(d.h_bounded);

  auto bad = decompose_ex_a(50);
  bad.parts[7].atoms.push_back({3.0, 1.0});
  const auto r = validate_prop51(bad);
  CHECK_FALSE(r.h_support);
  REQUIRE(r.support_offender);
  CHECK(*r.support_offender == 7);

  auto crowded = constant_delta_input(10);
  crowded.translates[3] = crowded.translates[2] + 1e-4;
  CHECK_FALSE(validate_prop51(crowded).h_udiscrete);

  CHECK_THROWS_AS(generate_prop51(constant_delta_input(100)), HypothesesViolated);
  try {
    generate_prop51(constant_delta_input(100));
  } catch (const HypothesesViolated& e) {
    CHECK_FALSE(e.report.h_vague_null);
  }
}

TEST_CASE("sharpness: constant delta blocks give a comb") {
  const auto gen = generate_prop51(constant_delta_input(100), true);
  CHECK_FALSE(gen.hypotheses.overall);
  const auto f = tf_hat(0.0, 0.25, 1.0);
  const auto p = decay_profile(gen.measure, f, {10.0, 20.0, 40.0}, 0.05, 1e-3);
  CHECK(p.verdict == Verdict::not_vanishing);
}

TEST_CASE("soundness: valid inputs give vanishing decay") {
  const auto gen = generate_prop51(decompose_ex_a(12000));
  const auto f = tf_hat(0.0, 0.25, 1.0);
  const auto p = decay_profile(gen.measure, f, {100.0, 400.0, 1600.0}, 0.05, 1e-3);
  CHECK(p.verdict == Verdict::vanishing);
}

TEST_CASE("pairing and part variation") {
  LocalBlock b;
  b.atoms = {{0.0, 1.0}, {0.5, -2.0}};
  b.pieces = {{Window{-1.0, 0.0}, 0.5}};
  const auto g = tf_hat(0.0, 1.0, 1.0);
  CHECK(std::abs(pairing(g, b) - Complex{1.0 - 1.0 + 0.25}) < 1e-12);
  CHECK(part_variation(b, Window{-1.0, 1.0}) == doctest::Approx(3.5));
  CHECK(default_probe_family(Window{-1.0, 1.0}).size() == 15);
}

TEST_CASE("prop51 json round trip") {
  const auto in = decompose_ex_b(6);
  const auto back = prop51_from_json(to_json(in));
  CHECK(back.k == in.k);
  CHECK(back.translates == in.translates);
  REQUIRE(back.parts.size() == in.parts.size());
  for (std::size_t i = 0; i < in.parts.size(); ++i) {
    check_same_atoms(back.parts[i].atoms, in.parts[i].atoms);
    REQUIRE(back.parts[i].pieces.size() == in.parts[i].pieces.size());
  }
  CHECK(translates_for_rule("alternating", 4) == std::vector<double>{1.0, -1.0, 2.0, -2.0});
  CHECK(translates_for_rule("identity", 3) == std::vector<double>{1.0, 2.0, 3.0});
  CHECK_THROWS(translates_for_rule("spiral", 3));
}
