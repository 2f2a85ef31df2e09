#include "vanishkit/constructions.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>

namespace vanishkit {

MeasureExpr delta(double x, Complex weight) { return finite_atoms({{x, weight}}); }

MeasureExpr finite_atoms(std::vector<Atom> atoms) {
  return MeasureExpr::pure_point(std::make_shared<FiniteAtomSource>(std::move(atoms)));
}

MeasureExpr lattice_comb(double spacing, double offset, LatticeWeights weights, std::uint64_t seed) {
  return MeasureExpr::pure_point(std::make_shared<LatticeAtoms>(spacing, offset, weights, seed));
}

MeasureExpr lebesgue() {
  const double inf = std::numeric_limits<double>::infinity();
  return MeasureExpr::abs_cont(std::make_shared<IndicatorDensity>(-inf, inf));
}

MeasureExpr indicator_measure(double a, double b, Complex value) {
  return MeasureExpr::abs_cont(std::make_shared<IndicatorDensity>(a, b, value));
}

MeasureExpr triangle_measure(double center, double halfwidth, double height) {
  return MeasureExpr::abs_cont(std::make_shared<TriangleDensity>(center, halfwidth, height));
}

MeasureExpr sinc_series_measure(int truncation) {
  if (truncation < 0) throw std::invalid_argument("sinc series truncation must be >= 0");
  std::vector<MeasureExpr> terms;
  const auto triangle = triangle_measure(0.0, 1.0, 1.0);
  const auto origin = delta(0.0);
  for (int n = 0; n <= truncation; ++n) {
    const double dn = n;
    auto autocorr = MeasureExpr::sum({origin, indicator_measure(dn, dn + 1.0), indicator_measure(-dn - 1.0, -dn), triangle});
    terms.push_back(MeasureExpr::scale(std::ldexp(1.0, -n), std::move(autocorr)));
  }
  return MeasureExpr::sum(std::move(terms));
}

MeasureExpr build_example(std::string_view name) {
  if (name == "ex_a") return MeasureExpr::pure_point(std::make_shared<ExampleAAtoms>());
  if (name == "ex_nu") return MeasureExpr::pure_point(std::make_shared<ExampleNuAtoms>());
  if (name == "ex_tent") return MeasureExpr::abs_cont(std::make_shared<TentSeriesDensity>());
  if (name == "ex_bf") return MeasureExpr::abs_cont(std::make_shared<AlternatingDyadicDensity>());
  if (name == "ex_b") {
    return lebesgue() - MeasureExpr::pure_point(std::make_shared<RiemannCombAtoms>());
  }
  if (name == "j0_radial") return MeasureExpr::abs_cont(std::make_shared<J0RadialDensity>());
  constexpr std::string_view sinc = "ex_sinc_series";
  if (name.starts_with(sinc)) {
    auto rest = name.substr(sinc.size());
    if (rest.empty()) return sinc_series_measure(20);
    if (rest.size() >= 3 && rest.front() == '(' && rest.back() == ')') {
      int n = -1;
      const auto digits = rest.substr(1, rest.size() - 2);
      auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
      if (ec == std::errc{} && ptr == digits.data() + digits.size() && n >= 0) return sinc_series_measure(n);
    }
  }
  throw UnknownExample("unknown example '" + std::string(name) + "'");
}

std::vector<std::string> example_names() {
  return {"ex_a", "ex_nu", "ex_tent", "ex_bf", "ex_b", "ex_sinc_series(N)", "j0_radial"};
}

// ------------------------------------------------------------ generator

std::vector<TestFunction> default_probe_family(const Window& k) {
  const double len = k.length() > 0.0 ? k.length() : 1.0;
  std::vector<TestFunction> out;
  for (double scale : {4.0, 8.0, 16.0}) {
    for (int j = 0; j < 5; ++j) {
      const double center = k.lo + (j + 1) * len / 6.0;
      out.push_back(tf_hat(center, len / scale, 1.0, len / scale / 64.0));
    }
  }
  return out;
}

Complex pairing(const TestFunction& g, const LocalBlock& part) {
  Complex v{};
  for (const auto& a : part.atoms) v += a.weight * g(a.position);
  for (const auto& p : part.pieces) v += p.value * g.integral(p.where.lo, p.where.hi);
  return v;
}

double part_variation(const LocalBlock& part, const Window& k) {
  std::vector<Atom> inside;
  for (const auto& a : part.atoms) {
    if (k.contains(a.position)) inside.push_back(a);
  }
  double total = 0.0;
  for (const auto& a : merge_atoms(std::move(inside))) total += std::abs(a.weight);

  std::vector<double> cuts;
  for (const auto& p : part.pieces) {
    if (auto i = intersect(p.where, k)) {
      cuts.push_back(i->lo);
      cuts.push_back(i->hi);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double mid = 0.5 * (cuts[i] + cuts[i + 1]);
    Complex v{};
    for (const auto& p : part.pieces) {
      if (p.where.lo <= mid && mid <= p.where.hi) v += p.value;
    }
    total += std::abs(v) * (cuts[i + 1] - cuts[i]);
  }
  return total;
}

HypothesisReport validate_prop51(const Prop51Input& input, const std::vector<TestFunction>& probes,
                                 const Prop51Options& options) {
  if (probes.empty()) throw std::invalid_argument("validate_prop51: probe family is empty");
  if (input.parts.size() != input.translates.size()) {
    throw std::invalid_argument("validate_prop51: one translate per part required");
  }
  HypothesisReport r;
  const std::size_t n = input.horizon();

  r.h_support = true;
  for (std::size_t i = 0; i < n && r.h_support; ++i) {
    const auto& part = input.parts[i];
    const bool atoms_ok = std::all_of(part.atoms.begin(), part.atoms.end(),
                                      [&](const Atom& a) { return input.k.contains(a.position); });
    const bool pieces_ok = std::all_of(part.pieces.begin(), part.pieces.end(), [&](const LocalBlock::Piece& p) {
      return input.k.contains(p.where.lo) && input.k.contains(p.where.hi);
    });
    if (!atoms_ok || !pieces_ok) {
      r.h_support = false;
      r.support_offender = i;
    }
  }

  std::vector<double> var(n);
  for (std::size_t i = 0; i < n; ++i) var[i] = part_variation(input.parts[i], input.k);
  r.bounded_sup = n ? *std::max_element(var.begin(), var.end()) : 0.0;
  if (n < 2) {
    r.h_bounded = true;
  } else {
    const auto mid = var.begin() + static_cast<std::ptrdiff_t>(n / 2);
    const double early = *std::max_element(var.begin(), mid);
    const double late = *std::max_element(mid, var.end());
    r.h_bounded = late <= options.growth_factor * early + 1e-12;
  }

  r.trace_start = (3 * n) / 4;
  r.worst_pairing = 0.0;
  for (std::size_t i = r.trace_start; i < n; ++i) {
    double m = 0.0;
    for (const auto& g : probes) m = std::max(m, std::abs(pairing(g, input.parts[i])));
    r.pairing_trace.push_back(m);
    r.worst_pairing = std::max(r.worst_pairing, m);
  }
  r.h_vague_null = r.worst_pairing < options.vague_tolerance;

  auto ts = input.translates;
  std::sort(ts.begin(), ts.end());
  r.min_translate_gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < ts.size(); ++i) r.min_translate_gap = std::min(r.min_translate_gap, ts[i] - ts[i - 1]);
  r.h_udiscrete = r.min_translate_gap > 0.0 && r.min_translate_gap >= options.gap_floor;

  r.overall = r.h_support && r.h_bounded && r.h_vague_null && r.h_udiscrete;
  return r;
}

HypothesisReport validate_prop51(const Prop51Input& input, const Prop51Options& options) {
  return validate_prop51(input, default_probe_family(input.k), options);
}

HypothesesViolated::HypothesesViolated(HypothesisReport r)
    : std::runtime_error("generator hypotheses violated"), report(std::move(r)) {}

Prop51Measure generate_prop51(const Prop51Input& input, bool override_hypotheses, const Prop51Options& options) {
  auto report = validate_prop51(input, options);
  if (!report.overall && !override_hypotheses) throw HypothesesViolated(std::move(report));

  auto blocks = std::make_shared<const std::vector<LocalBlock>>(input.parts);
  const bool any_atoms = std::any_of(blocks->begin(), blocks->end(), [](const LocalBlock& b) { return !b.atoms.empty(); });
  const bool any_pieces = std::any_of(blocks->begin(), blocks->end(), [](const LocalBlock& b) { return !b.pieces.empty(); });
  std::vector<MeasureExpr> terms;
  if (any_atoms) {
    terms.push_back(MeasureExpr::pure_point(
        std::make_shared<TranslatedAtomSource>(blocks, input.translates, input.k, "prop51_atoms")));
  }
  if (any_pieces) {
    terms.push_back(MeasureExpr::abs_cont(
        std::make_shared<TranslatedPiecesDensity>(blocks, input.translates, input.k, "prop51_density")));
  }
  Window covered{0.0, 0.0};
  if (!input.translates.empty()) {
    const auto [lo, hi] = std::minmax_element(input.translates.begin(), input.translates.end());
    covered = Window{*lo + input.k.lo, *hi + input.k.hi};
  }
  return {MeasureExpr::sum(std::move(terms)), covered, std::move(report)};
}

std::vector<double> alternating_translates(std::size_t count) {
  std::vector<double> t(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double n = static_cast<double>(i / 2 + 1);
    t[i] = (i % 2 == 0) ? n : -n;
  }
  return t;
}

Prop51Input decompose_ex_a(std::size_t pairs) {
  Prop51Input in;
  in.k = Window{-1.0, 1.0};
  in.translate_rule = "alternating";
  for (std::size_t i = 1; i <= pairs; ++i) {
    const double inv = 1.0 / static_cast<double>(i);
    in.parts.push_back({{{0.0, -1.0}, {inv, 1.0}}, {}});
    in.parts.push_back({{{-inv, 1.0}, {0.0, -1.0}}, {}});
  }
  in.translates = alternating_translates(2 * pairs);
  return in;
}

Prop51Input decompose_ex_b(std::size_t pairs) {
  Prop51Input in;
  in.k = Window{-1.0, 1.0};
  in.translate_rule = "zero_then_alternating";
  in.parts.push_back({{}, {{Window{-1.0, 1.0}, 1.0}}});
  in.translates.push_back(0.0);
  for (std::size_t i = 1; i <= pairs; ++i) {
    const double dn = static_cast<double>(i);
    LocalBlock right{{}, {{Window{0.0, 1.0}, 1.0}}};
    LocalBlock left{{}, {{Window{-1.0, 0.0}, 1.0}}};
    for (std::size_t k = 1; k <= i; ++k) {
      const double p = static_cast<double>(k) / dn;
      right.atoms.push_back({p, -1.0 / dn});
      left.atoms.push_back({-p, -1.0 / dn});
    }
    in.parts.push_back(std::move(right));
    in.parts.push_back(std::move(left));
  }
  const auto alt = alternating_translates(2 * pairs);
  in.translates.insert(in.translates.end(), alt.begin(), alt.end());
  return in;
}

Prop51Input decompose_ex_bf(std::size_t blocks) {
  if (blocks > 24) throw std::invalid_argument("decompose_ex_bf: at most 24 blocks (2^n pieces each)");
  Prop51Input in;
  in.k = Window{0.0, 1.0};
  in.translate_rule = "identity";
  for (std::size_t n = 1; n <= blocks; ++n) {
    LocalBlock b;
    const std::size_t count = std::size_t{1} << n;
    const double w = std::ldexp(1.0, -static_cast<int>(n));
    for (std::size_t k = 0; k < count; ++k) {
      b.pieces.push_back({Window{static_cast<double>(k) * w, static_cast<double>(k + 1) * w}, (k % 2 == 0) ? 1.0 : -1.0});
    }
    in.parts.push_back(std::move(b));
    in.translates.push_back(static_cast<double>(n));
  }
  return in;
}

Prop51Input decompose_nu(std::size_t blocks) {
  Prop51Input in;
  in.k = Window{0.0, 1.0};
  in.translate_rule = "identity";
  for (std::size_t n = 1; n <= blocks; ++n) {
    const double dn = static_cast<double>(n);
    LocalBlock b;
    for (std::size_t k = 0; k < n; ++k) b.atoms.push_back({static_cast<double>(k) / dn, 1.0 / dn});
    in.parts.push_back(std::move(b));
    in.translates.push_back(dn);
  }
  return in;
}

Prop51Input constant_delta_input(std::size_t count) {
  Prop51Input in;
  in.k = Window{-1.0, 1.0};
  in.translate_rule = "identity";
  for (std::size_t n = 1; n <= count; ++n) {
    in.parts.push_back({{{0.0, 1.0}}, {}});
    in.translates.push_back(static_cast<double>(n));
  }
  return in;
}

}  // namespace vanishkit
