#include "vanishkit/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "vanishkit/acceptance.hpp"
#include "vanishkit/analysis.hpp"
#include "vanishkit/constructions.hpp"
#include "vanishkit/convolution.hpp"
#include "vanishkit/fourier.hpp"
#include "vanishkit/measure_spec.hpp"
#include "vanishkit/report_io.hpp"

namespace vanishkit {

namespace {

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

std::string trim_left(const std::string& s) {
  const auto p = s.find_first_not_of(" \t\r\n");
  return p == std::string::npos ? std::string{} : s.substr(p);
}

std::optional<std::string> read_spec_text(const std::string& spec) {
  const auto t = trim_left(spec);
  if (!t.empty() && t.front() == '{') return spec;
  std::error_code ec;
  if (std::filesystem::is_regular_file(spec, ec)) {
    std::ifstream in(spec);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
  return std::nullopt;
}

MeasureExpr load_measure(const RunConfig& c) {
  if (c.measure_spec.empty()) throw UsageError("--spec is required for '" + c.command + "'");
  if (auto text = read_spec_text(c.measure_spec)) return parse_measure_spec(*text);
  return build_example(c.measure_spec);
}

TestFunction make_test_function(const TestFunctionConfig& f) {
  if (!(f.halfwidth > 0.0)) throw UsageError("--f-halfwidth must be positive");
  if (f.step < 0.0) throw UsageError("--f-step must be positive");
  if (f.shape == "hat") return tf_hat(f.center, f.halfwidth, f.height, f.step);
  if (f.shape == "indicator") {
    const double step = f.step > 0.0 ? f.step : f.halfwidth / 1024.0;
    return tf_scaled(tf_indicator(f.center - f.halfwidth, f.center + f.halfwidth, step), f.height);
  }
  throw UsageError("--f-shape must be hat or indicator");
}

Grid grid_or(const RunConfig& c, double lo, double hi, double step) {
  std::vector<double> g = c.grid.empty() ? std::vector<double>{lo, hi, step} : c.grid;
  if (g.size() != 3) throw UsageError("--grid expects lo,hi,step");
  if (!(g[0] <= g[1]) || !(g[2] > 0.0)) throw UsageError("--grid needs lo <= hi and step > 0");
  return Grid::with_step(Window{g[0], g[1]}, g[2]);
}

std::vector<double> radii_or(const RunConfig& c, std::vector<double> fallback) {
  const auto& r = c.radii.empty() ? fallback : c.radii;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (!(r[i] >= 0.0) || (i > 0 && !(r[i] > r[i - 1]))) throw UsageError("--radii must be increasing and >= 0");
  }
  return r;
}

void positive(double v, const char* flag) {
  if (!(v > 0.0) || !std::isfinite(v)) throw UsageError(std::string(flag) + " must be positive");
}

bool json_format(const RunConfig& c) {
  if (c.format == "json") return true;
  if (c.format == "csv") return false;
  throw UsageError("--format must be csv or json");
}

int profile_status(const DecayProfile& p) { return p.verdict == Verdict::vanishing ? 0 : 2; }

int cmd_convolve(const RunConfig& c, std::ostream& os) {
  const auto mu = load_measure(c);
  const auto f = make_test_function(c.f);
  const auto s = convolve_grid(mu, f, grid_or(c, -5.0, 5.0, 0.01));
  if (json_format(c)) {
    os << Json{{"rows", to_json(s)}}.dump(2) << '\n';
  } else {
    write_sampled_csv(os, s);
  }
  return 0;
}

int cmd_decay(const RunConfig& c, std::ostream& os, bool autocorrelated) {
  const auto mu = load_measure(c);
  const auto f = make_test_function(c.f);
  positive(c.epsilon, "--epsilon");
  if (c.annulus_step < 0.0) throw UsageError("--annulus-step must be positive");
  const auto radii = radii_or(c, {10.0, 100.0, 1000.0});
  const auto p = autocorrelated ? rajchman_check(mu, f, radii, c.epsilon, c.annulus_step)
                                : decay_profile(mu, f, radii, c.epsilon, c.annulus_step);
  if (json_format(c)) {
    os << to_json(p).dump(2) << '\n';
  } else {
    write_profile_csv(os, p);
  }
  return profile_status(p);
}

int cmd_coeffs(const RunConfig& c, std::ostream& os) {
  const auto mu = load_measure(c);
  positive(c.epsilon, "--epsilon");
  positive(c.r_max, "--rmax");
  const auto r = coefficients_vanishing(mu, c.epsilon, c.r_max);
  if (json_format(c)) {
    os << to_json(r).dump(2) << '\n';
  } else {
    os << "verdict,radius,scanned,violators\n"
       << to_string(r.verdict) << ',' << (r.radius ? fmt17(*r.radius) : std::string{}) << ',' << r.scanned << ','
       << r.violators << '\n';
  }
  return r.verdict == Verdict::vanishing ? 0 : 2;
}

int cmd_mean(const RunConfig& c, std::ostream& os) {
  const auto mu = load_measure(c);
  const auto f = make_test_function(c.f);
  const std::vector<int> ns = c.n_list.empty() ? std::vector<int>{10, 100, 1000} : c.n_list;
  const auto t = mean_abs(mu, f, ns, c.tolerance.value_or(1e-6));
  if (json_format(c)) {
    os << to_json(t).dump(2) << '\n';
  } else {
    write_mean_csv(os, t);
  }
  return 0;
}

int cmd_fourier(const RunConfig& c, std::ostream& os) {
  const std::string mode = c.mode.empty() ? "series" : c.mode;
  const auto grid = grid_or(c, -5.0, 5.0, 0.01);
  std::vector<std::pair<double, double>> rows;
  Json j = Json::array();
  auto emit = [&](double k, Complex v, double csv_value) {
    rows.emplace_back(k, csv_value);
    j.push_back({{"k", k}, {"re", v.real()}, {"im", v.imag()}});
  };
  if (mode == "series") {
    if (c.truncation < 0) throw UsageError("--truncation must be >= 0");
    for (double k : grid.nodes()) {
      const double v = series_density(k, c.truncation);
      emit(k, v, v);
    }
  } else if (mode == "exp_sum") {
    positive(c.r_max, "--rmax");
    const auto atoms = atoms_in(load_measure(c), Window{-c.r_max, c.r_max});
    for (double k : grid.nodes()) {
      const Complex v = exp_sum(atoms, k);
      emit(k, v, std::abs(v));
    }
  } else if (mode == "ft") {
    const auto f = make_test_function(c.f);
    for (double k : grid.nodes()) {
      const Complex v = ft_compact(f, k);
      emit(k, v, std::abs(v));
    }
  } else {
    throw UsageError("--mode for fourier must be series, exp_sum or ft");
  }
  if (json_format(c)) {
    Json out{{"mode", mode}, {"rows", std::move(j)}};
    if (mode == "series") out["tail_bound"] = series_tail_bound(c.truncation);
    os << out.dump(2) << '\n';
  } else {
    write_spectral_csv(os, rows);
  }
  return 0;
}

int cmd_bessel(const RunConfig& c, std::ostream& os) {
  const auto grid = grid_or(c, 0.0, 10.0, 0.1);
  if (grid.range.lo < 0.0) throw UsageError("bessel radii must be >= 0");
  if (c.quad_points < 64) throw UsageError("--quad-points must be at least 64");
  const double tol = c.tolerance.value_or(1e-8);
  double worst = 0.0;
  Json rows = Json::array();
  std::ostringstream csv;
  csv << "r,lhs,rhs,deviation\n";
  for (double r : grid.nodes()) {
    const auto b = bessel_j0_check(r, c.quad_points);
    const double d = std::abs(b.lhs - b.rhs);
    worst = std::max(worst, d);
    rows.push_back({{"r", r}, {"lhs", b.lhs}, {"rhs", b.rhs}, {"deviation", d}});
    csv << fmt17(r) << ',' << fmt17(b.lhs) << ',' << fmt17(b.rhs) << ',' << fmt17(d) << '\n';
  }
  if (json_format(c)) {
    os << Json{{"max_deviation", worst}, {"tolerance", tol}, {"rows", std::move(rows)}}.dump(2) << '\n';
  } else {
    os << csv.str();
  }
  return worst <= tol ? 0 : 2;
}

int cmd_rlcheck(const RunConfig& c, std::ostream& os) {
  const auto f = make_test_function(c.f);
  const std::string mode = c.mode.empty() ? "series" : c.mode;
  // without --spec the measure is the one whose transform is the chosen density
  SpectralDensity d;
  MeasureExpr partner;
  if (mode == "series") {
    if (c.truncation < 0) throw UsageError("--truncation must be >= 0");
    d = series_spectral_density(c.truncation);
    partner = sinc_series_measure(c.truncation);
  } else if (mode == "constant") {
    d = constant_spectral_density(1.0);
    partner = delta(0.0);
  } else if (mode == "sinc2") {
    d = sinc2_spectral_density();
    partner = triangle_measure(0.0, 1.0, 1.0);
  } else {
    throw UsageError("--mode for rlcheck must be series, constant or sinc2");
  }
  const auto mu = c.measure_spec.empty() ? partner : load_measure(c);
  const double tol = c.tolerance.value_or(1e-4);
  positive(tol, "--tolerance");
  const auto r = rl_crosscheck(mu, d, f, grid_or(c, -3.0, 3.0, 0.05).nodes(), tol);
  if (json_format(c)) {
    Json j = to_json(r);
    j["density"] = d.descriptor;
    j["tolerance"] = tol;
    os << j.dump(2) << '\n';
  } else {
    os << "x,direct_re,direct_im,spectral_re,spectral_im,deviation\n";
    for (std::size_t i = 0; i < r.x.size(); ++i) {
      os << fmt17(r.x[i]) << ',' << fmt17(r.direct[i].real()) << ',' << fmt17(r.direct[i].imag()) << ','
         << fmt17(r.spectral[i].real()) << ',' << fmt17(r.spectral[i].imag()) << ','
         << fmt17(std::abs(r.direct[i] - r.spectral[i])) << '\n';
    }
  }
  return r.max_deviation <= tol ? 0 : 2;
}

Prop51Input load_prop51(const RunConfig& c) {
  if (c.measure_spec.empty()) throw UsageError("--spec is required for 'prop51'");
  if (auto text = read_spec_text(c.measure_spec)) {
    if (c.count != 0) throw UsageError("--count applies only to named decompositions");
    const Json j = parse_json_text(*text);
    return prop51_from_json(j.contains("prop51") && j.size() == 1 ? j["prop51"] : j);
  }
  const auto& name = c.measure_spec;
  auto n = [&](std::size_t fallback) { return c.count ? c.count : fallback; };
  if (name == "ex_a") return decompose_ex_a(n(12000));
  if (name == "ex_b") return decompose_ex_b(n(200));
  if (name == "ex_bf") return decompose_ex_bf(n(16));
  if (name == "nu" || name == "ex_nu") return decompose_nu(n(400));
  if (name == "constant_delta") return constant_delta_input(n(100));
  throw UsageError("unknown decomposition '" + name + "' (ex_a, ex_b, ex_bf, nu, constant_delta, or a JSON input)");
}

int cmd_prop51(const RunConfig& c, std::ostream& os) {
  const auto input = load_prop51(c);
  Json j;
  j["k"] = {input.k.lo, input.k.hi};
  j["translate_rule"] = input.translate_rule;
  j["horizon"] = input.horizon();
  int status = 0;
  try {
    const auto g = generate_prop51(input, c.override_hypotheses);
    j["hypotheses"] = to_json(g.hypotheses);
    j["generated"] = true;
    j["covered"] = {g.covered.lo, g.covered.hi};
    if (!g.hypotheses.overall) status = 2;
    if (c.verdict) {
      const double reach = std::min(std::abs(g.covered.lo), std::abs(g.covered.hi));
      const double r_max = reach - input.k.length();
      if (!(r_max > 0.0)) throw UsageError("covered range too small for a vanishing verdict");
      const auto v = vanishing_verdict(g.measure, default_family(), c.epsilon, r_max);
      j["vanishing"] = to_json(v);
      j["vanishing"]["R_max"] = r_max;
      if (v.verdict != Verdict::vanishing) status = 2;
    }
  } catch (const HypothesesViolated& e) {
    j["hypotheses"] = to_json(e.report);
    j["generated"] = false;
    status = 2;
  }
  os << j.dump(2) << '\n';
  return status;
}

int cmd_suite(const RunConfig& c, std::ostream& os) {
  const auto seed = c.seed ? *c.seed : seed_from_env();
  const auto results = run_acceptance(seed);
  bool all = true;
  Json j = Json::array();
  std::ostringstream text;
  for (const auto& r : results) {
    all = all && r.passed();
    text << format_result(r) << '\n';
    j.push_back({{"id", r.id},
                 {"name", r.name},
                 {"passed", r.passed()},
                 {"seconds", r.seconds},
                 {"budget_seconds", r.budget_seconds},
                 {"detail", r.detail}});
  }
  if (json_format(c)) {
    os << Json{{"seed", seed}, {"criteria", std::move(j)}}.dump(2) << '\n';
  } else {
    os << text.str();
  }
  return all ? 0 : 2;
}

int dispatch(const RunConfig& c, std::ostream& os) {
  if (c.command == "convolve") return cmd_convolve(c, os);
  if (c.command == "decay") return cmd_decay(c, os, false);
  if (c.command == "rajchman") return cmd_decay(c, os, true);
  if (c.command == "coeffs") return cmd_coeffs(c, os);
  if (c.command == "mean") return cmd_mean(c, os);
  if (c.command == "fourier") return cmd_fourier(c, os);
  if (c.command == "bessel") return cmd_bessel(c, os);
  if (c.command == "rlcheck") return cmd_rlcheck(c, os);
  if (c.command == "prop51") return cmd_prop51(c, os);
  if (c.command == "suite") return cmd_suite(c, os);
  throw UsageError("unknown command '" + c.command + "'");
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  std::ostringstream buffer;
  int status = 0;
  try {
    status = dispatch(config, buffer);
  } catch (const QuadratureError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const TruncationTailTooLarge& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  if (config.out.empty()) {
    out << buffer.str();
  } else {
    std::ofstream file(config.out, std::ios::binary);
    if (!file) {
      err << "error: cannot write " << config.out << '\n';
      return 1;
    }
    file << buffer.str();
  }
  return status;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Translation-bounded measures on the real line: convolution decay, means and transforms"};
  app.require_subcommand(1);
  RunConfig c;
  unsigned long long seed = 0;

  auto common = [&](CLI::App* s, bool measure, bool test_function) {
    if (measure) s->add_option("--spec", c.measure_spec, "Measure spec: inline JSON, JSON file, or example name");
    if (test_function) {
      s->add_option("--f-shape", c.f.shape, "Test function shape (hat, indicator)");
      s->add_option("--f-center", c.f.center, "Test function center");
      s->add_option("--f-halfwidth", c.f.halfwidth, "Test function half-width");
      s->add_option("--f-height", c.f.height, "Test function height");
      s->add_option("--f-step", c.f.step, "Sample step (default halfwidth/1024)");
    }
    s->add_option("--out", c.out, "Output file (default stdout)");
    s->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  };
  auto grid = [&](CLI::App* s, const char* what) {
    s->add_option("--grid", c.grid, what)->delimiter(',')->expected(3);
  };

  auto* convolve = app.add_subcommand("convolve", "Sample mu * f on a grid");
  common(convolve, true, true);
  grid(convolve, "lo,hi,step of the x grid (default -5,5,0.01)");

  for (const char* name : {"decay", "rajchman"}) {
    auto* s = app.add_subcommand(name, std::string(name) == "decay" ? "Decay profile of |mu * f| over annuli"
                                                                    : "Decay profile of |mu * f * f~| over annuli");
    common(s, true, true);
    s->add_option("--radii", c.radii, "Annulus radii (default 10,100,1000)")->delimiter(',');
    s->add_option("--epsilon", c.epsilon, "Vanishing threshold");
    s->add_option("--annulus-step", c.annulus_step, "Grid step on the annuli (default f step / 2)");
  }

  auto* coeffs = app.add_subcommand("coeffs", "Decay of the atom weights");
  common(coeffs, true, false);
  coeffs->add_option("--epsilon", c.epsilon, "Weight threshold");
  coeffs->add_option("--rmax", c.r_max, "Scan radius");

  auto* mean = app.add_subcommand("mean", "Averages of |mu * f| over [-n, n]");
  common(mean, true, true);
  mean->add_option("--nlist", c.n_list, "Interval half-lengths (default 10,100,1000)")->delimiter(',');
  mean->add_option("--tolerance", c.tolerance, "Largest accepted quadrature error estimate");

  auto* fourier = app.add_subcommand("fourier", "Transforms on a frequency grid");
  common(fourier, true, true);
  grid(fourier, "lo,hi,step of the k grid (default -5,5,0.01)");
  fourier->add_option("--mode", c.mode, "series, exp_sum or ft")->check(CLI::IsMember({"series", "exp_sum", "ft"}));
  fourier->add_option("--truncation", c.truncation, "Series truncation N");
  fourier->add_option("--rmax", c.r_max, "Atoms in [-rmax, rmax] for exp_sum");

  auto* bessel = app.add_subcommand("bessel", "Bessel J0 against the circle integral");
  common(bessel, false, false);
  grid(bessel, "lo,hi,step of r (default 0,10,0.1)");
  bessel->add_option("--quad-points", c.quad_points, "Trapezoid points on the circle");
  bessel->add_option("--tolerance", c.tolerance, "Largest accepted deviation (default 1e-8)");

  auto* rl = app.add_subcommand("rlcheck", "Direct against spectral evaluation of mu * f * f~");
  common(rl, true, true);
  grid(rl, "lo,hi,step of x (default -3,3,0.05)");
  rl->add_option("--mode", c.mode, "Spectral density: series, constant or sinc2 (sets the default --spec)")
      ->check(CLI::IsMember({"series", "constant", "sinc2"}));
  rl->add_option("--truncation", c.truncation, "Series truncation N");
  rl->add_option("--tolerance", c.tolerance, "Largest accepted deviation (default 1e-4)");

  auto* p51 = app.add_subcommand("prop51", "Validate and generate a sum of translated local measures");
  common(p51, true, false);
  p51->add_option("--count", c.count, "Size of a named decomposition");
  p51->add_flag("--override", c.override_hypotheses, "Generate even when hypotheses fail");
  p51->add_flag("--verdict", c.verdict, "Run the family vanishing verdict on the generated measure");
  p51->add_option("--epsilon", c.epsilon, "Vanishing threshold for --verdict");

  auto* suite = app.add_subcommand("suite", "Run the acceptance criteria");
  common(suite, false, false);
  auto* seed_opt = suite->add_option("--seed", seed, "Seed for the randomized criteria (default VANISHKIT_SEED)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  for (auto* s : app.get_subcommands()) c.command = s->get_name();
  if (seed_opt->count() > 0) c.seed = seed;
  return run(c, out, err);
}

}  // namespace vanishkit
