#include "vanishkit/report_io.hpp"

#include <charconv>
#include <cmath>

namespace vanishkit {

std::string fmt17(double v) {
  char buf[40];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  if (ec != std::errc{}) return "nan";
  return {buf, ptr};
}

void write_sampled_csv(std::ostream& os, const SampledFunction& s) {
  os << "x,re,im\n";
  for (std::size_t i = 0; i < s.x.size(); ++i) {
    os << fmt17(s.x[i]) << ',' << fmt17(s.value[i].real()) << ',' << fmt17(s.value[i].imag()) << '\n';
  }
}

void write_profile_csv(std::ostream& os, const DecayProfile& p) {
  os << "R,sup\n";
  for (const auto& e : p.entries) os << fmt17(e.radius) << ',' << fmt17(e.sup) << '\n';
}

void write_mean_csv(std::ostream& os, const MeanTrace& t) {
  os << "n,average\n";
  for (const auto& e : t.entries) os << e.n << ',' << fmt17(e.average) << '\n';
}

void write_spectral_csv(std::ostream& os, const std::vector<std::pair<double, double>>& rows) {
  os << "k,value\n";
  for (const auto& [k, v] : rows) os << fmt17(k) << ',' << fmt17(v) << '\n';
}

namespace {
Json number_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }
}  // namespace

Json to_json(const DecayProfile& p) {
  Json j;
  j["verdict"] = std::string(to_string(p.verdict));
  j["epsilon"] = p.epsilon;
  j["K_eps_estimate"] = p.k_eps ? Json(*p.k_eps) : Json(nullptr);
  j["annulus_step"] = p.annulus_step;
  Json entries = Json::array();
  for (const auto& e : p.entries) entries.push_back({{"R", e.radius}, {"sup", e.sup}, {"upper_bound", e.upper_bound}});
  j["entries"] = std::move(entries);
  return j;
}

Json to_json(const FamilyVerdict& v) {
  Json j;
  j["verdict"] = std::string(to_string(v.verdict));
  j["worst"] = v.worst;
  Json ps = Json::array();
  for (const auto& p : v.profiles) ps.push_back(to_json(p));
  j["profiles"] = std::move(ps);
  return j;
}

Json to_json(const MeanTrace& t) {
  Json j;
  j["limit_estimate"] = t.limit_estimate;
  Json entries = Json::array();
  for (const auto& e : t.entries) entries.push_back({{"n", e.n}, {"average", e.average}, {"error", e.error}});
  j["entries"] = std::move(entries);
  return j;
}

Json to_json(const CoefficientReport& r) {
  Json j;
  j["verdict"] = std::string(to_string(r.verdict));
  j["radius"] = r.radius ? Json(*r.radius) : Json(nullptr);
  j["scanned"] = r.scanned;
  j["violators"] = r.violators;
  j["heuristic"] = r.heuristic;
  return j;
}

Json to_json(const PropCReport& r) {
  Json j;
  j["applicable"] = r.applicable;
  j["min_gap"] = number_or_null(r.gap);
  j["coefficient_verdict"] = std::string(to_string(r.coefficient_verdict));
  j["decay_verdict"] = std::string(to_string(r.decay_verdict));
  j["agree"] = r.agree;
  if (r.applicable) {
    j["coefficients"] = to_json(r.coefficients);
    j["profile"] = to_json(r.profile);
  }
  return j;
}

Json to_json(const RLReport& r) {
  Json j;
  j["max_deviation"] = r.max_deviation;
  j["cutoff"] = r.cutoff;
  j["cutoff_tail"] = r.cutoff_tail;
  j["truncation_tail"] = r.truncation_tail;
  j["panels"] = r.panels;
  Json rows = Json::array();
  for (std::size_t i = 0; i < r.x.size(); ++i) {
    rows.push_back({{"x", r.x[i]},
                    {"direct_re", r.direct[i].real()},
                    {"direct_im", r.direct[i].imag()},
                    {"spectral_re", r.spectral[i].real()},
                    {"spectral_im", r.spectral[i].imag()},
                    {"deviation", std::abs(r.direct[i] - r.spectral[i])}});
  }
  j["rows"] = std::move(rows);
  return j;
}

Json to_json(const HypothesisReport& r) {
  Json j;
  j["h_support"] = r.h_support;
  j["support_offender"] = r.support_offender ? Json(*r.support_offender) : Json(nullptr);
  j["h_bounded"] = r.h_bounded;
  j["bounded_sup"] = r.bounded_sup;
  j["h_vague_null"] = r.h_vague_null;
  j["worst_pairing"] = r.worst_pairing;
  j["trace_start"] = r.trace_start;
  j["pairing_trace"] = r.pairing_trace;
  j["h_udiscrete"] = r.h_udiscrete;
  j["min_translate_gap"] = number_or_null(r.min_translate_gap);
  j["overall"] = r.overall;
  return j;
}

Json to_json(const SampledFunction& s) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < s.x.size(); ++i) {
    rows.push_back({{"x", s.x[i]}, {"re", s.value[i].real()}, {"im", s.value[i].imag()}});
  }
  return rows;
}

}  // namespace vanishkit
