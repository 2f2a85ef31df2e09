#include "vanishkit/measure_spec.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>

namespace vanishkit {

namespace {

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

[[noreturn]] void fail(const std::string& path, const std::string& what) { throw SpecError(path + ": " + what); }

void only_keys(const Json& j, const std::string& path, std::initializer_list<std::string_view> allowed) {
  if (!j.is_object()) fail(path, "expected an object");
  for (const auto& [key, _] : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) fail(path, "unknown key '" + key + "'");
  }
}

const Json& need(const Json& j, const std::string& path, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) fail(path, std::string("missing key '") + key + "'");
  return *it;
}

double number(const Json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(path, "expected a finite number");
  return v;
}

double number_or(const Json& j, const std::string& path, const char* key, double fallback) {
  auto it = j.find(key);
  return it == j.end() ? fallback : number(*it, path + "." + key);
}

Complex complex_value(const Json& j, const std::string& path) {
  if (j.is_number()) return number(j, path);
  if (j.is_array() && j.size() == 2) return {number(j[0], path + "[0]"), number(j[1], path + "[1]")};
  fail(path, "expected a number or [re, im]");
}

std::vector<Atom> atom_list(const Json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected a list of [pos, re, im]");
  std::vector<Atom> atoms;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto p = path + "[" + std::to_string(i) + "]";
    const auto& a = j[i];
    if (!a.is_array() || a.size() < 2 || a.size() > 3) fail(p, "expected [pos, re] or [pos, re, im]");
    atoms.push_back({number(a[0], p), {number(a[1], p), a.size() == 3 ? number(a[2], p) : 0.0}});
  }
  return atoms;
}

Window window_value(const Json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2) fail(path, "expected [lo, hi]");
  const double lo = number(j[0], path), hi = number(j[1], path);
  if (!(lo <= hi)) fail(path, "expected lo <= hi");
  return {lo, hi};
}

std::string string_value(const Json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

MeasureExpr expr_from_json(const Json& e, const std::string& path) {
  if (!e.is_object()) fail(path, "expected an object");
  const std::string kind = string_value(need(e, path, "kind"), path + ".kind");
  if (kind == "sum") {
    only_keys(e, path, {"kind", "terms"});
    const auto& terms = need(e, path, "terms");
    if (!terms.is_array()) fail(path + ".terms", "expected a list");
    std::vector<MeasureExpr> children;
    for (std::size_t i = 0; i < terms.size(); ++i) {
      children.push_back(expr_from_json(terms[i], path + ".terms[" + std::to_string(i) + "]"));
    }
    return MeasureExpr::sum(std::move(children));
  }
  if (kind == "translate") {
    only_keys(e, path, {"kind", "t", "child"});
    return MeasureExpr::translate(number(need(e, path, "t"), path + ".t"),
                                  expr_from_json(need(e, path, "child"), path + ".child"));
  }
  if (kind == "reflect") {
    only_keys(e, path, {"kind", "child"});
    return MeasureExpr::reflect_conj(expr_from_json(need(e, path, "child"), path + ".child"));
  }
  if (kind == "scale") {
    only_keys(e, path, {"kind", "c", "child"});
    return MeasureExpr::scale(complex_value(need(e, path, "c"), path + ".c"),
                              expr_from_json(need(e, path, "child"), path + ".child"));
  }
  if (kind == "example") {
    only_keys(e, path, {"kind", "name"});
    const auto name = string_value(need(e, path, "name"), path + ".name");
    try {
      return build_example(name);
    } catch (const UnknownExample& ex) {
      fail(path + ".name", ex.what());
    }
  }
  if (kind == "pp") {
    const std::string b = string_value(need(e, path, "builder"), path + ".builder");
    if (b == "ex_a" || b == "ex_nu") {
      only_keys(e, path, {"kind", "builder"});
      return build_example(b);
    }
    if (b == "riemann_comb") {
      only_keys(e, path, {"kind", "builder"});
      return MeasureExpr::pure_point(std::make_shared<RiemannCombAtoms>());
    }
    if (b == "lattice") {
      only_keys(e, path, {"kind", "builder", "spacing", "offset", "weights", "seed"});
      const double spacing = number_or(e, path, "spacing", 1.0);
      if (!(spacing > 0.0)) fail(path + ".spacing", "must be positive");
      LatticeWeights w = LatticeWeights::one;
      if (auto it = e.find("weights"); it != e.end()) {
        const auto s = string_value(*it, path + ".weights");
        if (s == "one") w = LatticeWeights::one;
        else if (s == "inverse") w = LatticeWeights::inverse;
        else if (s == "rademacher") w = LatticeWeights::rademacher;
        else fail(path + ".weights", "expected one, inverse or rademacher");
      }
      std::uint64_t seed = 0;
      if (auto it = e.find("seed"); it != e.end()) {
        if (!it->is_number_unsigned()) fail(path + ".seed", "expected a nonnegative integer");
        seed = it->get<std::uint64_t>();
      }
      return lattice_comb(spacing, number_or(e, path, "offset", 0.0), w, seed);
    }
    if (b == "finite_atoms") {
      only_keys(e, path, {"kind", "builder", "atoms"});
      return finite_atoms(atom_list(need(e, path, "atoms"), path + ".atoms"));
    }
    fail(path + ".builder", "unknown pure-point builder '" + b + "'");
  }
  if (kind == "ac") {
    const std::string b = string_value(need(e, path, "builder"), path + ".builder");
    if (b == "ex_bf" || b == "ex_tent" || b == "j0_radial") {
      only_keys(e, path, {"kind", "builder"});
      return build_example(b);
    }
    if (b == "lebesgue") {
      only_keys(e, path, {"kind", "builder"});
      return lebesgue();
    }
    if (b == "indicator") {
      only_keys(e, path, {"kind", "builder", "interval", "value"});
      const Window w = window_value(need(e, path, "interval"), path + ".interval");
      Complex v = 1.0;
      if (auto it = e.find("value"); it != e.end()) v = complex_value(*it, path + ".value");
      return indicator_measure(w.lo, w.hi, v);
    }
    if (b == "triangle") {
      only_keys(e, path, {"kind", "builder", "center", "halfwidth", "height"});
      const double hw = number_or(e, path, "halfwidth", 1.0);
      if (!(hw > 0.0)) fail(path + ".halfwidth", "must be positive");
      return triangle_measure(number_or(e, path, "center", 0.0), hw, number_or(e, path, "height", 1.0));
    }
    fail(path + ".builder", "unknown density builder '" + b + "'");
  }
  fail(path + ".kind", "unknown kind '" + kind + "'");
}

}  // namespace

Json parse_json_text(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    const auto [line, col] = line_column(text, e.byte > 0 ? e.byte - 1 : 0);
    throw SpecError("malformed JSON at line " + std::to_string(line) + ", column " + std::to_string(col) + ": " +
                    e.what());
  }
}

MeasureExpr measure_from_json(const Json& spec) {
  only_keys(spec, "spec", {"expr"});
  return expr_from_json(need(spec, "spec", "expr"), "expr");
}

MeasureExpr parse_measure_spec(std::string_view text) { return measure_from_json(parse_json_text(text)); }

std::vector<double> translates_for_rule(std::string_view rule, std::size_t count) {
  std::vector<double> t;
  if (rule == "identity") {
    for (std::size_t i = 1; i <= count; ++i) t.push_back(static_cast<double>(i));
  } else if (rule == "alternating") {
    t = alternating_translates(count);
  } else if (rule == "zero_then_alternating") {
    if (count > 0) {
      t.push_back(0.0);
      auto rest = alternating_translates(count - 1);
      t.insert(t.end(), rest.begin(), rest.end());
    }
  } else {
    throw SpecError("unknown translate rule '" + std::string(rule) + "'");
  }
  return t;
}

Json to_json(const Prop51Input& in) {
  Json j;
  j["k"] = {in.k.lo, in.k.hi};
  j["translate_rule"] = in.translate_rule;
  Json parts = Json::array();
  for (const auto& p : in.parts) {
    Json atoms = Json::array(), pieces = Json::array();
    for (const auto& a : p.atoms) atoms.push_back({a.position, a.weight.real(), a.weight.imag()});
    for (const auto& q : p.pieces) pieces.push_back({q.where.lo, q.where.hi, q.value.real(), q.value.imag()});
    parts.push_back({{"atoms", std::move(atoms)}, {"pieces", std::move(pieces)}});
  }
  j["parts"] = std::move(parts);
  if (in.translate_rule == "explicit") j["translates"] = in.translates;
  return j;
}

Prop51Input prop51_from_json(const Json& j) {
  const std::string path = "prop51";
  only_keys(j, path, {"k", "translate_rule", "parts", "translates"});
  Prop51Input in;
  in.k = window_value(need(j, path, "k"), path + ".k");
  if (auto it = j.find("translate_rule"); it != j.end()) in.translate_rule = string_value(*it, path + ".translate_rule");
  const auto& parts = need(j, path, "parts");
  if (!parts.is_array()) fail(path + ".parts", "expected a list");
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const auto p = path + ".parts[" + std::to_string(i) + "]";
    only_keys(parts[i], p, {"atoms", "pieces"});
    LocalBlock b;
    if (auto it = parts[i].find("atoms"); it != parts[i].end()) b.atoms = atom_list(*it, p + ".atoms");
    if (auto it = parts[i].find("pieces"); it != parts[i].end()) {
      if (!it->is_array()) fail(p + ".pieces", "expected a list of [lo, hi, re, im]");
      for (std::size_t k = 0; k < it->size(); ++k) {
        const auto& q = (*it)[k];
        const auto qp = p + ".pieces[" + std::to_string(k) + "]";
        if (!q.is_array() || q.size() < 3 || q.size() > 4) fail(qp, "expected [lo, hi, re] or [lo, hi, re, im]");
        const double lo = number(q[0], qp), hi = number(q[1], qp);
        if (!(lo <= hi)) fail(qp, "expected lo <= hi");
        b.pieces.push_back({Window{lo, hi}, {number(q[2], qp), q.size() == 4 ? number(q[3], qp) : 0.0}});
      }
    }
    in.parts.push_back(std::move(b));
  }
  if (in.translate_rule == "explicit") {
    const auto& t = need(j, path, "translates");
    if (!t.is_array() || t.size() != in.parts.size()) fail(path + ".translates", "expected one translate per part");
    for (std::size_t i = 0; i < t.size(); ++i) in.translates.push_back(number(t[i], path + ".translates"));
  } else {
    if (j.contains("translates")) fail(path + ".translates", "only allowed with the explicit rule");
    in.translates = translates_for_rule(in.translate_rule, in.parts.size());
  }
  return in;
}

}  // namespace vanishkit
