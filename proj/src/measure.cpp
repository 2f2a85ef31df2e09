#include "vanishkit/measure.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace vanishkit {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double slack(const Window& w, double shift) {
  return 1e-14 * (1.0 + std::abs(w.lo) + std::abs(w.hi) + std::abs(shift));
}

}  // namespace

MeasureExpr::MeasureExpr() : MeasureExpr(Node{node::Sum{}}) {}

MeasureExpr::MeasureExpr(Node n) : node_(std::make_shared<const Node>(std::move(n))) {
  hull_ = std::visit(
      overloaded{
          [](const node::PurePoint& p) { return p.source->support(); },
          [](const node::AbsCont& p) { return p.source->support(); },
          [](const node::Translate& p) -> std::optional<Window> {
            if (auto h = p.child->hull()) return h->shifted(p.t);
            return std::nullopt;
          },
          [](const node::ReflectConj& p) -> std::optional<Window> {
            if (auto h = p.child->hull()) return h->reflected();
            return std::nullopt;
          },
          [](const node::Scale& p) { return p.child->hull(); },
          [](const node::Sum& p) -> std::optional<Window> {
            std::optional<Window> h;
            for (const auto& c : p.children) {
              if (c.is_zero()) continue;
              if (!c.hull()) return std::nullopt;
              h = h ? vanishkit::hull(*h, *c.hull()) : *c.hull();
            }
            return h ? h : std::optional<Window>{Window{0.0, 0.0}};
          },
      },
      *node_);
}

MeasureExpr MeasureExpr::pure_point(AtomSourcePtr source) {
  if (!source) throw std::invalid_argument("null atom source");
  return MeasureExpr(Node{node::PurePoint{std::move(source)}});
}

MeasureExpr MeasureExpr::abs_cont(DensitySourcePtr source) {
  if (!source) throw std::invalid_argument("null density source");
  return MeasureExpr(Node{node::AbsCont{std::move(source)}});
}

MeasureExpr MeasureExpr::translate(double t, MeasureExpr child) {
  if (!std::isfinite(t)) throw std::invalid_argument("translate requires a finite shift");
  return MeasureExpr(Node{node::Translate{t, std::make_shared<const MeasureExpr>(std::move(child))}});
}

MeasureExpr MeasureExpr::reflect_conj(MeasureExpr child) {
  if (const auto* r = std::get_if<node::ReflectConj>(&child.node())) return *r->child;
  return MeasureExpr(Node{node::ReflectConj{std::make_shared<const MeasureExpr>(std::move(child))}});
}

MeasureExpr MeasureExpr::scale(Complex c, MeasureExpr child) {
  return MeasureExpr(Node{node::Scale{c, std::make_shared<const MeasureExpr>(std::move(child))}});
}

MeasureExpr MeasureExpr::sum(std::vector<MeasureExpr> children) {
  return MeasureExpr(Node{node::Sum{std::move(children)}});
}

bool MeasureExpr::is_zero() const {
  const auto* s = std::get_if<node::Sum>(node_.get());
  if (!s) return false;
  return std::all_of(s->children.begin(), s->children.end(), [](const MeasureExpr& c) { return c.is_zero(); });
}

std::size_t MeasureExpr::depth() const {
  return std::visit(overloaded{
                        [](const node::PurePoint&) -> std::size_t { return 1; },
                        [](const node::AbsCont&) -> std::size_t { return 1; },
                        [](const node::Translate& p) { return 1 + p.child->depth(); },
                        [](const node::ReflectConj& p) { return 1 + p.child->depth(); },
                        [](const node::Scale& p) { return 1 + p.child->depth(); },
                        [](const node::Sum& p) {
                          std::size_t d = 0;
                          for (const auto& c : p.children) d = std::max(d, c.depth());
                          return 1 + d;
                        },
                    },
                    *node_);
}

std::string MeasureExpr::describe() const {
  std::ostringstream os;
  std::visit(overloaded{
                 [&](const node::PurePoint& p) { os << "pp(" << p.source->descriptor() << ")"; },
                 [&](const node::AbsCont& p) { os << "ac(" << p.source->descriptor() << ")"; },
                 [&](const node::Translate& p) { os << "T[" << p.t << "](" << p.child->describe() << ")"; },
                 [&](const node::ReflectConj& p) { os << "reflect(" << p.child->describe() << ")"; },
                 [&](const node::Scale& p) { os << p.c << "*(" << p.child->describe() << ")"; },
                 [&](const node::Sum& p) {
                   if (p.children.empty()) {
                     os << "0";
                     return;
                   }
                   for (std::size_t i = 0; i < p.children.size(); ++i) {
                     if (i) os << " + ";
                     os << p.children[i].describe();
                   }
                 },
             },
             *node_);
  return os.str();
}

MeasureExpr operator+(MeasureExpr a, MeasureExpr b) {
  return MeasureExpr::sum({std::move(a), std::move(b)});
}

MeasureExpr operator-(MeasureExpr a, MeasureExpr b) {
  return MeasureExpr::sum({std::move(a), MeasureExpr::scale(-1.0, std::move(b))});
}

MeasureExpr operator*(Complex c, MeasureExpr m) { return MeasureExpr::scale(c, std::move(m)); }

// ------------------------------------------------------------- placement

Window Placement::to_inner(const Window& w) const {
  return sigma > 0 ? Window{w.lo - shift, w.hi - shift} : Window{shift - w.hi, shift - w.lo};
}

Window Placement::to_outer(const Window& w) const {
  return sigma > 0 ? Window{w.lo + shift, w.hi + shift} : Window{shift - w.hi, shift - w.lo};
}

Placement Placement::then_translate(double t) const {
  Placement p = *this;
  p.shift = sigma > 0 ? shift + t : shift - t;
  return p;
}

Placement Placement::then_reflect() const {
  Placement p = *this;
  p.sigma = -sigma;
  p.conj = !conj;
  return p;
}

Placement Placement::then_scale(Complex c) const {
  Placement p = *this;
  p.scale = scale * (conj ? std::conj(c) : c);
  return p;
}

Complex PlacedDensity::eval(double s) const { return place.weight(source->eval(place.to_inner(s))); }

PanelMoments PlacedDensity::moments(double a, double b) const {
  const Window inner = place.to_inner(Window{a, b});
  const PanelMoments m = source->moments(inner.lo, inner.hi);
  if (place.sigma > 0) return {place.weight(m.m0), place.weight(m.m1)};
  return {place.weight(m.m0), place.weight(inner.length() * m.m0 - m.m1)};
}

double PlacedDensity::abs_mass(double a, double b) const {
  const Window inner = place.to_inner(Window{a, b});
  return std::abs(place.scale) * source->abs_mass(inner.lo, inner.hi);
}

std::vector<Window> PlacedDensity::pieces(const Window& w) const {
  auto ps = source->pieces(place.to_inner(w));
  for (auto& p : ps) p = place.to_outer(p);
  std::sort(ps.begin(), ps.end(), [](const Window& x, const Window& y) { return x.lo < y.lo; });
  return ps;
}

std::vector<double> PlacedDensity::breakpoints(const Window& w) const {
  auto bs = source->breakpoints(place.to_inner(w));
  for (auto& b : bs) b = place.to_outer(b);
  std::sort(bs.begin(), bs.end());
  return bs;
}

std::optional<Affine> PlacedDensity::affine_on(double a, double b) const {
  const Window inner = place.to_inner(Window{a, b});
  auto r = source->affine_on(inner.lo, inner.hi);
  if (!r) return r;
  if (place.sigma > 0) return Affine{place.weight(r->value), place.weight(r->slope)};
  return Affine{place.weight(r->value + r->slope * inner.length()), place.weight(-r->slope)};
}

bool PlacedDensity::nonnegative() const {
  return source->nonnegative() && place.scale.imag() == 0.0 && place.scale.real() >= 0.0;
}

// --------------------------------------------------------------- flatten

namespace {

void flatten_into(const MeasureExpr& m, const Placement& place, const Window& inner, Flattened& out) {
  if (m.hull() && !m.hull()->intersects(inner)) return;
  std::visit(overloaded{
                 [&](const node::PurePoint& p) { out.atoms.push_back({p.source.get(), place}); },
                 [&](const node::AbsCont& p) { out.densities.push_back({p.source.get(), place}); },
                 [&](const node::Translate& p) {
                   const Window w = inner.shifted(-p.t);
                   flatten_into(*p.child, place.then_translate(p.t), w.widened(slack(w, p.t)), out);
                 },
                 [&](const node::ReflectConj& p) { flatten_into(*p.child, place.then_reflect(), inner.reflected(), out); },
                 [&](const node::Scale& p) {
                   if (p.c == Complex{}) return;
                   flatten_into(*p.child, place.then_scale(p.c), inner, out);
                 },
                 [&](const node::Sum& p) {
                   for (const auto& c : p.children) flatten_into(c, place, inner, out);
                 },
             },
             m.node());
}

}  // namespace

Flattened flatten(const MeasureExpr& m, const Window& w) {
  Flattened out;
  flatten_into(m, Placement{}, w, out);
  return out;
}

std::vector<Atom> atoms_in(const Flattened& f, const Window& w) {
  std::vector<Atom> out;
  for (const auto& leaf : f.atoms) {
    const Window inner = leaf.place.to_inner(w);
    for (const auto& a : leaf.source->enumerate(inner.widened(slack(inner, leaf.place.shift)))) {
      const double s = leaf.place.to_outer(a.position);
      if (w.contains(s)) out.push_back({s, leaf.place.weight(a.weight)});
    }
  }
  return merge_atoms(std::move(out));
}

std::vector<Atom> atoms_in(const MeasureExpr& m, const Window& w) { return atoms_in(flatten(m, w), w); }

}  // namespace vanishkit
