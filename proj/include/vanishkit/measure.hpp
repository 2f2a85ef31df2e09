#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "vanishkit/sources.hpp"

namespace vanishkit {

class MeasureExpr;

namespace node {
struct PurePoint {
  AtomSourcePtr source;
};
struct AbsCont {
  DensitySourcePtr source;
};
struct Translate {
  double t;
  std::shared_ptr<const MeasureExpr> child;
};
/// mu~(f) = conj(mu(conj(f(-.))))
struct ReflectConj {
  std::shared_ptr<const MeasureExpr> child;
};
struct Scale {
  Complex c;
  std::shared_ptr<const MeasureExpr> child;
};
struct Sum {
  std::vector<MeasureExpr> children;
};
}  // namespace node

/// Immutable expression tree for a translation-bounded measure on the line. Copies
/// share structure.
class MeasureExpr {
 public:
  using Node = std::variant<node::PurePoint, node::AbsCont, node::Translate, node::ReflectConj, node::Scale, node::Sum>;

  /// The zero measure.
  MeasureExpr();

  static MeasureExpr pure_point(AtomSourcePtr source);
  static MeasureExpr abs_cont(DensitySourcePtr source);
  static MeasureExpr translate(double t, MeasureExpr child);
  /// Reflecting twice returns the original expression.
  static MeasureExpr reflect_conj(MeasureExpr child);
  static MeasureExpr scale(Complex c, MeasureExpr child);
  static MeasureExpr sum(std::vector<MeasureExpr> children);

  const Node& node() const { return *node_; }
  /// Closed window containing the support, if bounded.
  const std::optional<Window>& hull() const { return hull_; }
  bool is_zero() const;
  std::size_t depth() const;
  std::string describe() const;

  friend MeasureExpr operator+(MeasureExpr a, MeasureExpr b);
  friend MeasureExpr operator-(MeasureExpr a, MeasureExpr b);
  friend MeasureExpr operator*(Complex c, MeasureExpr m);

 private:
  explicit MeasureExpr(Node n);
  std::shared_ptr<const Node> node_;
  std::optional<Window> hull_;
};

/// Affine placement of a leaf: a child point u sits at s = sigma * u + shift and a
/// child weight w becomes scale * (conj ? conj(w) : w).
struct Placement {
  double shift = 0.0;
  int sigma = 1;
  bool conj = false;
  Complex scale = 1.0;

  double to_outer(double u) const { return sigma > 0 ? u + shift : shift - u; }
  double to_inner(double s) const { return sigma > 0 ? s - shift : shift - s; }
  Window to_inner(const Window& w) const;
  Window to_outer(const Window& w) const;
  Complex weight(Complex w) const { return scale * (conj ? std::conj(w) : w); }

  Placement then_translate(double t) const;
  Placement then_reflect() const;
  Placement then_scale(Complex c) const;
};

struct PlacedAtoms {
  const AtomSource* source;
  Placement place;
};

struct PlacedDensity {
  const DensitySource* source;
  Placement place;

  Complex eval(double s) const;
  /// Moments in outer coordinates over [a, b].
  PanelMoments moments(double a, double b) const;
  double abs_mass(double a, double b) const;
  std::vector<Window> pieces(const Window& w) const;
  std::vector<double> breakpoints(const Window& w) const;
  bool nonnegative() const;
  bool piecewise_affine() const { return source->piecewise_affine(); }
  /// Value at a and slope in outer coordinates.
  std::optional<Affine> affine_on(double a, double b) const;
};

/// Leaves of an expression whose support may meet w, with composed placements.
struct Flattened {
  std::vector<PlacedAtoms> atoms;
  std::vector<PlacedDensity> densities;
};

Flattened flatten(const MeasureExpr& m, const Window& w);

/// Atoms of the pure-point part in the closed window w, merged by exact position.
std::vector<Atom> atoms_in(const MeasureExpr& m, const Window& w);
std::vector<Atom> atoms_in(const Flattened& f, const Window& w);

}  // namespace vanishkit
