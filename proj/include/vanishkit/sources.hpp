#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "vanishkit/window.hpp"

namespace vanishkit {

/// Locally finite rule for the atoms of a pure-point measure. enumerate(w) returns
/// every atom with position in the closed window w, sorted, pairwise distinct and
/// with nonzero weight; the result for w is the restriction of the result for any
/// larger window.
class AtomSource {
 public:
  virtual ~AtomSource() = default;
  virtual std::vector<Atom> enumerate(const Window& w) const = 0;
  virtual std::string descriptor() const = 0;
  virtual std::optional<Window> support() const { return std::nullopt; }
};

/// First two moments of a density over [a, b]: m0 = int rho, m1 = int (s - a) rho.
struct PanelMoments {
  Complex m0;
  Complex m1;
};

/// rho(s) = value + slope * (s - a) on a window starting at a.
struct Affine {
  Complex value;
  Complex slope;
};

/// Locally bounded density of an absolutely continuous measure.
class DensitySource {
 public:
  virtual ~DensitySource() = default;
  virtual Complex eval(double x) const = 0;
  /// Upper bound for |eval| on w.
  virtual double local_bound(const Window& w) const = 0;
  virtual std::string descriptor() const = 0;
  virtual std::optional<Window> support() const { return std::nullopt; }
  /// Windows covering the part of w where the density may be nonzero, sorted.
  virtual std::vector<Window> pieces(const Window& w) const;
  /// Discontinuities and kinks inside w (may be empty if there are too many to list).
  virtual std::vector<double> breakpoints(const Window& w) const;
  /// Exact for the closed-form densities; Gauss-Legendre with a refinement check otherwise.
  virtual PanelMoments moments(double a, double b) const;
  /// int_a^b |rho|.
  virtual double abs_mass(double a, double b) const;
  virtual bool nonnegative() const { return false; }
  /// Set when the density is affine between consecutive breakpoints, which are few.
  virtual bool piecewise_affine() const { return false; }
  /// Value at a and slope when the density is affine on all of [a, b].
  virtual std::optional<Affine> affine_on(double, double) const { return std::nullopt; }
};

using AtomSourcePtr = std::shared_ptr<const AtomSource>;
using DensitySourcePtr = std::shared_ptr<const DensitySource>;

/// Moments over [a, b] of a density that is linear on [c, d] (subset of [a, b]),
/// with value rho_c at c and slope q.
PanelMoments linear_moments(double a, double c, double d, Complex rho_c, Complex q);

// ---------------------------------------------------------------- atom sources

class FiniteAtomSource final : public AtomSource {
 public:
  explicit FiniteAtomSource(std::vector<Atom> atoms, std::string name = "finite_atoms");
  std::vector<Atom> enumerate(const Window& w) const override;
  std::string descriptor() const override { return name_; }
  std::optional<Window> support() const override;
  const std::vector<Atom>& atoms() const { return atoms_; }

 private:
  std::vector<Atom> atoms_;
  std::string name_;
};

/// sum over n != 0 of (delta_{n + 1/n} - delta_n).
class ExampleAAtoms final : public AtomSource {
 public:
  std::vector<Atom> enumerate(const Window& w) const override;
  std::string descriptor() const override { return "ex_a"; }
};

/// sum over n >= 1, 0 <= k < n of (1/n) delta_{n + k/n}.
class ExampleNuAtoms final : public AtomSource {
 public:
  std::vector<Atom> enumerate(const Window& w) const override;
  std::string descriptor() const override { return "ex_nu"; }
  std::optional<Window> support() const override;
};

/// sum over n >= 1, 1 <= k <= n of (1/n) (delta_{n + k/n} + delta_{-n - k/n}).
class RiemannCombAtoms final : public AtomSource {
 public:
  std::vector<Atom> enumerate(const Window& w) const override;
  std::string descriptor() const override { return "riemann_comb"; }
};

enum class LatticeWeights { one, inverse, rademacher };

/// sum over n of w(n) delta_{offset + n * spacing}; w(n) = 1, 1/(1+|n|), or a seeded
/// +-1 sign that depends only on (seed, n).
class LatticeAtoms final : public AtomSource {
 public:
  LatticeAtoms(double spacing, double offset, LatticeWeights weights, std::uint64_t seed = 0);
  std::vector<Atom> enumerate(const Window& w) const override;
  std::string descriptor() const override;
  Complex weight(long long n) const;
  double spacing() const { return spacing_; }
  double offset() const { return offset_; }
  LatticeWeights weights() const { return weights_; }
  std::uint64_t seed() const { return seed_; }

 private:
  double spacing_;
  double offset_;
  LatticeWeights weights_;
  std::uint64_t seed_;
};

/// One local block, placed at each translate of a list. Atoms of different blocks
/// landing on the same position are merged.
struct LocalBlock {
  std::vector<Atom> atoms;
  struct Piece {
    Window where;
    Complex value;
  };
  std::vector<Piece> pieces;  // constant density on each window
};

class TranslatedAtomSource final : public AtomSource {
 public:
  /// blocks[i] is placed at translates[i]; every block is supported in k.
  TranslatedAtomSource(std::shared_ptr<const std::vector<LocalBlock>> blocks, std::vector<double> translates,
                       Window k, std::string name);
  std::vector<Atom> enumerate(const Window& w) const override;
  std::string descriptor() const override { return name_; }
  std::optional<Window> support() const override;

 private:
  std::shared_ptr<const std::vector<LocalBlock>> blocks_;
  std::vector<std::pair<double, std::size_t>> order_;  // (translate, block index) sorted
  Window k_;
  std::string name_;
};

// ------------------------------------------------------------- density sources

/// Constant value on [lo, hi]; infinite endpoints give Lebesgue measure on a half line or the line.
class IndicatorDensity final : public DensitySource {
 public:
  IndicatorDensity(double lo, double hi, Complex value = 1.0);
  Complex eval(double x) const override;
  double local_bound(const Window& w) const override;
  std::string descriptor() const override;
  std::optional<Window> support() const override;
  std::vector<Window> pieces(const Window& w) const override;
  std::vector<double> breakpoints(const Window& w) const override;
  PanelMoments moments(double a, double b) const override;
  double abs_mass(double a, double b) const override;
  bool nonnegative() const override { return value_.imag() == 0.0 && value_.real() >= 0.0; }

  bool piecewise_affine() const override { return true; }
  std::optional<Affine> affine_on(double a, double b) const override;
 private:
  double lo_, hi_;
  Complex value_;
};

/// height * (1 - |x - center| / halfwidth) on the support.
class TriangleDensity final : public DensitySource {
 public:
  TriangleDensity(double center, double halfwidth, double height);
  Complex eval(double x) const override;
  double local_bound(const Window& w) const override;
  std::string descriptor() const override;
  std::optional<Window> support() const override;
  std::vector<Window> pieces(const Window& w) const override;
  std::vector<double> breakpoints(const Window& w) const override;
  PanelMoments moments(double a, double b) const override;
  double abs_mass(double a, double b) const override;
  bool nonnegative() const override { return height_ >= 0.0; }

  bool piecewise_affine() const override { return true; }
  std::optional<Affine> affine_on(double a, double b) const override;
 private:
  double center_, halfwidth_, height_;
};

/// sum over n >= 1 of tents 1 - 2^n |x - n| on |x - n| < 2^-n.
class TentSeriesDensity final : public DensitySource {
 public:
  Complex eval(double x) const override;
  double local_bound(const Window& w) const override;
  std::string descriptor() const override { return "ex_tent"; }
  std::optional<Window> support() const override;
  std::vector<Window> pieces(const Window& w) const override;
  std::vector<double> breakpoints(const Window& w) const override;
  PanelMoments moments(double a, double b) const override;
  double abs_mass(double a, double b) const override;
  bool nonnegative() const override { return true; }
  /// Largest tent index handled; narrower tents are below double resolution.
  static constexpr int max_index = 1000;
};

/// (-1)^k on [n + k/2^n, n + (k+1)/2^n) for n >= 1, 0 <= k < 2^n; zero elsewhere.
class AlternatingDyadicDensity final : public DensitySource {
 public:
  Complex eval(double x) const override;
  double local_bound(const Window& w) const override;
  std::string descriptor() const override { return "ex_bf"; }
  std::optional<Window> support() const override;
  std::vector<Window> pieces(const Window& w) const override;
  std::vector<double> breakpoints(const Window& w) const override;
  PanelMoments moments(double a, double b) const override;
  double abs_mass(double a, double b) const override;
};

/// 2 pi J0(2 pi |x|): the radial profile of the Fourier transform of the unit circle measure.
class J0RadialDensity final : public DensitySource {
 public:
  Complex eval(double x) const override;
  double local_bound(const Window& w) const override;
  std::string descriptor() const override { return "j0_radial"; }
};

/// Density given by a callable, integrated numerically.
class FunctionDensity final : public DensitySource {
 public:
  FunctionDensity(std::function<Complex(double)> fn, double bound, std::string name,
                  std::optional<Window> support = std::nullopt, bool nonnegative = false);
  Complex eval(double x) const override;
  double local_bound(const Window&) const override { return bound_; }
  std::string descriptor() const override { return name_; }
  std::optional<Window> support() const override { return support_; }
  bool nonnegative() const override { return nonneg_; }

 private:
  std::function<Complex(double)> fn_;
  double bound_;
  std::string name_;
  std::optional<Window> support_;
  bool nonneg_;
};

/// Constant-density pieces of LocalBlocks placed at translates.
class TranslatedPiecesDensity final : public DensitySource {
 public:
  TranslatedPiecesDensity(std::shared_ptr<const std::vector<LocalBlock>> blocks, std::vector<double> translates,
                          Window k, std::string name);
  Complex eval(double x) const override;
  double local_bound(const Window& w) const override;
  std::string descriptor() const override { return name_; }
  std::optional<Window> support() const override;
  std::vector<Window> pieces(const Window& w) const override;
  std::vector<double> breakpoints(const Window& w) const override;
  PanelMoments moments(double a, double b) const override;

 private:
  template <typename Fn>
  void for_each_piece(double a, double b, Fn&& fn) const;

  std::shared_ptr<const std::vector<LocalBlock>> blocks_;
  std::vector<std::pair<double, std::size_t>> order_;
  Window k_;
  std::string name_;
};

}  // namespace vanishkit
