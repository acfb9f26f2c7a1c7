#pragma once

// Convex functions with exact evaluation, subdifferential and directional
// derivative rules. The set of function classes is closed on purpose: each
// class carries its own exact calculus.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "mosip/cones.h"
#include "mosip/rational.h"

namespace mosip {

// Extended real: a rational, a signed square root of a rational, or +-inf.
// Square roots compare exactly by squaring; only the arithmetic the
// pipeline needs is provided.
class ExtReal {
 public:
  enum class Kind { kFinite, kRoot, kPosInf, kNegInf };

  ExtReal() : ExtReal(Rational(0)) {}
  ExtReal(const Rational& q) : kind_(Kind::kFinite), value_(q) {}  // NOLINT
  ExtReal(long v) : ExtReal(Rational(v)) {}                         // NOLINT

  static ExtReal pos_inf();
  static ExtReal neg_inf();
  // sign * sqrt(radicand); collapses to a rational when radicand is a
  // perfect square.
  static ExtReal root(int sign, const Rational& radicand);

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::kFinite || kind_ == Kind::kRoot; }
  bool is_rational() const { return kind_ == Kind::kFinite; }
  bool is_pos_inf() const { return kind_ == Kind::kPosInf; }
  bool is_neg_inf() const { return kind_ == Kind::kNegInf; }
  // Value when rational; throws UnsupportedError otherwise.
  const Rational& rational() const;
  // kRoot only: the value is root_sign() * sqrt(radicand()).
  const Rational& radicand() const { return value_; }
  int root_sign() const { return root_sign_; }
  int sign() const;
  double to_double() const;
  std::string to_string() const;

  ExtReal operator-() const;
  // +inf + -inf throws InputError; root + nonzero rational throws
  // UnsupportedError.
  friend ExtReal operator+(const ExtReal& a, const ExtReal& b);
  friend ExtReal operator-(const ExtReal& a, const ExtReal& b) { return a + (-b); }
  ExtReal scaled(const Rational& c) const;

  friend int compare(const ExtReal& a, const ExtReal& b);
  friend bool operator==(const ExtReal& a, const ExtReal& b) { return compare(a, b) == 0; }
  friend bool operator!=(const ExtReal& a, const ExtReal& b) { return compare(a, b) != 0; }
  friend bool operator<(const ExtReal& a, const ExtReal& b) { return compare(a, b) < 0; }
  friend bool operator<=(const ExtReal& a, const ExtReal& b) { return compare(a, b) <= 0; }
  friend bool operator>(const ExtReal& a, const ExtReal& b) { return compare(a, b) > 0; }
  friend bool operator>=(const ExtReal& a, const ExtReal& b) { return compare(a, b) >= 0; }

 private:
  Kind kind_;
  Rational value_;     // rational value, or radicand for kRoot
  int root_sign_ = 1;  // kRoot only
};

struct AffinePiece {
  Vec a;
  Rational b;
};

// One row of a Precomputed table.
struct TableEntry {
  Vec x;
  Rational value;
  Matrix subgradients;  // vertices of the subdifferential at x
};

// Subdifferential of f (plus the indicator of its domain) at a point:
// conv(base) + recession. `approximated` marks polygonal stand-ins for
// non-polyhedral sets; `exact_cone` then carries the closed conic hull of
// the exact subdifferential when it is known.
struct Subdifferential {
  Polytope base;
  FGCone recession;
  bool approximated = false;
  std::optional<FGCone> exact_cone;

  bool empty() const { return base.empty(); }
  bool bounded() const { return recession.generators.empty(); }
};

// Closed conic hull of the subdifferential: exact_cone when present, else
// cone(base vertices and recession generators).
FGCone cone_closure(const Subdifferential& s);

class ConvexFunc {
 public:
  enum class Kind {
    kAffine,
    kMaxAffine,
    kScaledNormInf,
    kScaledNorm2,
    kNegSqrtParabola1D,
    kSupportPolygon,
    kPrecomputed,
  };

  static ConvexFunc affine(Vec a, Rational b);
  static ConvexFunc max_affine(std::vector<AffinePiece> pieces);
  // weight * ||x - center||_inf and weight * ||x - center||_2, weight >= 0.
  static ConvexFunc scaled_norm_inf(Vec center, Rational weight);
  static ConvexFunc scaled_norm2(Vec center, Rational weight);
  // -sqrt(2tx - x^2) on [0, 2t], +inf elsewhere; t > 0.
  static ConvexFunc neg_sqrt_parabola(Rational t);
  // x -> max_v v'x. `exact_cone` is the closed conic hull of the exact set
  // this polygon approximates; when given, subdifferentials are flagged
  // approximated.
  static ConvexFunc support_polygon(Matrix vertices, std::optional<FGCone> exact_cone);
  static ConvexFunc precomputed(std::size_t dim, std::vector<TableEntry> table);

  // Restriction to a polyhedral domain (+inf outside).
  ConvexFunc with_domain(HPolyhedron domain) const;

  Kind kind() const { return kind_; }
  std::size_t dim() const { return dim_; }
  const std::optional<HPolyhedron>& domain() const { return domain_; }
  const std::vector<AffinePiece>& pieces() const { return pieces_; }  // affine kinds
  const Vec& center() const { return center_; }
  const Rational& param() const { return param_; }  // weight or t
  const Matrix& vertices() const { return vertices_; }
  const std::optional<FGCone>& exact_cone() const { return exact_cone_; }
  // Polygonal stand-in for a non-polyhedral support function.
  bool approximates() const { return approximates_; }
  const std::vector<TableEntry>& table() const { return table_; }

  // Affine, MaxAffine, ScaledNormInf or SupportPolygon (any domain).
  bool polyhedral() const;

  bool in_domain(const Vec& x) const;

 private:
  ConvexFunc(Kind kind, std::size_t dim) : kind_(kind), dim_(dim) {}
  friend ConvexFunc tilt(const ConvexFunc& f, const Vec& w);

  Kind kind_;
  std::size_t dim_;
  std::vector<AffinePiece> pieces_;
  Vec center_;
  Rational param_;
  Matrix vertices_;
  std::optional<FGCone> exact_cone_;
  bool approximates_ = false;
  std::vector<TableEntry> table_;
  std::optional<HPolyhedron> domain_;
};

std::string kind_name(ConvexFunc::Kind kind);

ExtReal eval(const ConvexFunc& f, const Vec& x);

// Throws PreconditionError when f(x) is not finite; UnsupportedError when
// the subdifferential is not a polyhedron with rational vertices.
Subdifferential subdiff(const ConvexFunc& f, const Vec& x);

ExtReal dir_derivative(const ConvexFunc& f, const Vec& x, const Vec& d);

// Max-of-affine form of a polyhedral function (domain kept separately).
std::vector<AffinePiece> to_max_affine(const ConvexFunc& f);

// x -> f(x) - w'x, for polyhedral kinds.
ConvexFunc tilt(const ConvexFunc& f, const Vec& w);

}  // namespace mosip
