#pragma once

// Exact polyhedral geometry over rationals: polytopes in V-representation,
// finitely generated cones, halfspace cones and polyhedra, plus the
// membership, containment and interior tests built on the LP engine.

#include <cstddef>
#include <optional>
#include <vector>

#include "mosip/rational.h"

namespace mosip {

// conv(vertices); an empty vertex list is the empty set.
struct Polytope {
  std::size_t dim = 0;
  Matrix vertices;

  bool empty() const { return vertices.empty(); }
  static Polytope point(Vec v);
};

// cone(generators) including the origin; no generators means {0}.
struct FGCone {
  std::size_t dim = 0;
  Matrix generators;

  static FGCone zero(std::size_t n) { return {n, {}}; }
};

// {d : a'd <= 0 for every normal a}; no normals means all of R^n.
struct HCone {
  std::size_t dim = 0;
  Matrix normals;

  bool contains(const Vec& d) const;
  static HCone whole_space(std::size_t n) { return {n, {}}; }
};

// base + recession (Minkowski sum).
struct GenConvexSet {
  Polytope base;
  FGCone recession;

  std::size_t dim() const { return base.dim; }
};

// {x : a_r'x <= b_r}.
struct HPolyhedron {
  std::size_t dim = 0;
  Matrix a;
  Vec b;

  void add_row(Vec row, Rational rhs);
  bool contains(const Vec& x) const;
  std::vector<std::size_t> active_rows(const Vec& x) const;
  void validate() const;  // throws InputError
};

// --- canonical forms -------------------------------------------------------

// Lexicographically sorted extreme points, duplicates removed.
Polytope canonical(const Polytope& p);
// Zero generators, positive-multiple duplicates and generators already in the
// cone of the others are dropped. Survivors are primitive and sorted.
FGCone canonical(const FGCone& c);

// --- duality ---------------------------------------------------------------

HCone polar(const FGCone& c);
// The polar of {d : a'd <= 0} is cone(normals).
FGCone polar(const HCone& h);

// Dimension cap for double description; MOSIP_DD_DIM_CAP overrides the
// default of 6.
std::size_t dd_dimension_cap();

// Generators of the halfspace cone (Motzkin double description). Lineality
// directions appear as +/- pairs. Throws UnsupportedError above the cap.
FGCone dd_convert(const HCone& h);

// Halfspace form of a finitely generated cone (via its polar).
HCone to_hcone(const FGCone& c);

// --- membership ------------------------------------------------------------

// Functional h with h'x <= bound on the set and h'p > bound.
struct Separator {
  Vec h;
  Rational bound;
};

struct Membership {
  bool member = false;
  Vec base_coeffs;       // convex weights over base vertices
  Vec recession_coeffs;  // nonnegative weights over recession generators
  std::optional<Separator> separator;
};

Membership membership(const Vec& p, const GenConvexSet& s);
bool verify_membership(const Vec& p, const GenConvexSet& s, const Membership& m);

struct ZeroInterior {
  bool inside = false;
  Rational radius;           // nu with nu*B contained in the set (0 if !inside)
  bool radius_exact = false;  // radius equals the true inradius about 0
  std::optional<Vec> escape;  // nonzero d with nonpositive support, if !inside
};

ZeroInterior zero_interior(const GenConvexSet& s);

struct Triviality {
  bool trivial = false;
  std::optional<Vec> witness;  // nonzero cone element when not trivial
};

Triviality cone_is_trivial(const HCone& h);

// --- containment -----------------------------------------------------------

struct Containment {
  bool holds = false;
  std::optional<Vec> witness;  // element of a outside b
};

Containment contains(const HCone& a, const HCone& b);
Containment contains(const FGCone& a, const HCone& b);
Containment contains(const FGCone& a, const FGCone& b);
Containment contains(const HCone& a, const FGCone& b);

bool in_cone(const Vec& d, const FGCone& c);

struct StrictDirection {
  std::optional<Vec> direction;  // v'd < 0 for every point
  bool vacuous = false;          // input list was empty
};

StrictDirection strictly_negative_polar(const Matrix& points, std::size_t dim);

std::size_t span_rank(const Matrix& points);

struct RelativeInterior {
  bool member = false;
  Matrix vertices;  // canonical(q).vertices
  Vec coeffs;       // convex weights over `vertices`, all > 0 when member
};

RelativeInterior relative_interior_member(const Vec& p, const Polytope& q);

}  // namespace mosip
