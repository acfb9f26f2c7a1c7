#pragma once

// Random finite polyhedral instances with a boundary candidate, shared by
// the property tests and the acceptance binary.

#include <random>

#include "mosip/problem.h"
#include "test_oracles.h"

namespace mosip::testing {

struct RandomInstance {
  MosipProblem problem;
  Vec x;
};

struct InstanceShape {
  std::size_t max_dim = 3;
  std::size_t max_objectives = 3;
  std::size_t max_constraints = 6;
  bool smooth_objectives = false;  // affine objectives only
};

inline ConvexFunc random_max_affine(std::mt19937& rng, std::size_t n, int pieces, const Vec& x,
                                    const Rational& value) {
  // Pieces through (x, value) or below it, so f(x) = value exactly.
  std::vector<AffinePiece> out;
  for (int k = 0; k < pieces; ++k) {
    Vec a = random_vec(rng, n, -3, 3);
    Rational below = k == 0 ? Rational(0) : random_int(rng, 0, 1);
    out.push_back({a, value - below - dot(a, x)});
  }
  if (pieces == 1) return ConvexFunc::affine(out[0].a, out[0].b);
  return ConvexFunc::max_affine(std::move(out));
}

// S is exactly the feasible set of the constraints, so the instance is a
// faithful finite program; x sits on the boundary unless every constraint
// draws a positive slack.
inline RandomInstance random_instance(std::mt19937& rng, const InstanceShape& shape = {}) {
  RandomInstance out;
  MosipProblem& p = out.problem;
  const std::size_t n = 1 + rng() % shape.max_dim;
  p.dim = n;
  out.x = random_vec(rng, n, -2, 2);
  const std::size_t np = 1 + rng() % shape.max_objectives;
  for (std::size_t i = 0; i < np; ++i) {
    int pieces = shape.smooth_objectives ? 1 : 1 + static_cast<int>(rng() % 2);
    p.objectives.push_back(random_max_affine(rng, n, pieces, out.x, random_int(rng, -2, 2)));
  }
  const std::size_t m = 1 + rng() % shape.max_constraints;
  std::vector<ConvexFunc> gs;
  HPolyhedron s{n, {}, {}};
  for (std::size_t t = 0; t < m; ++t) {
    Rational slack = rng() % 3 == 0 ? random_int(rng, 1, 2) : Rational(0);
    ConvexFunc g = random_max_affine(rng, n, 1 + static_cast<int>(rng() % 2), out.x, -slack);
    for (const auto& piece : to_max_affine(g)) s.add_row(piece.a, -piece.b);
    gs.push_back(std::move(g));
  }
  p.constraints = ConstraintFamily::finite(std::move(gs));
  p.feasible_set = std::move(s);
  return out;
}

// Points x + step*k, k in {-steps..steps}^n.
inline std::vector<Vec> grid_around(const Vec& x, const Rational& step, int steps) {
  std::vector<Vec> out{x};
  for (std::size_t i = 0; i < x.size(); ++i) {
    std::vector<Vec> next;
    for (const auto& y : out) {
      for (int k = -steps; k <= steps; ++k) {
        Vec z = y;
        z[i] += step * k;
        next.push_back(std::move(z));
      }
    }
    out = std::move(next);
  }
  return out;
}

// Exact feasibility against the (finite) constraint list and S.
inline bool feasible_exact(const MosipProblem& p, const Vec& y) {
  if (p.feasible_set && !p.feasible_set->contains(y)) return false;
  for (const auto& g : p.constraints.members()) {
    if (eval(g, y) > ExtReal(0)) return false;
  }
  return true;
}

inline std::vector<ExtReal> objective_values(const MosipProblem& p, const Vec& y) {
  std::vector<ExtReal> out;
  for (const auto& f : p.objectives) out.push_back(eval(f, y));
  return out;
}

inline bool strictly_dominates(const std::vector<ExtReal>& a, const std::vector<ExtReal>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!(a[i] < b[i])) return false;
  }
  return true;
}

inline bool dominates(const std::vector<ExtReal>& a, const std::vector<ExtReal>& b) {
  bool strict = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
    if (a[i] < b[i]) strict = true;
  }
  return strict;
}

}  // namespace mosip::testing
