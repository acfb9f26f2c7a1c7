#include "mosip/cones.h"

#include <algorithm>
#include <cstdlib>
#include <string>

#include "mosip/errors.h"
#include "mosip/lp.h"

namespace mosip {

namespace {

void check_dim(const Vec& v, std::size_t n, const char* what) {
  if (v.size() != n) {
    throw InputError(std::string(what) + ": expected dimension " + std::to_string(n) +
                     ", got " + std::to_string(v.size()));
  }
}

// max c'd over {a'd <= 0 for a in normals, -1 <= d <= 1}.
lp::Optimal max_over_boxed_cone(const HCone& h, const Vec& c) {
  lp::LinearProgram prog(h.dim);
  prog.objective = c;
  for (std::size_t j = 0; j < h.dim; ++j) prog.set_bounds(j, Rational(-1), Rational(1));
  for (const auto& a : h.normals) prog.add(a, lp::Relation::kLessEqual, 0);
  auto out = lp::solve(prog);
  const auto* opt = lp::as_optimal(out);
  if (!opt) throw InternalError("boxed cone LP is not optimal");
  return *opt;
}

// Variables: lambda over base vertices, mu over recession generators.
lp::LinearProgram decomposition_system(const Vec& p, const GenConvexSet& s) {
  const std::size_t nb = s.base.vertices.size();
  const std::size_t nr = s.recession.generators.size();
  const std::size_t n = s.dim();
  lp::LinearProgram prog(nb + nr);
  for (std::size_t j = 0; j < nb + nr; ++j) prog.set_nonnegative(j);
  for (std::size_t i = 0; i < n; ++i) {
    Vec row(nb + nr);
    for (std::size_t j = 0; j < nb; ++j) row[j] = s.base.vertices[j][i];
    for (std::size_t j = 0; j < nr; ++j) row[nb + j] = s.recession.generators[j][i];
    prog.add(std::move(row), lp::Relation::kEqual, p[i]);
  }
  Vec conv = zeros(nb + nr);
  for (std::size_t j = 0; j < nb; ++j) conv[j] = 1;
  prog.add(std::move(conv), lp::Relation::kEqual, 1);
  return prog;
}

bool lex_less(const Vec& a, const Vec& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

Polytope Polytope::point(Vec v) {
  std::size_t n = v.size();
  return {n, {std::move(v)}};
}

bool HCone::contains(const Vec& d) const {
  check_dim(d, dim, "HCone::contains");
  for (const auto& a : normals) {
    if (dot(a, d) > 0) return false;
  }
  return true;
}

void HPolyhedron::add_row(Vec row, Rational rhs) {
  check_dim(row, dim, "HPolyhedron::add_row");
  a.push_back(std::move(row));
  b.push_back(std::move(rhs));
}

bool HPolyhedron::contains(const Vec& x) const {
  check_dim(x, dim, "HPolyhedron::contains");
  for (std::size_t r = 0; r < a.size(); ++r) {
    if (dot(a[r], x) > b[r]) return false;
  }
  return true;
}

std::vector<std::size_t> HPolyhedron::active_rows(const Vec& x) const {
  check_dim(x, dim, "HPolyhedron::active_rows");
  std::vector<std::size_t> out;
  for (std::size_t r = 0; r < a.size(); ++r) {
    if (dot(a[r], x) == b[r]) out.push_back(r);
  }
  return out;
}

void HPolyhedron::validate() const {
  if (a.size() != b.size()) throw InputError("HPolyhedron: row/rhs count mismatch");
  for (const auto& row : a) check_dim(row, dim, "HPolyhedron row");
}

Polytope canonical(const Polytope& p) {
  Matrix pts = p.vertices;
  for (const auto& v : pts) check_dim(v, p.dim, "Polytope vertex");
  std::sort(pts.begin(), pts.end(), lex_less);
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  // Drop points that are convex combinations of the remaining ones.
  for (std::size_t i = 0; i < pts.size() && pts.size() > 1;) {
    Matrix others;
    for (std::size_t j = 0; j < pts.size(); ++j) {
      if (j != i) others.push_back(pts[j]);
    }
    GenConvexSet s{{p.dim, others}, FGCone::zero(p.dim)};
    if (lp::feasible_point(decomposition_system(pts[i], s)).point) {
      pts.erase(pts.begin() + static_cast<long>(i));
    } else {
      ++i;
    }
  }
  return {p.dim, std::move(pts)};
}

FGCone canonical(const FGCone& c) {
  Matrix gens;
  Matrix seen;  // primitive forms of kept generators
  for (const auto& g : c.generators) {
    check_dim(g, c.dim, "FGCone generator");
    if (is_zero(g)) continue;
    Vec prim = primitive(g);
    if (std::find(seen.begin(), seen.end(), prim) != seen.end()) continue;
    seen.push_back(prim);
    gens.push_back(std::move(prim));
  }
  std::sort(gens.begin(), gens.end(), lex_less);
  for (std::size_t i = 0; i < gens.size();) {
    Matrix others;
    for (std::size_t j = 0; j < gens.size(); ++j) {
      if (j != i) others.push_back(gens[j]);
    }
    if (in_cone(gens[i], {c.dim, others})) {
      gens.erase(gens.begin() + static_cast<long>(i));
    } else {
      ++i;
    }
  }
  return {c.dim, std::move(gens)};
}

HCone polar(const FGCone& c) { return {c.dim, c.generators}; }

FGCone polar(const HCone& h) { return {h.dim, h.normals}; }

std::size_t dd_dimension_cap() {
  if (const char* env = std::getenv("MOSIP_DD_DIM_CAP")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return 6;
}

FGCone dd_convert(const HCone& h) {
  const std::size_t n = h.dim;
  if (n > dd_dimension_cap()) {
    throw UnsupportedError("double description: dimension " + std::to_string(n) +
                           " exceeds cap " + std::to_string(dd_dimension_cap()));
  }
  for (const auto& a : h.normals) check_dim(a, n, "HCone normal");
  if (n == 0) return {0, {}};

  Matrix lineality = null_space(h.normals, n);
  // Pointed part: intersect with the orthogonal complement of the lineality.
  Matrix rows;
  for (const auto& a : h.normals) {
    if (!is_zero(a)) rows.push_back(a);
  }
  for (const auto& l : lineality) {
    rows.push_back(l);
    rows.push_back(scaled(l, -1));
  }

  // Initial simplicial cone from n independent rows.
  std::vector<std::size_t> basis_rows;
  Matrix basis;
  std::vector<bool> used(rows.size(), false);
  for (std::size_t r = 0; r < rows.size() && basis.size() < n; ++r) {
    basis.push_back(rows[r]);
    if (rank(basis) == basis.size()) {
      basis_rows.push_back(r);
      used[r] = true;
    } else {
      basis.pop_back();
    }
  }
  if (basis.size() != n) throw InternalError("dd: pointed system lacks full rank");

  // Rays of {d : B d <= 0} are the columns of -B^{-1}: solve B d = -e_j.
  Matrix rays;
  for (std::size_t j = 0; j < n; ++j) {
    Matrix aug = basis;
    for (std::size_t r = 0; r < n; ++r) aug[r].push_back(r == j ? Rational(-1) : Rational(0));
    // Gauss-Jordan on the augmented system.
    for (std::size_t c = 0; c < n; ++c) {
      std::size_t p = c;
      while (aug[p][c] == 0) ++p;
      std::swap(aug[p], aug[c]);
      Rational inv = 1 / aug[c][c];
      for (auto& q : aug[c]) q *= inv;
      for (std::size_t r = 0; r < n; ++r) {
        if (r == c || aug[r][c] == 0) continue;
        Rational f = aug[r][c];
        for (std::size_t k = 0; k <= n; ++k) aug[r][k] -= f * aug[c][k];
      }
    }
    Vec d(n);
    for (std::size_t r = 0; r < n; ++r) d[r] = aug[r][n];
    rays.push_back(primitive(d));
  }

  std::vector<std::size_t> processed = basis_rows;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (used[r]) continue;
    const Vec& a = rows[r];
    Matrix pos, neg, next;
    for (auto& ray : rays) {
      Rational v = dot(a, ray);
      if (v > 0) {
        pos.push_back(ray);
      } else {
        if (v < 0) neg.push_back(ray);
        next.push_back(ray);
      }
    }
    for (const auto& p : pos) {
      for (const auto& q : neg) {
        Matrix common;
        for (auto k : processed) {
          if (dot(rows[k], p) == 0 && dot(rows[k], q) == 0) common.push_back(rows[k]);
        }
        if (n < 2 || rank(common) != n - 2) continue;
        Vec combo = scaled(q, dot(a, p));
        axpy(combo, -dot(a, q), p);
        next.push_back(primitive(combo));
      }
    }
    std::sort(next.begin(), next.end(), lex_less);
    next.erase(std::unique(next.begin(), next.end()), next.end());
    rays = std::move(next);
    processed.push_back(r);
  }

  FGCone out{n, {}};
  for (auto& ray : rays) out.generators.push_back(std::move(ray));
  for (const auto& l : lineality) {
    out.generators.push_back(l);
    out.generators.push_back(scaled(l, -1));
  }
  return out;
}

HCone to_hcone(const FGCone& c) {
  // c = (c^0)^0 and c^0 = {d : g'd <= 0}.
  FGCone dual = dd_convert(polar(c));
  return {c.dim, std::move(dual.generators)};
}

Membership membership(const Vec& p, const GenConvexSet& s) {
  const std::size_t n = s.dim();
  check_dim(p, n, "membership point");
  if (s.recession.dim != n) throw InputError("membership: recession dimension mismatch");
  Membership m;
  if (s.base.empty()) {
    m.separator = Separator{zeros(n), Rational(-1)};
    return m;
  }
  auto res = lp::feasible_point(decomposition_system(p, s));
  const std::size_t nb = s.base.vertices.size();
  if (res.point) {
    m.member = true;
    m.base_coeffs.assign(res.point->begin(), res.point->begin() + static_cast<long>(nb));
    m.recession_coeffs.assign(res.point->begin() + static_cast<long>(nb), res.point->end());
    return m;
  }
  // Farkas: y over the n coordinate rows and the convexity row.
  const Vec& y = res.farkas->rows;
  Separator sep{zeros(n), y[n]};
  for (std::size_t i = 0; i < n; ++i) sep.h[i] = -y[i];
  m.separator = std::move(sep);
  if (!verify_membership(p, s, m)) throw InternalError("membership separator failed check");
  return m;
}

bool verify_membership(const Vec& p, const GenConvexSet& s, const Membership& m) {
  const std::size_t n = s.dim();
  if (m.member) {
    if (m.base_coeffs.size() != s.base.vertices.size() ||
        m.recession_coeffs.size() != s.recession.generators.size()) {
      return false;
    }
    Vec sum = zeros(n);
    Rational total = 0;
    for (std::size_t j = 0; j < m.base_coeffs.size(); ++j) {
      if (m.base_coeffs[j] < 0) return false;
      total += m.base_coeffs[j];
      axpy(sum, m.base_coeffs[j], s.base.vertices[j]);
    }
    for (std::size_t j = 0; j < m.recession_coeffs.size(); ++j) {
      if (m.recession_coeffs[j] < 0) return false;
      axpy(sum, m.recession_coeffs[j], s.recession.generators[j]);
    }
    return total == 1 && sum == p;
  }
  if (!m.separator) return false;
  const Separator& sep = *m.separator;
  if (sep.h.size() != n) return false;
  for (const auto& v : s.base.vertices) {
    if (dot(sep.h, v) > sep.bound) return false;
  }
  for (const auto& r : s.recession.generators) {
    if (dot(sep.h, r) > 0) return false;
  }
  return dot(sep.h, p) > sep.bound;
}

Triviality cone_is_trivial(const HCone& h) {
  for (std::size_t i = 0; i < h.dim; ++i) {
    for (int s : {1, -1}) {
      auto opt = max_over_boxed_cone(h, unit(h.dim, i, s));
      if (opt.value > 0) return {false, opt.primal};
    }
  }
  return {true, std::nullopt};
}

ZeroInterior zero_interior(const GenConvexSet& s) {
  const std::size_t n = s.dim();
  ZeroInterior out;
  out.radius = 0;
  if (s.base.empty()) return out;
  HCone support{n, s.base.vertices};
  for (const auto& r : s.recession.generators) support.normals.push_back(r);
  auto triv = cone_is_trivial(support);
  if (!triv.trivial) {
    out.escape = triv.witness;
    return out;
  }
  out.inside = true;

  if (n <= 3) {
    // Facets of the set from the polar of its homogenization:
    // (h, t) with h'v + t <= 0 and h'r <= 0 gives h'x <= -t on the set.
    HCone homog{n + 1, {}};
    for (const auto& v : s.base.vertices) {
      Vec row = v;
      row.push_back(1);
      homog.normals.push_back(std::move(row));
    }
    for (const auto& r : s.recession.generators) {
      Vec row = r;
      row.push_back(0);
      homog.normals.push_back(std::move(row));
    }
    FGCone facets = dd_convert(homog);
    std::optional<Rational> best;
    bool best_exact = false;
    for (const auto& g : facets.generators) {
      Vec h(g.begin(), g.begin() + static_cast<long>(n));
      if (is_zero(h)) continue;
      Rational offset = -g[n];  // h'x <= offset, offset > 0 since 0 is interior
      Rational norm2 = squared_norm(h);
      Rational root;
      bool exact = exact_sqrt(norm2, root);
      Rational dist = offset / (exact ? root : sqrt_upper(norm2));
      if (!best || dist < *best || (dist == *best && exact)) {
        best = dist;
        best_exact = exact;
      }
    }
    if (!best) {
      out.radius_exact = false;  // whole space: every radius works
      out.radius = 1;
      return out;
    }
    out.radius = *best;
    out.radius_exact = best_exact;
    return out;
  }

  // Higher dimensions: the cross-polytope conv{+-t e_i} with t the minimum
  // axis reach lies in the set and contains the ball of radius t/sqrt(n).
  std::optional<Rational> reach;
  for (std::size_t i = 0; i < n; ++i) {
    for (int sgn : {1, -1}) {
      GenConvexSet shifted = s;
      lp::LinearProgram prog = decomposition_system(zeros(n), shifted);
      // Replace the coordinate rows' rhs by t*e_i with t a new variable.
      prog.num_vars += 1;
      prog.objective.assign(prog.num_vars, Rational(0));
      prog.objective.back() = 1;
      prog.lower.push_back(Rational(0));
      prog.upper.push_back(std::nullopt);
      for (std::size_t r = 0; r < prog.constraints.size(); ++r) {
        prog.constraints[r].coefficients.push_back(r == i ? Rational(-sgn) : Rational(0));
      }
      auto res = lp::solve(prog);
      if (const auto* opt = lp::as_optimal(res)) {
        if (!reach || opt->value < *reach) reach = opt->value;
      }
    }
  }
  if (!reach) {
    out.radius = 1;
    return out;
  }
  out.radius = *reach / sqrt_upper(Rational(static_cast<long>(n)));
  return out;
}

Containment contains(const HCone& a, const HCone& b) {
  if (a.dim != b.dim) throw InputError("contains: dimension mismatch");
  for (const auto& c : b.normals) {
    auto opt = max_over_boxed_cone(a, c);
    if (opt.value > 0) return {false, opt.primal};
  }
  return {true, std::nullopt};
}

Containment contains(const FGCone& a, const HCone& b) {
  if (a.dim != b.dim) throw InputError("contains: dimension mismatch");
  for (const auto& g : a.generators) {
    if (!b.contains(g)) return {false, g};
  }
  return {true, std::nullopt};
}

bool in_cone(const Vec& d, const FGCone& c) {
  check_dim(d, c.dim, "in_cone");
  if (is_zero(d)) return true;
  GenConvexSet s{Polytope::point(zeros(c.dim)), c};
  return lp::feasible_point(decomposition_system(d, s)).point.has_value();
}

Containment contains(const FGCone& a, const FGCone& b) {
  if (a.dim != b.dim) throw InputError("contains: dimension mismatch");
  for (const auto& g : a.generators) {
    if (!in_cone(g, b)) return {false, g};
  }
  return {true, std::nullopt};
}

Containment contains(const HCone& a, const FGCone& b) {
  if (a.dim != b.dim) throw InputError("contains: dimension mismatch");
  return contains(a, to_hcone(b));
}

StrictDirection strictly_negative_polar(const Matrix& points, std::size_t dim) {
  StrictDirection out;
  if (points.empty()) {
    out.vacuous = true;
    return out;
  }
  // max s  s.t. v'd + s <= 0, -1 <= d <= 1, s <= 1.
  lp::LinearProgram prog(dim + 1);
  prog.objective = unit(dim + 1, dim);
  for (std::size_t j = 0; j < dim; ++j) prog.set_bounds(j, Rational(-1), Rational(1));
  prog.set_bounds(dim, std::nullopt, Rational(1));
  for (const auto& v : points) {
    check_dim(v, dim, "strictly_negative_polar point");
    Vec row = v;
    row.push_back(1);
    prog.add(std::move(row), lp::Relation::kLessEqual, 0);
  }
  auto res = lp::solve(prog);
  const auto* opt = lp::as_optimal(res);
  if (!opt) throw InternalError("strict polar LP is not optimal");
  if (opt->value > 0) {
    out.direction = Vec(opt->primal.begin(), opt->primal.begin() + static_cast<long>(dim));
  }
  return out;
}

std::size_t span_rank(const Matrix& points) { return rank(points); }

RelativeInterior relative_interior_member(const Vec& p, const Polytope& q) {
  RelativeInterior out;
  if (q.empty()) return out;
  check_dim(p, q.dim, "relative_interior_member");
  Polytope c = canonical(q);
  const std::size_t k = c.vertices.size();
  // max tau  s.t. sum lambda_j v_j = p, sum lambda_j = 1, lambda_j >= tau.
  GenConvexSet s{c, FGCone::zero(q.dim)};
  lp::LinearProgram prog = decomposition_system(p, s);
  prog.num_vars = k + 1;
  for (auto& con : prog.constraints) con.coefficients.push_back(0);
  prog.lower.push_back(std::nullopt);
  prog.upper.push_back(Rational(1));
  prog.objective = unit(k + 1, k);
  for (std::size_t j = 0; j < k; ++j) {
    Vec row = zeros(k + 1);
    row[j] = 1;
    row[k] = -1;
    prog.add(std::move(row), lp::Relation::kGreaterEqual, 0);
  }
  out.vertices = c.vertices;
  auto res = lp::solve(prog);
  if (const auto* opt = lp::as_optimal(res)) {
    if (opt->value > 0) {
      out.member = true;
      out.coeffs.assign(opt->primal.begin(), opt->primal.begin() + static_cast<long>(k));
    }
  }
  return out;
}

}  // namespace mosip
