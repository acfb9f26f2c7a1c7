#include "mosip/problem.h"

#include <algorithm>
#include <functional>

#include "mosip/errors.h"

namespace mosip {

namespace {

Rational param_or(const std::map<std::string, Rational>& params, const std::string& key,
                  const Rational& fallback) {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

// g_0 = 2x, g_{2k+1} = x - 1/(k+1), g_{2k} = 3x - 1/k.
ConvexFunc example1_member(std::size_t t) {
  if (t == 0) return ConvexFunc::affine({Rational(2)}, 0);
  const long k = static_cast<long>(t / 2);
  if (t % 2 == 1) return ConvexFunc::affine({Rational(1)}, -make_rational(1, k + 1));
  return ConvexFunc::affine({Rational(3)}, -make_rational(1, k));
}

// Support function of an inscribed polygon of
// X_t = {x >= 0 : x_1^2 + x_2^2 - 2(1+t)x_2 <= 0}, the right half of the
// disk with center (0, r), r = 1 + t. Vertices are rational points of the
// semicircle (0, r) + r((1-u^2)/(1+u^2), 2u/(1+u^2)) for u = -1..1 in
// steps of 2/7; u = -1 and u = 1 give the segment endpoints (0,0), (0,2r).
ConvexFunc example2_member(std::size_t t) {
  const Rational r = 1 + Rational(static_cast<long>(t));
  Matrix vertices;
  for (long k = -7; k <= 7; k += 2) {
    Rational u = make_rational(k, 7);
    Rational den = 1 + u * u;
    vertices.push_back({Rational(r * (1 - u * u) / den), Rational(r + r * 2 * u / den)});
  }
  FGCone quadrant{2, {{Rational(1), Rational(0)}, {Rational(0), Rational(1)}}};
  return ConvexFunc::support_polygon(std::move(vertices), quadrant);
}

// g_t = -sqrt(2tx - x^2) with t spread evenly over [t_min, t_max].
ConvexFunc example3_member(const std::map<std::string, Rational>& params, std::size_t k,
                           std::size_t truncation) {
  Rational lo = param_or(params, "t_min", 1);
  Rational hi = param_or(params, "t_max", 2);
  if (lo <= 0 || hi < lo) throw InputError("example3 needs 0 < t_min <= t_max");
  Rational t = lo;
  if (truncation > 1) {
    t += (hi - lo) * Rational(static_cast<long>(k)) / Rational(static_cast<long>(truncation - 1));
  }
  return ConvexFunc::neg_sqrt_parabola(t);
}

std::vector<Vec> validation_grid(std::size_t n) {
  // Half-integer grid on [-2, 2]^n.
  std::vector<Vec> pts{{}};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Vec> next;
    for (const auto& p : pts) {
      for (long k = -4; k <= 4; ++k) {
        Vec q = p;
        q.push_back(make_rational(k, 2));
        next.push_back(std::move(q));
      }
    }
    pts = std::move(next);
  }
  return pts;
}

}  // namespace

std::vector<std::string> builtin_families() { return {"example1", "example2", "example3"}; }

ConvexFunc builtin_member(const std::string& name, const std::map<std::string, Rational>& params,
                          std::size_t t, std::size_t truncation) {
  if (name == "example1") return example1_member(t);
  if (name == "example2") return example2_member(t);
  if (name == "example3") return example3_member(params, t, truncation);
  throw InputError("unknown constraint family '" + name + "'");
}

ConstraintFamily ConstraintFamily::finite(std::vector<ConvexFunc> funcs) {
  ConstraintFamily f;
  f.funcs_ = std::move(funcs);
  return f;
}

ConstraintFamily ConstraintFamily::indexed(std::string name, std::map<std::string, Rational> params,
                                           std::size_t truncation) {
  if (truncation < 1) throw InputError("indexed family needs truncation >= 1");
  if (name.empty()) throw InputError("indexed family needs a name");
  ConstraintFamily f;
  for (std::size_t t = 0; t < truncation; ++t) {
    f.funcs_.push_back(builtin_member(name, params, t, truncation));
  }
  f.indexed_name_ = std::move(name);
  f.params_ = std::move(params);
  return f;
}

std::size_t ConstraintFamily::size() const { return funcs_.size(); }

ConstraintFamily ConstraintFamily::retruncated(std::size_t truncation) const {
  if (is_finite()) throw InputError("truncation applies to indexed families only");
  return indexed(indexed_name_, params_, truncation);
}

void MosipProblem::validate() const {
  if (dim == 0) throw InputError("dimension must be positive");
  if (objectives.empty()) throw InputError("at least one objective is required");
  for (std::size_t i = 0; i < objectives.size(); ++i) {
    if (objectives[i].dim() != dim) {
      throw InputError("objective " + std::to_string(i) + " has the wrong dimension");
    }
    if (objectives[i].domain() || objectives[i].kind() == ConvexFunc::Kind::kNegSqrtParabola1D) {
      throw InputError("objective " + std::to_string(i) + " must be finite-valued");
    }
  }
  for (std::size_t t = 0; t < constraints.size(); ++t) {
    if (constraints.at(t).dim() != dim) {
      throw InputError("constraint " + std::to_string(t) + " has the wrong dimension");
    }
  }
  if (feasible_set) {
    if (feasible_set->dim != dim) throw InputError("feasible_set has the wrong dimension");
    feasible_set->validate();
  }
  if (psi_override && psi_override->dim() != dim) {
    throw InputError("psi_override has the wrong dimension");
  }
  if (dim > 3) return;  // sampled checks below are for desk-scale dimensions
  for (const auto& x : validation_grid(dim)) {
    std::optional<ExtReal> psi_x;
    if (psi_override) psi_x = eval(*psi_override, x);
    bool in_s = feasible_set && feasible_set->contains(x);
    for (std::size_t t = 0; t < constraints.size(); ++t) {
      const ConvexFunc& g = constraints.at(t);
      if (g.kind() == ConvexFunc::Kind::kPrecomputed) continue;
      ExtReal gx = eval(g, x);
      if (psi_x && *psi_x < gx) {
        throw InputError("psi_override is below constraint " + std::to_string(t) + " at " +
                         to_string(x));
      }
      if (in_s && gx > ExtReal(0)) {
        throw InputError("feasible_set point " + to_string(x) + " violates constraint " +
                         std::to_string(t));
      }
    }
  }
}

bool MosipProblem::approximated() const {
  return std::any_of(constraints.members().begin(), constraints.members().end(),
                     [](const ConvexFunc& g) { return g.approximates(); });
}

bool MosipProblem::is_continuous() const {
  if (continuous) return true;
  if (!constraints.is_finite()) return false;
  return std::all_of(constraints.members().begin(), constraints.members().end(),
                     [](const ConvexFunc& g) {
                       return !g.domain() && g.kind() != ConvexFunc::Kind::kNegSqrtParabola1D &&
                              g.kind() != ConvexFunc::Kind::kPrecomputed;
                     });
}

bool MosipProblem::polyhedral() const {
  auto poly = [](const ConvexFunc& f) { return f.polyhedral(); };
  return std::all_of(objectives.begin(), objectives.end(), poly) &&
         std::all_of(constraints.members().begin(), constraints.members().end(), poly);
}

MosipProblem builtin_problem(const std::string& name, std::size_t truncation) {
  MosipProblem p;
  if (name == "example1") {
    p.dim = 1;
    p.objectives = {ConvexFunc::affine({Rational(-2)}, 0), ConvexFunc::affine({Rational(-1)}, 0)};
    p.constraints = ConstraintFamily::indexed(name, {}, truncation);
    p.feasible_set = HPolyhedron{1, {}, {}};
    p.feasible_set->add_row({Rational(1)}, 0);
    p.psi_override = ConvexFunc::max_affine({{{Rational(1)}, 0}, {{Rational(3)}, 0}});
    p.continuous = true;  // T is discrete and every g_t is affine
  } else if (name == "example2") {
    p.dim = 2;
    ConvexFunc f = ConvexFunc::affine({Rational(-1), Rational(0)}, 0);
    p.objectives = {f, f};
    p.constraints = ConstraintFamily::indexed(name, {}, truncation);
    HPolyhedron neg{2, {}, {}};
    neg.add_row({Rational(1), Rational(0)}, 0);
    neg.add_row({Rational(0), Rational(1)}, 0);
    p.feasible_set = neg;
    // psi is the indicator of the nonpositive quadrant.
    p.psi_override = ConvexFunc::affine({Rational(0), Rational(0)}, 0).with_domain(neg);
    p.continuous = true;  // discrete T, finite-valued support functions
  } else if (name == "example3") {
    p.dim = 1;
    // Only the constraint system matters here; any finite objective will do.
    p.objectives = {ConvexFunc::affine({Rational(1)}, 0)};
    p.constraints = ConstraintFamily::indexed(name, {}, truncation);
    p.feasible_set = HPolyhedron{1, {}, {}};
    p.feasible_set->add_row({Rational(-1)}, 0);
    p.feasible_set->add_row({Rational(1)}, 2);
  } else {
    throw InputError("unknown built-in problem '" + name + "'");
  }
  p.validate();
  return p;
}

void require_feasible(const MosipProblem& p, const Vec& x) {
  if (x.size() != p.dim) {
    throw InputError("candidate has dimension " + std::to_string(x.size()) + ", expected " +
                     std::to_string(p.dim));
  }
  if (p.feasible_set) {
    const auto& s = *p.feasible_set;
    for (std::size_t r = 0; r < s.a.size(); ++r) {
      if (dot(s.a[r], x) > s.b[r]) {
        throw InfeasibleCandidateError(
            "candidate " + to_string(x) + " violates feasible_set row " + std::to_string(r), -1);
      }
    }
  }
  for (std::size_t t = 0; t < p.constraints.size(); ++t) {
    if (eval(p.constraints.at(t), x) > ExtReal(0)) {
      throw InfeasibleCandidateError(
          "candidate " + to_string(x) + " violates constraint " + std::to_string(t),
          static_cast<long>(t));
    }
  }
}

std::vector<std::size_t> active_set(const MosipProblem& p, const Vec& x, const Rational& eps) {
  if (eps < 0) throw InputError("eps must be nonnegative");
  require_feasible(p, x);
  std::vector<std::size_t> out;
  for (std::size_t t = 0; t < p.constraints.size(); ++t) {
    if (eval(p.constraints.at(t), x) >= ExtReal(-eps)) out.push_back(t);
  }
  return out;
}

BoundValue psi(const MosipProblem& p, const Vec& x) {
  if (p.psi_override) return {eval(*p.psi_override, x), false};
  if (p.constraints.size() == 0) return {ExtReal::neg_inf(), false};
  ExtReal best = ExtReal::neg_inf();
  for (const auto& g : p.constraints.members()) best = std::max(best, eval(g, x));
  return {best, p.truncated()};
}

BoundValue iota(const MosipProblem& p, const Vec& x) {
  if (p.constraints.size() == 0) return {ExtReal::pos_inf(), false};
  ExtReal best = ExtReal::pos_inf();
  for (const auto& g : p.constraints.members()) best = std::min(best, eval(g, x));
  return {best, p.truncated()};
}

FSets f_sets(const MosipProblem& p, const Vec& x) {
  FSets out;
  for (std::size_t i = 0; i < p.objectives.size(); ++i) {
    Subdifferential s = subdiff(p.objectives[i], x);
    if (s.empty() || !s.bounded()) {
      throw PreconditionError("objective " + std::to_string(i) +
                              " has no bounded subdifferential at " + to_string(x));
    }
    out.per_objective.push_back(s.base.vertices);
    for (const auto& v : s.base.vertices) out.F.push_back(v);
  }
  out.F_star = canonical(Polytope{p.dim, out.F});
  std::sort(out.F.begin(), out.F.end(), [](const Vec& a, const Vec& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  });
  out.F.erase(std::unique(out.F.begin(), out.F.end()), out.F.end());
  return out;
}

GSets g_sets(const MosipProblem& p, const Vec& x) {
  GSets out;
  out.active = active_set(p, x, 0);
  FGCone closure{p.dim, {}};
  for (auto t : out.active) {
    Subdifferential s = subdiff(p.constraints.at(t), x);
    if (!s.bounded()) {
      throw UnsupportedError("constraint " + std::to_string(t) +
                             " has an unbounded subdifferential at the candidate");
    }
    out.approximated = out.approximated || s.approximated;
    for (const auto& v : s.base.vertices) {
      out.labelled.push_back({t, v});
      if (std::find(out.G.begin(), out.G.end(), v) == out.G.end()) out.G.push_back(v);
    }
    for (auto& gen : cone_closure(s).generators) closure.generators.push_back(std::move(gen));
    out.per_index.push_back(std::move(s));
  }
  out.is_empty = out.G.empty();
  out.G_star = canonical(FGCone{p.dim, out.G});
  out.closure = canonical(closure);
  return out;
}

HPolyhedron sublevel_Q(const MosipProblem& p, const Vec& x, std::size_t i) {
  if (i >= p.objectives.size()) throw InputError("objective index out of range");
  if (!p.feasible_set) throw PreconditionError("sublevel sets need a feasible_set description");
  HPolyhedron q = *p.feasible_set;
  for (std::size_t l = 0; l < p.objectives.size(); ++l) {
    if (l == i) continue;
    const ConvexFunc& f = p.objectives[l];
    if (!f.polyhedral()) {
      throw UnsupportedError("sublevel set of a " + kind_name(f.kind()) + " objective");
    }
    Rational level = eval(f, x).rational();
    for (const auto& piece : to_max_affine(f)) q.add_row(piece.a, level - piece.b);
  }
  return q;
}

HCone tangent_cone(const HPolyhedron& s, const Vec& x) {
  HCone c{s.dim, {}};
  for (auto r : s.active_rows(x)) c.normals.push_back(s.a[r]);
  return c;
}

TangentNormal tangent_normal(const MosipProblem& p, const Vec& x) {
  if (!p.feasible_set) {
    throw PreconditionError("tangent and normal cones need a feasible_set description");
  }
  HCone c = tangent_cone(*p.feasible_set, x);
  FGCone n = canonical(FGCone{p.dim, c.normals});
  return {std::move(c), std::move(n)};
}

CandidatePoint::CandidatePoint(const MosipProblem& p, Vec x) : problem_(&p), x_(std::move(x)) {
  require_feasible(p, x_);
  f_ = f_sets(p, x_);
  g_ = g_sets(p, x_);
  if (p.feasible_set) tn_ = tangent_normal(p, x_);
  try {
    if (p.psi_override) {
      psi_subdiff_ = subdiff(*p.psi_override, x_);
      psi_note_ = "from psi_override";
    } else {
      // Max rule over the indices attaining psi(x).
      ExtReal top = psi(p, x_).value;
      Subdifferential s{{p.dim, {}}, FGCone::zero(p.dim), false, std::nullopt};
      bool any_empty = false;
      for (std::size_t t = 0; t < p.constraints.size(); ++t) {
        const ConvexFunc& g = p.constraints.at(t);
        if (eval(g, x_) != top) continue;
        Subdifferential st = subdiff(g, x_);
        if (!st.bounded()) throw UnsupportedError("unbounded constraint subdifferential");
        if (st.empty()) any_empty = true;
        s.approximated = s.approximated || st.approximated;
        for (auto& v : st.base.vertices) s.base.vertices.push_back(std::move(v));
      }
      if (any_empty) s.base.vertices.clear();
      s.base = canonical(s.base);
      psi_subdiff_ = std::move(s);
      psi_note_ = p.truncated() ? "max rule over the truncated family" : "max rule";
    }
  } catch (const std::exception& e) {
    psi_subdiff_.reset();
    psi_note_ = e.what();
  }
}

std::vector<std::size_t> CandidatePoint::active_eps(const Rational& eps) const {
  return active_set(*problem_, x_, eps);
}

}  // namespace mosip
