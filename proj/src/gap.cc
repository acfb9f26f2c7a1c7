#include "mosip/gap.h"

#include <utility>

#include "mosip/cones.h"
#include "mosip/errors.h"
#include "mosip/lp.h"
#include "mosip/quals.h"

namespace mosip {
namespace {

constexpr unsigned kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29};

Rational radical_inverse(unsigned base, std::size_t k) {
  Rational out = 0;
  Rational scale(1, base);
  while (k > 0) {
    out += scale * static_cast<unsigned long>(k % base);
    k /= base;
    scale /= base;
  }
  return out;
}

struct ZeroSearch {
  std::optional<Vec> lambda;
  std::vector<Vec> xi;
  std::vector<Vec> coeffs;
  Rational tau;
};

// -sum_i lambda_i xi_i in cone(normals), xi_i in conv(per_objective[i]).
ZeroSearch solve_zero(const std::vector<Matrix>& per_objective, const Matrix& normals,
                      std::size_t n, GapMode mode) {
  std::vector<std::pair<std::size_t, std::size_t>> mu;
  for (std::size_t i = 0; i < per_objective.size(); ++i) {
    for (std::size_t j = 0; j < per_objective[i].size(); ++j) mu.emplace_back(i, j);
  }
  const bool strong = mode == GapMode::kStrong;
  const std::size_t nv = mu.size() + normals.size() + (strong ? 1 : 0);
  lp::LinearProgram lp(nv);
  for (std::size_t j = 0; j < nv; ++j) lp.set_nonnegative(j);
  for (std::size_t r = 0; r < n; ++r) {
    Vec row = zeros(nv);
    for (std::size_t k = 0; k < mu.size(); ++k) row[k] = per_objective[mu[k].first][mu[k].second][r];
    for (std::size_t k = 0; k < normals.size(); ++k) row[mu.size() + k] = normals[k][r];
    lp.add(std::move(row), lp::Relation::kEqual, 0);
  }
  Vec simplex = zeros(nv);
  for (std::size_t k = 0; k < mu.size(); ++k) simplex[k] = 1;
  lp.add(std::move(simplex), lp::Relation::kEqual, 1);
  if (strong) {
    const std::size_t tau = nv - 1;
    for (std::size_t i = 0; i < per_objective.size(); ++i) {
      Vec row = zeros(nv);
      for (std::size_t k = 0; k < mu.size(); ++k) {
        if (mu[k].first == i) row[k] = 1;
      }
      row[tau] = -1;
      lp.add(std::move(row), lp::Relation::kGreaterEqual, 0);
    }
    lp.set_bounds(tau, Rational(0), Rational(1));
    lp.objective = zeros(nv);
    lp.objective[tau] = 1;
  }

  ZeroSearch out;
  out.tau = 0;
  Vec primal;
  if (strong) {
    auto res = lp::solve(lp);
    const auto* opt = lp::as_optimal(res);
    if (!opt) return out;
    out.tau = opt->value;
    if (out.tau <= 0) return out;
    primal = opt->primal;
  } else {
    auto res = lp::feasible_point(lp);
    if (!res.point) return out;
    primal = *res.point;
  }
  Vec lambda = zeros(per_objective.size());
  out.coeffs.resize(per_objective.size());
  for (std::size_t i = 0; i < per_objective.size(); ++i) out.coeffs[i] = zeros(per_objective[i].size());
  for (std::size_t k = 0; k < mu.size(); ++k) {
    lambda[mu[k].first] += primal[k];
    out.coeffs[mu[k].first][mu[k].second] = primal[k];
  }
  for (std::size_t i = 0; i < per_objective.size(); ++i) {
    if (lambda[i] > 0) {
      for (auto& w : out.coeffs[i]) w /= lambda[i];
    } else {
      out.coeffs[i][0] = 1;
    }
    Vec xi = zeros(n);
    for (std::size_t j = 0; j < per_objective[i].size(); ++j) axpy(xi, out.coeffs[i][j], per_objective[i][j]);
    out.xi.push_back(std::move(xi));
  }
  out.lambda = std::move(lambda);
  return out;
}

Vec weighted_sum(const std::vector<Vec>& xi, const Vec& lambda, std::size_t n) {
  Vec c = zeros(n);
  for (std::size_t i = 0; i < xi.size(); ++i) axpy(c, lambda[i], xi[i]);
  return c;
}

}  // namespace

std::string gap_mode_name(GapMode m) { return m == GapMode::kWeak ? "weak" : "strong"; }

ExtReal gap_sup(const HPolyhedron& s, const Vec& x, const Vec& c) {
  const std::size_t n = s.dim;
  if (x.size() != n || c.size() != n) throw InputError("gap: dimension mismatch");
  if (is_zero(c)) {
    // sup of 0 over S: 0 unless S is empty.
    lp::LinearProgram feas(n);
    for (std::size_t r = 0; r < s.a.size(); ++r) feas.add(s.a[r], lp::Relation::kLessEqual, s.b[r]);
    return lp::feasible_point(feas).point ? ExtReal(0) : ExtReal::neg_inf();
  }
  lp::LinearProgram lp(n);
  for (std::size_t r = 0; r < s.a.size(); ++r) lp.add(s.a[r], lp::Relation::kLessEqual, s.b[r]);
  lp.objective = scaled(c, -1);
  auto res = lp::solve(lp);
  if (lp::is_unbounded(res)) return ExtReal::pos_inf();
  if (lp::is_infeasible(res)) return ExtReal::neg_inf();
  return ExtReal(dot(c, x) + lp::as_optimal(res)->value);
}

ExtReal gap_eval(const MosipProblem& p, const Vec& x, const std::vector<Vec>& xi,
                 const Vec& lambda) {
  if (!p.feasible_set) throw PreconditionError("gap function needs a feasible_set description");
  if (xi.size() != p.objectives.size() || lambda.size() != p.objectives.size()) {
    throw InputError("gap: one selection and one weight per objective");
  }
  Rational total = 0;
  for (const auto& l : lambda) {
    if (l < 0) throw InputError("gap: negative weight");
    total += l;
  }
  if (total != 1) throw InputError("gap: weights must sum to 1");
  for (std::size_t i = 0; i < xi.size(); ++i) {
    Subdifferential s = subdiff(p.objectives[i], x);
    Membership m = membership(xi[i], {s.base, s.recession});
    if (!m.member) {
      std::string msg = "gap: xi_" + std::to_string(i) + " is not a subgradient";
      if (m.separator) msg += " (separator " + to_string(m.separator->h) + ")";
      throw PreconditionError(msg);
    }
  }
  return gap_sup(*p.feasible_set, x, weighted_sum(xi, lambda, p.dim));
}

GapSearch gap_zero_search(const CandidatePoint& c, GapMode mode) {
  GapSearch out;
  out.mode = mode;
  out.tau = 0;
  if (!c.tn()) {
    out.note = "no feasible_set description";
    return out;
  }
  const MosipProblem& p = c.problem();
  ZeroSearch z = solve_zero(c.f().per_objective, c.tn()->N.generators, p.dim, mode);
  out.tau = z.tau;
  if (!z.lambda) {
    out.note = mode == GapMode::kStrong ? "no zero with all weights positive" : "no zero";
    return out;
  }
  GapWitness w{*z.lambda, std::move(z.xi), std::move(z.coeffs), ExtReal(0)};
  w.value = gap_eval(p, c.x(), w.xi, w.lambda);
  if (w.value != ExtReal(0)) throw InternalError("gap witness does not evaluate to zero");
  out.witness = std::move(w);
  return out;
}

Matrix rational_sphere_points(std::size_t n, std::size_t count) {
  Matrix out;
  if (n == 0) return out;
  if (n == 1) return {{Rational(1)}, {Rational(-1)}};
  if (n - 1 > std::size(kPrimes)) throw UnsupportedError("sphere sampling dimension too large");
  for (std::size_t k = 1; k <= count; ++k) {
    Vec u(n - 1);
    Rational s = 0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      u[i] = 3 * (2 * radical_inverse(kPrimes[i], k) - 1);
      s += u[i] * u[i];
    }
    Vec pt(n);
    for (std::size_t i = 0; i + 1 < n; ++i) pt[i] = 2 * u[i] / (s + 1);
    pt[n - 1] = (s - 1) / (s + 1);
    if (k % 2 == 1) pt[n - 1] = -pt[n - 1];
    out.push_back(std::move(pt));
  }
  return out;
}

PerturbedGapReport perturbed_gap_check(const CandidatePoint& c, const Rational& nu,
                                       std::size_t sample_count) {
  if (nu <= 0) throw InputError("perturbed gap check: nu must be positive");
  const MosipProblem& p = c.problem();
  const std::size_t n = p.dim;
  PerturbedGapReport out;
  out.nu = nu;
  out.gap_radius = 0;
  if (!c.tn()) throw PreconditionError("perturbed gap check needs a feasible_set description");

  ZeroInterior gz = zero_interior({c.f().F_star, c.tn()->N});
  out.gap_interior = gz.inside;
  if (gz.inside) out.gap_radius = gz.radius;
  out.kkt_interior = zero_interior({c.f().F_star, c.g().G_star}).inside;
  out.equivalent = out.gap_interior == out.kkt_interior;
  out.within_hypotheses = p.is_continuous() && p.differentiable_constraints &&
                          check(QualId::kMFCQ, c).status == Status::kHolds;

  Matrix ws;
  for (std::size_t i = 0; i < n; ++i) {
    ws.push_back(unit(n, i, nu));
    ws.push_back(unit(n, i, -nu));
  }
  if (n > 1) {
    for (auto& d : rational_sphere_points(n, sample_count)) ws.push_back(scaled(d, nu));
  }
  out.all_success = true;
  for (auto& w : ws) {
    // Subdifferentials of f_i - w'x are the shifted vertex sets.
    std::vector<Matrix> tilted = c.f().per_objective;
    for (auto& m : tilted) {
      for (auto& v : m) v = sub(v, w);
    }
    ZeroSearch z = solve_zero(tilted, c.tn()->N.generators, n, GapMode::kWeak);
    bool ok = z.lambda.has_value();
    if (ok && gap_sup(*p.feasible_set, c.x(), weighted_sum(z.xi, *z.lambda, n)) != ExtReal(0)) {
      throw InternalError("tilted gap witness does not evaluate to zero");
    }
    out.all_success = out.all_success && ok;
    out.per_w.push_back({std::move(w), ok});
  }
  return out;
}

}  // namespace mosip
