#include "mosip/kkt.h"

#include <algorithm>
#include <utility>

#include "mosip/errors.h"
#include "mosip/lp.h"

namespace mosip {
namespace {

// Variables: mu (per-objective subgradient vertices), c (labelled constraint
// subgradient vertices), and tau in strong mode.
struct KktSystem {
  lp::LinearProgram lp;
  std::vector<std::pair<std::size_t, std::size_t>> mu;  // (objective, vertex)
  std::size_t num_c = 0;
  bool strong = false;
};

KktSystem build_system(const CandidatePoint& c, const Vec& target, bool strong) {
  const std::size_t n = c.problem().dim;
  const auto& per_obj = c.f().per_objective;
  const auto& labelled = c.g().labelled;
  KktSystem s;
  s.strong = strong;
  for (std::size_t i = 0; i < per_obj.size(); ++i) {
    for (std::size_t j = 0; j < per_obj[i].size(); ++j) s.mu.emplace_back(i, j);
  }
  s.num_c = labelled.size();
  const std::size_t nv = s.mu.size() + s.num_c + (strong ? 1 : 0);
  s.lp = lp::LinearProgram(nv);
  for (std::size_t j = 0; j < nv; ++j) s.lp.set_nonnegative(j);
  for (std::size_t r = 0; r < n; ++r) {
    Vec row = zeros(nv);
    for (std::size_t k = 0; k < s.mu.size(); ++k) {
      row[k] = per_obj[s.mu[k].first][s.mu[k].second][r];
    }
    for (std::size_t k = 0; k < s.num_c; ++k) row[s.mu.size() + k] = labelled[k].v[r];
    s.lp.add(std::move(row), lp::Relation::kEqual, target[r]);
  }
  Vec simplex = zeros(nv);
  for (std::size_t k = 0; k < s.mu.size(); ++k) simplex[k] = 1;
  s.lp.add(std::move(simplex), lp::Relation::kEqual, 1);
  if (strong) {
    const std::size_t tau = nv - 1;
    for (std::size_t i = 0; i < per_obj.size(); ++i) {
      Vec row = zeros(nv);
      for (std::size_t k = 0; k < s.mu.size(); ++k) {
        if (s.mu[k].first == i) row[k] = 1;
      }
      row[tau] = -1;
      s.lp.add(std::move(row), lp::Relation::kGreaterEqual, 0);
    }
    s.lp.set_bounds(tau, Rational(0), Rational(1));
    s.lp.objective = zeros(nv);
    s.lp.objective[tau] = 1;
  }
  return s;
}

KktCertificate extract(const CandidatePoint& c, const KktSystem& s, const Vec& primal,
                       const Vec& target, KktCertificate::Kind kind) {
  const std::size_t n = c.problem().dim;
  const auto& per_obj = c.f().per_objective;
  KktCertificate k;
  k.kind = kind;
  k.target = target;
  for (std::size_t i = 0; i < per_obj.size(); ++i) {
    ObjectiveTerm term;
    term.alpha = 0;
    term.coeffs = zeros(per_obj[i].size());
    term.xi = zeros(n);
    for (std::size_t m = 0; m < s.mu.size(); ++m) {
      if (s.mu[m].first != i) continue;
      term.alpha += primal[m];
      term.coeffs[s.mu[m].second] = primal[m];
    }
    if (term.alpha > 0) {
      for (auto& w : term.coeffs) w /= term.alpha;
    } else {
      term.coeffs[0] = 1;  // arbitrary selection, fixed for determinism
    }
    for (std::size_t j = 0; j < per_obj[i].size(); ++j) axpy(term.xi, term.coeffs[j], per_obj[i][j]);
    k.objectives.push_back(std::move(term));
  }
  const auto& labelled = c.g().labelled;
  for (std::size_t m = 0; m < s.num_c; ++m) {
    const Rational& w = primal[s.mu.size() + m];
    if (w == 0) continue;
    const std::size_t t = labelled[m].index;
    auto it = std::find_if(k.constraints.begin(), k.constraints.end(),
                           [t](const ConstraintTerm& ct) { return ct.t == t; });
    if (it == k.constraints.end()) {
      k.constraints.push_back({t, Rational(0), zeros(n)});
      it = std::prev(k.constraints.end());
    }
    it->beta += w;
    axpy(it->zeta, w, labelled[m].v);  // unnormalized until the end
  }
  for (auto& ct : k.constraints) {
    for (auto& z : ct.zeta) z /= ct.beta;
  }
  std::sort(k.constraints.begin(), k.constraints.end(),
            [](const ConstraintTerm& a, const ConstraintTerm& b) { return a.t < b.t; });
  return k;
}

GenConvexSet kkt_set(const CandidatePoint& c) { return {c.f().F_star, c.g().G_star}; }

Provenance failure_provenance(const CandidatePoint& c) {
  Provenance p;
  p.truncated = c.problem().truncated();
  p.approximated = c.g().approximated;
  return p;
}

std::optional<KktCertificate> solve_weak(const CandidatePoint& c, const Vec& target,
                                         KktCertificate::Kind kind) {
  KktSystem s = build_system(c, target, false);
  auto res = lp::feasible_point(s.lp);
  if (!res.point) return std::nullopt;
  KktCertificate k = extract(c, s, *res.point, target, kind);
  if (!verify_certificate(c, k)) throw InternalError("KKT certificate failed its own check");
  return k;
}

bool in_subdiff(const Subdifferential& s, const Vec& v) {
  if (s.empty()) return false;
  return membership(v, {s.base, s.recession}).member;
}

const QualReport* find_report(const std::vector<QualReport>& reports, QualId q) {
  for (const auto& r : reports) {
    if (r.qual == q) return &r;
  }
  return nullptr;
}

bool holds_exactly(const std::vector<QualReport>& reports, QualId q) {
  const QualReport* r = find_report(reports, q);
  return r && r->status == Status::kHolds && r->provenance.exact();
}

int rank(Level l) { return static_cast<int>(l); }

}  // namespace

std::string kind_name(KktCertificate::Kind k) {
  switch (k) {
    case KktCertificate::Kind::kWeak: return "weak";
    case KktCertificate::Kind::kStrong: return "strong";
    case KktCertificate::Kind::kPerturbed: return "perturbed";
  }
  return "?";
}

Vec kkt_residual(const KktCertificate& k, std::size_t dim) {
  Vec r = zeros(dim);
  for (const auto& o : k.objectives) {
    if (o.xi.size() != dim) throw InputError("certificate: xi dimension mismatch");
    axpy(r, o.alpha, o.xi);
  }
  for (const auto& ct : k.constraints) {
    if (ct.zeta.size() != dim) throw InputError("certificate: zeta dimension mismatch");
    axpy(r, ct.beta, ct.zeta);
  }
  if (k.target.size() != dim) throw InputError("certificate: target dimension mismatch");
  return sub(r, k.target);
}

bool verify_certificate(const CandidatePoint& c, const KktCertificate& k) {
  const MosipProblem& p = c.problem();
  const std::size_t n = p.dim;
  if (k.objectives.size() != p.objectives.size()) return false;
  if (k.target.size() != n) return false;
  if (k.kind != KktCertificate::Kind::kPerturbed && !is_zero(k.target)) return false;
  Rational total = 0;
  for (std::size_t i = 0; i < k.objectives.size(); ++i) {
    const auto& o = k.objectives[i];
    if (o.alpha < 0 || o.xi.size() != n) return false;
    if (k.kind == KktCertificate::Kind::kStrong && o.alpha == 0) return false;
    total += o.alpha;
    if (!in_subdiff(subdiff(p.objectives[i], c.x()), o.xi)) return false;
  }
  if (total != 1) return false;
  for (const auto& ct : k.constraints) {
    if (ct.t >= p.constraints.size() || ct.beta <= 0 || ct.zeta.size() != n) return false;
    const ConvexFunc& g = p.constraints.at(ct.t);
    ExtReal v = eval(g, c.x());
    if (!v.is_finite() || v.sign() != 0) return false;
    if (!in_subdiff(subdiff(g, c.x()), ct.zeta)) return false;
  }
  return is_zero(kkt_residual(k, n));
}

bool verify_separator(const CandidatePoint& c, const Separator& s) {
  const std::size_t n = c.problem().dim;
  if (s.h.size() != n) return false;
  for (const auto& v : c.f().F_star.vertices) {
    if (dot(s.h, v) > s.bound) return false;
  }
  for (const auto& g : c.g().G_star.generators) {
    if (dot(s.h, g) > 0) return false;
  }
  return s.bound < 0;
}

WeakKkt weak_kkt(const CandidatePoint& c) {
  const std::size_t n = c.problem().dim;
  if (c.f().F_star.empty()) throw InputError("weak KKT: no objective subgradients");
  WeakKkt out;
  out.certificate = solve_weak(c, zeros(n), KktCertificate::Kind::kWeak);
  if (out.certificate) return out;
  Membership m = membership(zeros(n), kkt_set(c));
  if (m.member || !m.separator) throw InternalError("weak KKT: LP and membership disagree");
  out.separator = m.separator;
  out.provenance = failure_provenance(c);
  return out;
}

StrongKkt strong_kkt(const CandidatePoint& c) {
  const std::size_t n = c.problem().dim;
  StrongKkt out;
  out.tau = 0;
  out.provenance = failure_provenance(c);

  // 0 in ri F* + G*: max s with lambda_k >= s over F* vertices.
  {
    const auto& verts = c.f().F_star.vertices;
    const auto& gens = c.g().G_star.generators;
    const std::size_t nv = verts.size() + gens.size() + 1;
    const std::size_t svar = nv - 1;
    lp::LinearProgram lp(nv);
    for (std::size_t j = 0; j < svar; ++j) lp.set_nonnegative(j);
    lp.set_bounds(svar, std::nullopt, Rational(1));
    for (std::size_t r = 0; r < n; ++r) {
      Vec row = zeros(nv);
      for (std::size_t k = 0; k < verts.size(); ++k) row[k] = verts[k][r];
      for (std::size_t k = 0; k < gens.size(); ++k) row[verts.size() + k] = gens[k][r];
      lp.add(std::move(row), lp::Relation::kEqual, 0);
    }
    Vec simplex = zeros(nv);
    for (std::size_t k = 0; k < verts.size(); ++k) simplex[k] = 1;
    lp.add(std::move(simplex), lp::Relation::kEqual, 1);
    for (std::size_t k = 0; k < verts.size(); ++k) {
      Vec row = zeros(nv);
      row[k] = -1;
      row[svar] = 1;
      lp.add(std::move(row), lp::Relation::kLessEqual, 0);
    }
    lp.objective = zeros(nv);
    lp.objective[svar] = 1;
    auto res = lp::solve(lp);
    if (const auto* opt = lp::as_optimal(res); opt && opt->value > 0) {
      out.ri_holds = true;
      Vec g = zeros(n);
      for (std::size_t k = 0; k < gens.size(); ++k) axpy(g, opt->primal[verts.size() + k], gens[k]);
      out.ri_point = std::move(g);
    }
  }

  KktSystem s = build_system(c, zeros(n), true);
  auto res = lp::solve(s.lp);
  const auto* opt = lp::as_optimal(res);
  if (!opt) return out;  // weak system infeasible
  out.weak_holds = true;
  out.tau = opt->value;
  if (out.tau > 0) {
    out.certificate = extract(c, s, opt->primal, zeros(n), KktCertificate::Kind::kStrong);
    if (!verify_certificate(c, *out.certificate)) {
      throw InternalError("strong KKT certificate failed its own check");
    }
  }
  if (out.ri_holds && !out.certificate) throw InternalError("ri test holds but strong KKT fails");
  return out;
}

PerturbedKkt perturbed_kkt(const CandidatePoint& c, const std::vector<Rational>& eps_grid) {
  const std::size_t n = c.problem().dim;
  PerturbedKkt out;
  out.nu = 0;
  ZeroInterior zi = zero_interior(kkt_set(c));
  if (zi.inside) {
    out.holds = true;
    out.nu = zi.radius;
    out.nu_exact = zi.radius_exact;
    for (std::size_t i = 0; i < n; ++i) {
      for (int sgn : {1, -1}) {
        Vec w = unit(n, i, sgn * out.nu);
        auto k = solve_weak(c, w, KktCertificate::Kind::kPerturbed);
        if (!k) throw InternalError("perturbed KKT: axis point outside the certified ball");
        out.axis.push_back(std::move(*k));
      }
    }
  } else {
    out.escape = zi.escape;
    out.provenance = failure_provenance(c);
  }

  if (c.problem().differentiable_constraints) {
    const std::vector<Rational> grid = eps_grid.empty() ? QualOptions().eps_grid : eps_grid;
    for (const auto& eps : grid) {
      FGCone cone{n, {}};
      bool ok = true;
      for (auto t : c.active_eps(eps)) {
        try {
          Subdifferential s = subdiff(c.problem().constraints.at(t), c.x());
          for (const auto& v : s.base.vertices) cone.generators.push_back(v);
          for (const auto& r : s.recession.generators) cone.generators.push_back(r);
        } catch (const std::exception&) {
          ok = false;
          break;
        }
      }
      if (!ok) break;
      ZeroInterior e = zero_interior({c.f().F_star, canonical(cone)});
      out.eps_report.push_back({eps, e.inside, e.radius});
    }
  }
  return out;
}

bool verify_perturbed(const CandidatePoint& c, const PerturbedKkt& r) {
  const std::size_t n = c.problem().dim;
  GenConvexSet s = kkt_set(c);
  if (!r.holds) {
    if (!r.escape || r.escape->size() != n || is_zero(*r.escape)) return false;
    for (const auto& v : s.base.vertices) {
      if (dot(v, *r.escape) > 0) return false;
    }
    for (const auto& g : s.recession.generators) {
      if (dot(g, *r.escape) > 0) return false;
    }
    return true;
  }
  if (r.nu <= 0 || r.axis.size() != 2 * n) return false;
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (int sgn : {1, -1}) {
      const KktCertificate& cert = r.axis[k++];
      if (cert.kind != KktCertificate::Kind::kPerturbed) return false;
      if (cert.target != unit(n, i, sgn * r.nu)) return false;
      if (!verify_certificate(c, cert)) return false;
    }
  }
  ZeroInterior zi = zero_interior(s);
  return zi.inside && zi.radius >= r.nu;
}

std::string level_name(Level l) {
  switch (l) {
    case Level::kWeakEfficient: return "WeakEfficient";
    case Level::kEfficient: return "Efficient";
    case Level::kIsolatedEfficient: return "IsolatedEfficient";
  }
  return "?";
}

std::string direction_name(EfficiencyClaim::Direction d) {
  switch (d) {
    case EfficiencyClaim::Direction::kSufficient: return "sufficient";
    case EfficiencyClaim::Direction::kNecessaryGiven: return "necessary-given";
    case EfficiencyClaim::Direction::kCharacterization: return "characterization";
    case EfficiencyClaim::Direction::kCounterexample: return "counterexample";
  }
  return "?";
}

std::vector<EfficiencyClaim> assemble_claims(const ClaimInputs& in) {
  using D = EfficiencyClaim::Direction;
  std::vector<EfficiencyClaim> out;
  auto claim = [&out](Level level, bool holds, D dir, std::string rule, std::vector<QualId> quals,
                      std::string evidence) {
    out.push_back({level, holds, dir, std::move(rule), std::move(quals), std::move(evidence)});
  };

  if (in.weak && in.weak->certificate) {
    claim(Level::kWeakEfficient, true, D::kSufficient, "weak KKT sufficient condition", {},
          "weak KKT certificate");
  }
  if (in.gap_zero_weak) {
    claim(Level::kWeakEfficient, true, D::kSufficient, "gap function zero with lambda >= 0", {},
          "gap-zero witness");
  }
  if (in.strong && in.strong->certificate) {
    claim(Level::kEfficient, true, D::kSufficient, "strong KKT sufficient condition", {},
          "strong KKT certificate");
  }
  if (in.gap_zero_strong) {
    claim(Level::kEfficient, true, D::kSufficient, "gap function zero with lambda > 0", {},
          "gap-zero witness with positive weights");
  }
  if (in.perturbed && in.perturbed->holds) {
    claim(Level::kIsolatedEfficient, true, D::kSufficient, "perturbed KKT sufficient condition", {},
          "0 interior to F* + G* with radius " + to_string(in.perturbed->nu));
  }

  // Negative claims need an exact failure of the certificate search.
  const bool weak_fails = in.weak && !in.weak->certificate && in.weak->provenance.exact();
  if (weak_fails && holds_exactly(in.quals, QualId::kLFMCQ)) {
    claim(Level::kWeakEfficient, false, D::kCharacterization,
          "characterization under LFMCQ via weak KKT condition", {QualId::kLFMCQ},
          "no weak KKT certificate (separator)");
  }
  if (weak_fails && holds_exactly(in.quals, QualId::kWADQ) &&
      holds_exactly(in.quals, QualId::kCCCQ)) {
    claim(Level::kWeakEfficient, false, D::kNecessaryGiven,
          "weak KKT necessary condition under WADQ and CCCQ", {QualId::kWADQ, QualId::kCCCQ},
          "no weak KKT certificate (separator)");
  }
  const bool strong_fails = in.strong && !in.strong->certificate && in.strong->provenance.exact();
  if (strong_fails && holds_exactly(in.quals, QualId::kEADQ) &&
      holds_exactly(in.quals, QualId::kMOQ)) {
    claim(Level::kEfficient, false, D::kNecessaryGiven,
          "strong KKT necessary condition under EADQ and MOQ", {QualId::kEADQ, QualId::kMOQ},
          "strong KKT LP optimum " + to_string(in.strong->tau));
  }
  const bool perturbed_fails =
      in.perturbed && !in.perturbed->holds && in.perturbed->provenance.exact();
  if (perturbed_fails && in.continuous && in.differentiable_constraints &&
      holds_exactly(in.quals, QualId::kMFCQ)) {
    claim(Level::kIsolatedEfficient, false, D::kNecessaryGiven,
          "perturbed KKT necessary condition under continuity and MFCQ", {QualId::kMFCQ},
          "0 not interior to F* + G*");
  }

  if (in.strict_dominator) {
    claim(Level::kWeakEfficient, false, D::kCounterexample, "definition of weak efficiency", {},
          "feasible point " + to_string(*in.strict_dominator) + " strictly dominates");
  }
  if (in.dominator) {
    claim(Level::kEfficient, false, D::kCounterexample, "definition of efficiency", {},
          "feasible point " + to_string(*in.dominator) + " dominates");
  }
  return out;
}

bool claims_consistent(const std::vector<EfficiencyClaim>& claims) {
  for (const auto& pos : claims) {
    if (!pos.holds) continue;
    for (const auto& neg : claims) {
      if (!neg.holds && rank(neg.level) <= rank(pos.level)) return false;
    }
  }
  return true;
}

}  // namespace mosip
