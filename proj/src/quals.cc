#include "mosip/quals.h"

#include <algorithm>
#include <map>

#include "mosip/errors.h"
#include "mosip/lp.h"

namespace mosip {

namespace {

using Kind = QualWitness::Kind;

// Rows of the Slater system for a polyhedral family: strict rows read
// a'x + b < 0 (one per affine piece), the others a'x <= b (domains).
struct SlaterRows {
  Matrix a;
  Vec b;
  std::vector<bool> strict;
};

SlaterRows slater_rows(const MosipProblem& p) {
  SlaterRows rows;
  for (const auto& g : p.constraints.members()) {
    for (const auto& piece : to_max_affine(g)) {
      rows.a.push_back(piece.a);
      rows.b.push_back(piece.b);
      rows.strict.push_back(true);
    }
    if (g.domain()) {
      for (std::size_t r = 0; r < g.domain()->a.size(); ++r) {
        rows.a.push_back(g.domain()->a[r]);
        rows.b.push_back(g.domain()->b[r]);
        rows.strict.push_back(false);
      }
    }
  }
  return rows;
}

// min over |d|_inf <= 1 of max_v v'd subject to r'd <= 0 for r in `cone`.
// Returns (value, d); the value is at most 0 since d = 0 is feasible.
std::pair<Rational, Vec> min_max_inner(const Matrix& points, const Matrix& cone, std::size_t n) {
  lp::LinearProgram prog(n + 1);
  prog.objective = unit(n + 1, n, -1);  // maximize -s
  for (std::size_t j = 0; j < n; ++j) prog.set_bounds(j, Rational(-1), Rational(1));
  for (const auto& v : points) {
    Vec row = v;
    row.push_back(-1);
    prog.add(std::move(row), lp::Relation::kLessEqual, 0);
  }
  for (const auto& r : cone) {
    Vec row = r;
    row.push_back(0);
    prog.add(std::move(row), lp::Relation::kLessEqual, 0);
  }
  auto res = lp::solve(prog);
  const auto* opt = lp::as_optimal(res);
  if (!opt) throw InternalError("min-max LP is not optimal");
  return {-opt->value, Vec(opt->primal.begin(), opt->primal.begin() + static_cast<long>(n))};
}

Provenance constraint_prov(const CandidatePoint& c) {
  return {c.problem().truncated(), c.g().approximated};
}

// True when the closed conic hull of G(x) is known exactly.
bool closure_exact(const CandidatePoint& c) {
  return std::all_of(c.g().per_index.begin(), c.g().per_index.end(),
                     [](const Subdifferential& s) { return !s.approximated || s.exact_cone; });
}

Provenance closure_prov(const CandidatePoint& c) {
  return {c.problem().truncated(), !closure_exact(c)};
}

Provenance psi_prov(const CandidatePoint& c) {
  const MosipProblem& p = c.problem();
  Provenance out;
  out.truncated = !p.psi_override && p.truncated();
  out.approximated = c.psi_subdiff() && c.psi_subdiff()->approximated;
  return out;
}

Rational positive_lower_bound(const ExtReal& v) {
  // A rational in (0, v] for finite v > 0.
  if (v.is_rational()) return v.rational();
  double d = v.to_double();
  Rational guess(d * (1 - 1e-9));
  while (!(ExtReal(guess) <= v)) guess /= 2;
  return guess;
}

Rational eps_gap(const CandidatePoint& c) {
  // Half of the smallest distance from an inactive g_t(x) to 0.
  const MosipProblem& p = c.problem();
  std::optional<Rational> best;
  for (std::size_t t = 0; t < p.constraints.size(); ++t) {
    ExtReal v = eval(p.constraints.at(t), c.x());
    if (v == ExtReal(0)) continue;
    Rational gap = positive_lower_bound(-v) / 2;
    if (!best || gap < *best) best = gap;
  }
  return best.value_or(Rational(1));
}

// Subgradient vertices of the eps-active constraints; nullopt when some
// subdifferential is outside the exact machinery.
std::optional<Matrix> eps_subgradients(const CandidatePoint& c, const Rational& eps,
                                       std::string* why) {
  Matrix out;
  for (auto t : c.active_eps(eps)) {
    try {
      Subdifferential s = subdiff(c.problem().constraints.at(t), c.x());
      for (auto& v : s.base.vertices) out.push_back(std::move(v));
    } catch (const std::exception& e) {
      *why = e.what();
      return std::nullopt;
    }
  }
  return out;
}

// psi'(x; d), exact, for the built-in fallback when the subdifferential of
// psi is empty.
ExtReal psi_dir_derivative(const CandidatePoint& c, const Vec& d) {
  const MosipProblem& p = c.problem();
  if (p.psi_override) return dir_derivative(*p.psi_override, c.x(), d);
  ExtReal top = psi(p, c.x()).value;
  ExtReal best = ExtReal::neg_inf();
  for (const auto& g : p.constraints.members()) {
    ExtReal dd = dir_derivative(g, c.x(), d);
    if (eval(g, c.x()) == top) {
      best = std::max(best, dd);
    } else if (dd.is_pos_inf()) {
      best = dd;  // d leaves the domain of a non-attaining member
    }
  }
  return best;
}

HCone psi_sublevel_cone(const Subdifferential& s) {
  HCone k{s.base.dim, s.base.vertices};
  for (const auto& r : s.recession.generators) k.normals.push_back(r);
  return k;
}

QualReport report(QualId q, Status st, Provenance prov, std::string notes) {
  QualReport r;
  r.qual = q;
  r.status = st;
  r.provenance = prov;
  r.notes = std::move(notes);
  return r;
}

QualReport undecidable(QualId q, Provenance prov, std::string why) {
  return report(q, Status::kUndecidable, prov, std::move(why));
}

QualWitness direction(Vec d) {
  QualWitness w;
  w.kind = Kind::kDirection;
  w.vector = std::move(d);
  return w;
}

// Convex weights over `points` summing to the zero vector.
std::optional<Vec> zero_combination(const Matrix& points, std::size_t n) {
  Membership m = membership(zeros(n), {{n, points}, FGCone::zero(n)});
  if (!m.member) return std::nullopt;
  return m.base_coeffs;
}

bool is_zero_combination(const Matrix& points, const Vec& coeffs, std::size_t n) {
  if (coeffs.size() != points.size() || points.empty()) return false;
  Vec sum = zeros(n);
  Rational total = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (coeffs[i] < 0) return false;
    axpy(sum, coeffs[i], points[i]);
    total += coeffs[i];
  }
  return total == 1 && is_zero(sum);
}

// --- individual checkers ---------------------------------------------------

std::pair<QualReport, QualReport> check_slater(const CandidatePoint& c, const QualOptions& opts) {
  const MosipProblem& p = c.problem();
  const std::size_t n = p.dim;
  Provenance prov{p.truncated(), p.approximated()};
  QualReport scq = report(QualId::kSCQ, Status::kUndecidable, prov, "");
  QualReport sscq = scq;
  sscq.qual = QualId::kSSCQ;

  if (p.constraints.size() == 0) {
    scq.status = sscq.status = Status::kHolds;
    scq.witness.kind = sscq.witness.kind = Kind::kPoint;
    scq.witness.vector = sscq.witness.vector = c.x();
    sscq.witness.scalar = 1;
    scq.notes = sscq.notes = "no constraints";
    return {scq, sscq};
  }

  bool polyhedral = std::all_of(p.constraints.members().begin(), p.constraints.members().end(),
                                [](const ConvexFunc& g) { return g.polyhedral(); });
  if (polyhedral) {
    // max s  s.t. a'x + s <= -b (strict rows), a'x <= b (domain rows), s <= 1.
    SlaterRows rows = slater_rows(p);
    lp::LinearProgram prog(n + 1);
    prog.objective = unit(n + 1, n);
    prog.set_bounds(n, std::nullopt, Rational(1));
    for (std::size_t r = 0; r < rows.a.size(); ++r) {
      Vec row = rows.a[r];
      row.push_back(rows.strict[r] ? 1 : 0);
      prog.add(std::move(row), lp::Relation::kLessEqual, rows.strict[r] ? -rows.b[r] : rows.b[r]);
    }
    auto res = lp::solve(prog);
    const auto* opt = lp::as_optimal(res);
    if (!opt) throw InternalError("Slater LP is not optimal");
    if (opt->value > 0) {
      Vec x0(opt->primal.begin(), opt->primal.begin() + static_cast<long>(n));
      scq.status = sscq.status = Status::kHolds;
      scq.witness.kind = sscq.witness.kind = Kind::kPoint;
      scq.witness.vector = sscq.witness.vector = x0;
      sscq.witness.scalar = opt->value;
      scq.notes = sscq.notes = "Slater point from the slack-maximizing LP";
    } else {
      scq.status = sscq.status = Status::kFails;
      scq.witness.kind = sscq.witness.kind = Kind::kCombination;
      scq.witness.coeffs = sscq.witness.coeffs = opt->dual.rows;
      scq.notes = sscq.notes =
          "a nonnegative row combination cancels x with a nonnegative constant; failure on the "
          "truncated family carries over to the whole family";
      // Sound for any superset of constraints, and inner polygons only
      // lower the constraint functions.
      scq.provenance = sscq.provenance = Provenance{};
    }
    return {scq, sscq};
  }

  if (n > 3) {
    scq.notes = sscq.notes = "grid search for a Slater point is limited to n <= 3";
    return {scq, sscq};
  }
  // Rational grid search for the point with the largest uniform slack.
  std::vector<Rational> axis;
  for (Rational v = -opts.search_box; v <= opts.search_box; v += opts.search_step) axis.push_back(v);
  std::optional<Vec> best_x;
  ExtReal best = ExtReal::pos_inf();
  std::vector<std::size_t> idx(n, 0);
  while (true) {
    Vec x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = axis[idx[i]];
    ExtReal m = ExtReal::neg_inf();
    for (const auto& g : p.constraints.members()) {
      m = std::max(m, eval(g, x));
      if (m.is_pos_inf() || m >= best) break;
    }
    if (m < best) {
      best = m;
      best_x = x;
    }
    std::size_t i = 0;
    while (i < n && ++idx[i] == axis.size()) idx[i++] = 0;
    if (i == n) break;
  }
  if (best_x && best < ExtReal(0)) {
    scq.status = sscq.status = Status::kHolds;
    scq.witness.kind = sscq.witness.kind = Kind::kPoint;
    scq.witness.vector = sscq.witness.vector = *best_x;
    sscq.witness.scalar = positive_lower_bound(-best);
    scq.notes = sscq.notes = "Slater point found by rational grid search";
  } else {
    scq.notes = sscq.notes = "no Slater point on the search grid";
  }
  return {scq, sscq};
}

QualReport check_mfcq(const CandidatePoint& c) {
  const GSets& g = c.g();
  Provenance prov = constraint_prov(c);
  if (g.is_empty) return report(QualId::kMFCQ, Status::kFails, prov, "G(x) is empty");
  StrictDirection sd = strictly_negative_polar(g.G, c.problem().dim);
  if (sd.direction) {
    QualReport r = report(QualId::kMFCQ, Status::kHolds, prov, "direction in the strict polar of G");
    r.witness = direction(*sd.direction);
    return r;
  }
  QualReport r = report(QualId::kMFCQ, Status::kFails, prov, "0 is a convex combination of G");
  r.witness.kind = Kind::kCombination;
  r.witness.coeffs = zero_combination(g.G, c.problem().dim).value();
  return r;
}

QualReport check_pmfcq(const CandidatePoint& c, const QualOptions& opts) {
  const MosipProblem& p = c.problem();
  const std::size_t n = p.dim;
  const GSets& g = c.g();
  Provenance prov = constraint_prov(c);
  QualReport r = report(QualId::kPMFCQ, Status::kUndecidable, prov, "");

  if (!g.is_empty && !strictly_negative_polar(g.G, n).direction) {
    // G(x) lies in every eps-union, so the sup stays >= 0 for every x*.
    r.status = Status::kFails;
    r.provenance.truncated = false;
    r.witness.kind = Kind::kCombination;
    r.witness.coeffs = zero_combination(g.G, n).value();
    r.notes = "0 is a convex combination of G, which every eps-active union contains";
    return r;
  }

  std::vector<Rational> grid = opts.eps_grid;
  if (!p.truncated()) grid.push_back(eps_gap(c));  // T_eps(x) = T(x) from here on
  for (const auto& eps : grid) {
    std::string why;
    auto u = eps_subgradients(c, eps, &why);
    if (!u) {
      r.notes = "subgradients unavailable: " + why;
      return r;
    }
    if (u->empty()) {
      r.eps_values.push_back({eps, ExtReal::neg_inf()});
      if (r.status != Status::kHolds) {
        r.status = Status::kHolds;
        r.witness = direction(zeros(n));
        r.witness.scalar = eps;
        r.notes = "no subgradients over the eps-active indices, so the sup is -inf";
      }
      continue;
    }
    auto [value, xs] = min_max_inner(*u, {}, n);
    r.eps_values.push_back({eps, ExtReal(value)});
    if (value < 0 && r.status != Status::kHolds) {
      r.status = Status::kHolds;
      r.witness = direction(xs);
      r.witness.scalar = eps;
      r.notes = "x* strictly separates the eps-active subgradients";
    }
  }
  if (r.status == Status::kHolds) return r;
  if (!p.truncated()) {
    r.status = Status::kFails;
    r.notes = "sup over T(x) subgradients is nonnegative for every x*";
  } else {
    r.notes = "no eps on the grid gives a negative value; the infimum over eps is not exhausted";
  }
  return r;
}

QualReport check_lfmcq(const CandidatePoint& c) {
  Provenance prov = constraint_prov(c);
  if (!c.tn()) return undecidable(QualId::kLFMCQ, prov, "feasible_set description required");
  const FGCone& n = c.tn()->N;
  const FGCone& gs = c.g().G_star;
  Containment a = contains(n, gs);
  if (!a.holds) {
    QualReport r = report(QualId::kLFMCQ, Status::kFails, prov, "normal cone element outside G*");
    r.witness = direction(*a.witness);
    return r;
  }
  Containment b = contains(gs, n);
  if (!b.holds) {
    QualReport r = report(QualId::kLFMCQ, Status::kFails, prov, "G* element outside the normal cone");
    r.witness = direction(*b.witness);
    return r;
  }
  return report(QualId::kLFMCQ, Status::kHolds, prov, "N(S, x) = G*(x)");
}

QualReport check_cocq(const CandidatePoint& c) {
  const std::size_t n = c.problem().dim;
  Provenance prov = psi_prov(c);
  const auto& s = c.psi_subdiff();
  if (!s) return undecidable(QualId::kCOCQ, prov, "subdifferential of psi: " + c.psi_subdiff_note());
  if (!s->empty()) {
    auto [value, d] = min_max_inner(s->base.vertices, s->recession.generators, n);
    if (value < 0) {
      QualReport r = report(QualId::kCOCQ, Status::kHolds, prov, "psi'(x; d) = max over subgradients < 0");
      r.witness = direction(d);
      return r;
    }
    Membership m = membership(zeros(n), {s->base, s->recession});
    if (!m.member) throw InternalError("COCQ: no descent direction but 0 not a subgradient");
    QualReport r = report(QualId::kCOCQ, Status::kFails, prov, "0 is a subgradient of psi");
    r.witness.kind = Kind::kCombination;
    r.witness.coeffs = m.base_coeffs;
    for (const auto& v : m.recession_coeffs) r.witness.coeffs.push_back(v);
    return r;
  }
  if (n != 1) {
    return undecidable(QualId::kCOCQ, prov,
                       "empty subdifferential of psi; closed-form fallback covers n = 1 only");
  }
  for (long sgn : {1, -1}) {
    Vec d = {Rational(sgn)};
    if (psi_dir_derivative(c, d) < ExtReal(0)) {
      QualReport r = report(QualId::kCOCQ, Status::kHolds, prov,
                            "closed-form directional derivative (empty subdifferential of psi)");
      r.witness = direction(d);
      return r;
    }
  }
  return report(QualId::kCOCQ, Status::kFails, prov,
                "closed-form directional derivative is nonnegative in both directions");
}

QualReport check_ktcq(const CandidatePoint& c) {
  const std::size_t n = c.problem().dim;
  Provenance prov = psi_prov(c);
  const auto& s = c.psi_subdiff();
  if (!s) return undecidable(QualId::kKTCQ, prov, "subdifferential of psi: " + c.psi_subdiff_note());
  if (!c.tn()) return undecidable(QualId::kKTCQ, prov, "feasible_set description required");
  const HCone& cs = c.tn()->C;
  if (!s->empty()) {
    Containment k = contains(psi_sublevel_cone(*s), cs);
    if (k.holds) return report(QualId::kKTCQ, Status::kHolds, prov, "{psi' <= 0} is inside C(S, x)");
    QualReport r = report(QualId::kKTCQ, Status::kFails, prov, "direction with psi' <= 0 outside C(S, x)");
    r.witness = direction(*k.witness);
    return r;
  }
  if (n != 1) {
    return undecidable(QualId::kKTCQ, prov,
                       "empty subdifferential of psi; closed-form fallback covers n = 1 only");
  }
  for (long sgn : {1, -1}) {
    Vec d = {Rational(sgn)};
    if (psi_dir_derivative(c, d) <= ExtReal(0) && !cs.contains(d)) {
      QualReport r = report(QualId::kKTCQ, Status::kFails, prov,
                            "closed-form directional derivative: descent direction leaves S");
      r.witness = direction(d);
      return r;
    }
  }
  return report(QualId::kKTCQ, Status::kHolds, prov,
                "closed-form directional derivative (empty subdifferential of psi)");
}

QualReport check_plvcq(const CandidatePoint& c) {
  Provenance prov = psi_prov(c);
  prov.truncated = prov.truncated || c.problem().truncated();
  prov.approximated = prov.approximated || c.g().approximated;
  const auto& s = c.psi_subdiff();
  if (!s) return undecidable(QualId::kPLVCQ, prov, "subdifferential of psi: " + c.psi_subdiff_note());
  if (s->empty()) return report(QualId::kPLVCQ, Status::kHolds, prov, "subdifferential of psi is empty");
  Matrix all = s->base.vertices;
  for (const auto& r : s->recession.generators) all.push_back(r);
  for (const auto& v : all) {
    if (!in_cone(v, c.g().G_star)) {
      QualReport r = report(QualId::kPLVCQ, Status::kFails, prov, "subdifferential of psi leaves G*");
      r.witness.kind = Kind::kDirection;
      r.witness.vector = v;
      return r;
    }
  }
  return report(QualId::kPLVCQ, Status::kHolds, prov, "every vertex and ray of the subdifferential of psi lies in G*");
}

QualReport check_cccq(const CandidatePoint& c) {
  Provenance prov = constraint_prov(c);
  if (c.g().approximated) {
    return undecidable(QualId::kCCCQ, prov,
                       "G* comes from polygonal stand-ins; closedness of the exact cone is beyond a "
                       "finite representation");
  }
  return report(QualId::kCCCQ, Status::kHolds, prov, "G* is finitely generated, hence closed");
}

HCone g_polar(const CandidatePoint& c) { return {c.problem().dim, c.g().closure.generators}; }

QualReport check_acq(const CandidatePoint& c) {
  Provenance prov = closure_prov(c);
  if (c.g().is_empty) return report(QualId::kACQ, Status::kFails, prov, "G(x) is empty");
  if (!c.tn()) return undecidable(QualId::kACQ, prov, "feasible_set description required");
  Containment k = contains(g_polar(c), c.tn()->C);
  if (k.holds) return report(QualId::kACQ, Status::kHolds, prov, "G^0 is inside C(S, x)");
  QualReport r = report(QualId::kACQ, Status::kFails, prov, "element of G^0 outside C(S, x)");
  r.witness = direction(*k.witness);
  return r;
}

QualReport check_wadq(const CandidatePoint& c) {
  const std::size_t n = c.problem().dim;
  Provenance prov = closure_prov(c);
  if (c.g().is_empty) return report(QualId::kWADQ, Status::kFails, prov, "G(x) is empty");
  if (!c.tn()) return undecidable(QualId::kWADQ, prov, "feasible_set description required");
  const Matrix& f = c.f().F;
  for (const auto& normal : c.tn()->C.normals) {
    // max s  s.t. xi'd + s <= 0, h'd <= 0, -normal'd + s <= 0, |d| <= 1, s <= 1.
    lp::LinearProgram prog(n + 1);
    prog.objective = unit(n + 1, n);
    for (std::size_t j = 0; j < n; ++j) prog.set_bounds(j, Rational(-1), Rational(1));
    prog.set_bounds(n, std::nullopt, Rational(1));
    for (const auto& xi : f) {
      Vec row = xi;
      row.push_back(1);
      prog.add(std::move(row), lp::Relation::kLessEqual, 0);
    }
    for (const auto& h : c.g().closure.generators) {
      Vec row = h;
      row.push_back(0);
      prog.add(std::move(row), lp::Relation::kLessEqual, 0);
    }
    Vec row = scaled(normal, -1);
    row.push_back(1);
    prog.add(std::move(row), lp::Relation::kLessEqual, 0);
    auto res = lp::solve(prog);
    const auto* opt = lp::as_optimal(res);
    if (!opt) throw InternalError("WADQ LP is not optimal");
    if (opt->value > 0) {
      QualReport r = report(QualId::kWADQ, Status::kFails, prov, "element of F^- and G^0 outside C(S, x)");
      r.witness = direction(Vec(opt->primal.begin(), opt->primal.begin() + static_cast<long>(n)));
      return r;
    }
  }
  return report(QualId::kWADQ, Status::kHolds, prov, "F^- and G^0 meet inside C(S, x)");
}

std::optional<HCone> sublevel_tangents(const CandidatePoint& c, std::string* why) {
  const MosipProblem& p = c.problem();
  HCone all{p.dim, {}};
  try {
    for (std::size_t i = 0; i < p.objectives.size(); ++i) {
      HCone t = tangent_cone(sublevel_Q(p, c.x(), i), c.x());
      for (auto& nr : t.normals) all.normals.push_back(std::move(nr));
    }
  } catch (const std::exception& e) {
    *why = e.what();
    return std::nullopt;
  }
  return all;
}

HCone f0_g0(const CandidatePoint& c) {
  HCone a{c.problem().dim, c.f().F};
  for (const auto& h : c.g().closure.generators) a.normals.push_back(h);
  return a;
}

QualReport check_eadq(const CandidatePoint& c) {
  Provenance prov = closure_prov(c);
  if (c.g().is_empty) return report(QualId::kEADQ, Status::kFails, prov, "G(x) is empty");
  std::string why;
  auto q = sublevel_tangents(c, &why);
  if (!q) return undecidable(QualId::kEADQ, prov, why);
  Containment k = contains(f0_g0(c), *q);
  if (k.holds) return report(QualId::kEADQ, Status::kHolds, prov, "F^0 and G^0 meet inside every C(Q^i, x)");
  QualReport r = report(QualId::kEADQ, Status::kFails, prov, "element of F^0 and G^0 outside some C(Q^i, x)");
  r.witness = direction(*k.witness);
  return r;
}

// MOQ fails exactly when some d != 0 has max over each subdifferential of
// f_i equal to 0 (it then lies in F^0 and in no strict polar).
bool moq_counterexample(const CandidatePoint& c, const Vec& d) {
  if (is_zero(d)) return false;
  for (const auto& verts : c.f().per_objective) {
    Rational best = dot(verts.front(), d);
    for (const auto& v : verts) best = std::max(best, dot(v, d));
    if (best != 0) return false;
  }
  return true;
}

QualReport check_moq(const CandidatePoint& c) {
  const std::size_t n = c.problem().dim;
  const auto& per = c.f().per_objective;
  if (span_rank(c.f().F) < n) {
    QualReport r = report(QualId::kMOQ, Status::kFails, {}, "F(x) does not span R^n");
    r.witness = direction(primitive(null_space(c.f().F, n).front()));
    return r;
  }
  bool smooth = std::all_of(per.begin(), per.end(), [](const Matrix& v) { return v.size() == 1; });
  if (smooth) return report(QualId::kMOQ, Status::kHolds, {}, "span F(x) = R^n");
  // Nonsmooth objectives: pick one vertex per objective to be tight and look
  // for a nonzero direction in F^0 tight on all of them.
  std::vector<std::size_t> pick(per.size(), 0);
  while (true) {
    HCone h{n, c.f().F};
    for (std::size_t i = 0; i < per.size(); ++i) h.normals.push_back(scaled(per[i][pick[i]], -1));
    Triviality tr = cone_is_trivial(h);
    if (!tr.trivial) {
      QualReport r = report(QualId::kMOQ, Status::kFails, {},
                            "direction in F^0 outside every strict polar of a subdifferential");
      r.witness = direction(primitive(*tr.witness));
      return r;
    }
    std::size_t i = 0;
    while (i < per.size() && ++pick[i] == per[i].size()) pick[i++] = 0;
    if (i == per.size()) break;
  }
  return report(QualId::kMOQ, Status::kHolds, {},
                "F(x) spans R^n and no direction in F^0 is tight on every subdifferential");
}

}  // namespace

std::string qual_name(QualId q) {
  static const char* const kNames[] = {"SCQ",  "SSCQ",  "MFCQ", "PMFCQ", "LFMCQ", "COCQ", "KTCQ",
                                       "PLVCQ", "CCCQ", "ACQ",  "WADQ",  "EADQ",  "MOQ"};
  return kNames[static_cast<int>(q)];
}

QualId parse_qual(const std::string& name) {
  for (auto q : kAllQuals) {
    if (qual_name(q) == name) return q;
  }
  throw InputError("unknown qualification '" + name + "'");
}

std::string status_name(Status s) {
  switch (s) {
    case Status::kHolds:
      return "Holds";
    case Status::kFails:
      return "Fails";
    case Status::kUndecidable:
      return "Undecidable";
  }
  return "?";
}

std::string Provenance::to_string() const {
  if (exact()) return "exact";
  if (truncated && approximated) return "truncated+approximated";
  return truncated ? "truncated" : "approximated";
}

QualOptions::QualOptions() {
  Rational eps = 1;
  for (int k = 0; k <= 10; ++k, eps /= 2) eps_grid.push_back(eps);
}

QualReport check(QualId q, const CandidatePoint& c, const QualOptions& opts) {
  switch (q) {
    case QualId::kSCQ:
      return check_slater(c, opts).first;
    case QualId::kSSCQ:
      return check_slater(c, opts).second;
    case QualId::kMFCQ:
      return check_mfcq(c);
    case QualId::kPMFCQ:
      return check_pmfcq(c, opts);
    case QualId::kLFMCQ:
      return check_lfmcq(c);
    case QualId::kCOCQ:
      return check_cocq(c);
    case QualId::kKTCQ:
      return check_ktcq(c);
    case QualId::kPLVCQ:
      return check_plvcq(c);
    case QualId::kCCCQ:
      return check_cccq(c);
    case QualId::kACQ:
      return check_acq(c);
    case QualId::kWADQ:
      return check_wadq(c);
    case QualId::kEADQ:
      return check_eadq(c);
    case QualId::kMOQ:
      return check_moq(c);
  }
  throw InputError("unknown qualification");
}

std::vector<QualReport> check_all(const CandidatePoint& c, const QualOptions& opts) {
  std::vector<QualReport> out;
  auto [scq, sscq] = check_slater(c, opts);
  out.push_back(std::move(scq));
  out.push_back(std::move(sscq));
  for (std::size_t k = 2; k < kAllQuals.size(); ++k) out.push_back(check(kAllQuals[k], c, opts));
  return out;
}

bool verify_witness(const CandidatePoint& c, const QualReport& r, const QualOptions& opts) {
  const MosipProblem& p = c.problem();
  const std::size_t n = p.dim;
  const QualWitness& w = r.witness;
  if (w.kind == Kind::kDirection && w.vector.size() != n) return false;
  switch (r.qual) {
    case QualId::kSCQ:
    case QualId::kSSCQ:
      if (r.status == Status::kHolds && w.kind == Kind::kPoint) {
        if (w.vector.size() != n) return false;
        ExtReal bound = 0;
        if (r.qual == QualId::kSSCQ) {
          if (!w.scalar || *w.scalar <= 0) return false;
          bound = ExtReal(-*w.scalar);
        }
        for (const auto& g : p.constraints.members()) {
          ExtReal v = eval(g, w.vector);
          if (r.qual == QualId::kSCQ ? !(v < bound) : !(v <= bound)) return false;
        }
        return true;
      }
      if (r.status == Status::kFails && w.kind == Kind::kCombination) {
        SlaterRows rows = slater_rows(p);
        if (w.coeffs.size() != rows.a.size()) return false;
        Vec sum = zeros(n);
        Rational rhs = 0, strict_weight = 0;
        for (std::size_t k = 0; k < rows.a.size(); ++k) {
          if (w.coeffs[k] < 0) return false;
          axpy(sum, w.coeffs[k], rows.a[k]);
          rhs += w.coeffs[k] * (rows.strict[k] ? -rows.b[k] : rows.b[k]);
          if (rows.strict[k]) strict_weight += w.coeffs[k];
        }
        return is_zero(sum) && strict_weight > 0 && rhs <= 0;
      }
      break;
    case QualId::kMFCQ:
    case QualId::kPMFCQ:
      if (r.status == Status::kFails) {
        if (w.kind == Kind::kNone) return r.qual == QualId::kMFCQ && c.g().is_empty;
        return !c.g().is_empty && is_zero_combination(c.g().G, w.coeffs, n);
      }
      if (r.status == Status::kHolds && w.kind == Kind::kDirection) {
        Matrix pts = c.g().G;
        if (r.qual == QualId::kPMFCQ) {
          if (!w.scalar || *w.scalar <= 0) return false;
          std::string why;
          auto u = eps_subgradients(c, *w.scalar, &why);
          if (!u) return false;
          pts = *u;
        } else if (pts.empty()) {
          return false;
        }
        return std::all_of(pts.begin(), pts.end(), [&](const Vec& xi) { return dot(xi, w.vector) < 0; });
      }
      break;
    case QualId::kCOCQ:
      if (r.status == Status::kHolds && w.kind == Kind::kDirection) {
        const auto& s = c.psi_subdiff();
        if (s && !s->empty()) {
          for (const auto& v : s->base.vertices) {
            if (dot(v, w.vector) >= 0) return false;
          }
          for (const auto& g : s->recession.generators) {
            if (dot(g, w.vector) > 0) return false;
          }
          return true;
        }
        return psi_dir_derivative(c, w.vector) < ExtReal(0);
      }
      if (r.status == Status::kFails && w.kind == Kind::kCombination) {
        const auto& s = c.psi_subdiff();
        if (!s) return false;
        const auto& base = s->base.vertices;
        const auto& rec = s->recession.generators;
        if (w.coeffs.size() != base.size() + rec.size()) return false;
        Vec sum = zeros(n);
        Rational total = 0;
        for (std::size_t k = 0; k < w.coeffs.size(); ++k) {
          if (w.coeffs[k] < 0) return false;
          axpy(sum, w.coeffs[k], k < base.size() ? base[k] : rec[k - base.size()]);
          if (k < base.size()) total += w.coeffs[k];
        }
        return total == 1 && is_zero(sum);
      }
      break;
    case QualId::kKTCQ:
      if (r.status == Status::kFails && w.kind == Kind::kDirection && c.tn()) {
        const auto& s = c.psi_subdiff();
        bool descent = s && !s->empty() ? psi_sublevel_cone(*s).contains(w.vector)
                                        : psi_dir_derivative(c, w.vector) <= ExtReal(0);
        return descent && !c.tn()->C.contains(w.vector);
      }
      break;
    case QualId::kPLVCQ:
      if (r.status == Status::kFails && w.kind == Kind::kDirection) {
        const auto& s = c.psi_subdiff();
        if (!s) return false;
        bool listed = std::find(s->base.vertices.begin(), s->base.vertices.end(), w.vector) !=
                          s->base.vertices.end() ||
                      std::find(s->recession.generators.begin(), s->recession.generators.end(),
                                w.vector) != s->recession.generators.end();
        return listed && !in_cone(w.vector, c.g().G_star);
      }
      break;
    case QualId::kLFMCQ:
      if (r.status == Status::kFails && w.kind == Kind::kDirection && c.tn()) {
        bool in_n = in_cone(w.vector, c.tn()->N), in_g = in_cone(w.vector, c.g().G_star);
        return in_n != in_g;
      }
      break;
    case QualId::kACQ:
    case QualId::kWADQ:
    case QualId::kEADQ:
      if (r.status == Status::kFails) {
        if (w.kind == Kind::kNone) return c.g().is_empty;
        if (w.kind != Kind::kDirection || !c.tn()) return false;
        if (!g_polar(c).contains(w.vector)) return false;
        if (r.qual == QualId::kACQ) return !c.tn()->C.contains(w.vector);
        if (r.qual == QualId::kWADQ) {
          for (const auto& xi : c.f().F) {
            if (dot(xi, w.vector) >= 0) return false;
          }
          return !c.tn()->C.contains(w.vector);
        }
        if (!HCone{n, c.f().F}.contains(w.vector)) return false;
        std::string why;
        auto q = sublevel_tangents(c, &why);
        return q && !q->contains(w.vector);
      }
      break;
    case QualId::kMOQ:
      if (r.status == Status::kFails && w.kind == Kind::kDirection) {
        return moq_counterexample(c, w.vector);
      }
      break;
    case QualId::kCCCQ:
      break;
  }
  // Verdicts without a checkable witness: recompute.
  return check(r.qual, c, opts).status == r.status;
}

std::string Arrow::label() const {
  auto join = [](const std::vector<QualId>& qs) {
    std::string s;
    for (std::size_t k = 0; k < qs.size(); ++k) s += (k ? " & " : "") + qual_name(qs[k]);
    return qs.size() > 1 ? "(" + s + ")" : s;
  };
  std::string out = join(from) + " => " + join(to);
  if (!side.empty()) {
    out += " [";
    for (std::size_t k = 0; k < side.size(); ++k) out += (k ? "," : "") + std::to_string(side[k]);
    out += "]";
  }
  return out;
}

const std::vector<Arrow>& diagram_arrows() {
  using Q = QualId;
  static const std::vector<Arrow> kArrows = {
      {{Q::kSSCQ}, {Q::kSCQ}, {}},
      {{Q::kSCQ}, {Q::kSSCQ}, {1}},
      {{Q::kSCQ}, {Q::kMFCQ}, {2}},
      {{Q::kSCQ}, {Q::kMFCQ, Q::kPLVCQ}, {1, 2}},
      {{Q::kPMFCQ}, {Q::kMFCQ}, {2}},
      {{Q::kCOCQ}, {Q::kKTCQ}, {1}},
      {{Q::kKTCQ, Q::kPLVCQ}, {Q::kKTCQ}, {}},
      {{Q::kKTCQ, Q::kPLVCQ}, {Q::kACQ}, {2}},
      {{Q::kMFCQ, Q::kPLVCQ}, {Q::kCOCQ}, {1}},
      {{Q::kMFCQ, Q::kPLVCQ}, {Q::kMFCQ}, {}},
      {{Q::kMFCQ, Q::kPLVCQ}, {Q::kACQ}, {}},
      {{Q::kMFCQ}, {Q::kLFMCQ}, {1}},
      {{Q::kLFMCQ}, {Q::kACQ, Q::kCCCQ}, {2}},
      {{Q::kACQ, Q::kCCCQ}, {Q::kLFMCQ}, {}},
      {{Q::kACQ, Q::kCCCQ}, {Q::kACQ}, {}},
      {{Q::kACQ}, {Q::kEADQ}, {3}},
      {{Q::kACQ}, {Q::kWADQ}, {}},
      {{Q::kEADQ}, {Q::kWADQ}, {}},
  };
  return kArrows;
}

DiagramResult diagram_validate(const CandidatePoint& c, const std::vector<QualReport>& reports) {
  std::map<QualId, Status> st;
  for (const auto& r : reports) st[r.qual] = r.status;
  for (auto q : kAllQuals) {
    if (!st.count(q)) throw InputError("diagram_validate: missing report for " + qual_name(q));
  }
  const bool side1 = c.problem().is_continuous();
  const bool side2 = !c.g().is_empty;
  const bool side3 = c.problem().num_objectives() == 1;

  DiagramResult out;
  for (const auto& a : diagram_arrows()) {
    ArrowCheck chk{a, ArrowCheck::Outcome::kSatisfied};
    bool met = std::all_of(a.side.begin(), a.side.end(), [&](int s) {
      return (s == 1 && side1) || (s == 2 && side2) || (s == 3 && side3);
    });
    auto any = [&](const std::vector<QualId>& qs, Status s) {
      return std::any_of(qs.begin(), qs.end(), [&](QualId q) { return st[q] == s; });
    };
    if (!met) {
      chk.outcome = ArrowCheck::Outcome::kSideConditionUnmet;
    } else if (any(a.from, Status::kFails)) {
      chk.outcome = ArrowCheck::Outcome::kVacuous;
    } else if (any(a.from, Status::kUndecidable)) {
      chk.outcome = ArrowCheck::Outcome::kUndecidable;
    } else if (any(a.to, Status::kFails)) {
      chk.outcome = ArrowCheck::Outcome::kViolated;
      out.violations.push_back(a);
    } else if (any(a.to, Status::kUndecidable)) {
      chk.outcome = ArrowCheck::Outcome::kUndecidable;
    }
    out.checks.push_back(std::move(chk));
  }
  return out;
}

}  // namespace mosip
