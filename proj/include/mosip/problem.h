#pragma once

// The multiobjective semi-infinite program
//
//   minimize (f_1(x), ..., f_p(x))  subject to  g_t(x) <= 0, t in T,
//
// with T either a finite list or a built-in indexed family truncated to its
// first N members, and the sets derived from it at a candidate point.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mosip/cones.h"
#include "mosip/funcs.h"
#include "mosip/rational.h"

namespace mosip {

class ConstraintFamily {
 public:
  static ConstraintFamily finite(std::vector<ConvexFunc> funcs);
  // Built-in generator `name` ("example1", "example2", "example3") with
  // rational parameters, truncated to indices 0..truncation-1.
  static ConstraintFamily indexed(std::string name, std::map<std::string, Rational> params,
                                  std::size_t truncation);

  bool is_finite() const { return indexed_name_.empty(); }
  std::size_t size() const;  // number of (truncated) indices
  const ConvexFunc& at(std::size_t t) const { return funcs_.at(t); }
  const std::vector<ConvexFunc>& members() const { return funcs_; }

  const std::string& family_name() const { return indexed_name_; }
  const std::map<std::string, Rational>& params() const { return params_; }
  std::size_t truncation() const { return funcs_.size(); }

  // Copy with a different truncation (indexed families only).
  ConstraintFamily retruncated(std::size_t truncation) const;

 private:
  std::string indexed_name_;
  std::map<std::string, Rational> params_;
  std::vector<ConvexFunc> funcs_;
};

// Names of the built-in families.
std::vector<std::string> builtin_families();
// Member t of a built-in family; throws InputError for unknown names.
ConvexFunc builtin_member(const std::string& name, const std::map<std::string, Rational>& params,
                          std::size_t t, std::size_t truncation);

struct MosipProblem {
  std::size_t dim = 0;
  std::vector<ConvexFunc> objectives;
  ConstraintFamily constraints = ConstraintFamily::finite({});
  std::optional<HPolyhedron> feasible_set;
  std::optional<ConvexFunc> psi_override;
  bool continuous = false;                  // user assertion for (t, x) -> g_t(x)
  bool differentiable_constraints = false;  // user assertion near the candidate

  // Dimension checks, objective restrictions, and the sampled consistency
  // checks of psi_override and feasible_set. Throws InputError.
  void validate() const;

  bool truncated() const { return !constraints.is_finite(); }
  // Some constraint uses a polygonal stand-in.
  bool approximated() const;
  // Continuity flag, automatically true for finite real-valued families.
  bool is_continuous() const;
  // Every objective and constraint is polyhedral.
  bool polyhedral() const;
  std::size_t num_objectives() const { return objectives.size(); }
};

// The built-in example problems ("example1", "example2", "example3") with
// their closed-form feasible sets and psi where known. Indexed families use
// `truncation` members.
MosipProblem builtin_problem(const std::string& name, std::size_t truncation);

// Throws InfeasibleCandidateError naming the violated constraint index
// (-1 for a row of the feasible set).
void require_feasible(const MosipProblem& p, const Vec& x);

// T_eps(x) = {t : g_t(x) >= -eps} over the truncated index set.
std::vector<std::size_t> active_set(const MosipProblem& p, const Vec& x, const Rational& eps);

struct BoundValue {
  ExtReal value;
  bool truncated = false;  // maximum/minimum over a truncated family
};

// sup_t g_t(x) (psi_override when present) and inf_t g_t(x).
BoundValue psi(const MosipProblem& p, const Vec& x);
BoundValue iota(const MosipProblem& p, const Vec& x);

struct FSets {
  std::vector<Matrix> per_objective;  // vertices of each subdifferential
  Matrix F;                           // union, canonical order
  Polytope F_star;                    // conv(F), canonical
};

FSets f_sets(const MosipProblem& p, const Vec& x);

struct LabelledVertex {
  std::size_t index;  // constraint index t
  Vec v;
};

struct GSets {
  std::vector<std::size_t> active;             // T(x)
  std::vector<Subdifferential> per_index;      // aligned with `active`
  std::vector<LabelledVertex> labelled;        // all subgradient vertices
  Matrix G;                                    // distinct vertices
  bool is_empty = true;                        // G(x) is empty
  FGCone G_star;                               // cone(G), canonical
  bool approximated = false;
  FGCone closure;  // closed conic hull of the exact G(x)
};

GSets g_sets(const MosipProblem& p, const Vec& x);

// Q^i(x) = {y in S : f_l(y) <= f_l(x) for l != i}; requires polyhedral
// objectives and a feasible set. i is 0-based.
HPolyhedron sublevel_Q(const MosipProblem& p, const Vec& x, std::size_t i);

// Contingent cone of a polyhedron at x: active row normals.
HCone tangent_cone(const HPolyhedron& s, const Vec& x);

struct TangentNormal {
  HCone C;
  FGCone N;
};

TangentNormal tangent_normal(const MosipProblem& p, const Vec& x);

// A feasible candidate with its derived sets computed once.
class CandidatePoint {
 public:
  CandidatePoint(const MosipProblem& p, Vec x);

  const MosipProblem& problem() const { return *problem_; }
  const Vec& x() const { return x_; }
  const FSets& f() const { return f_; }
  const GSets& g() const { return g_; }
  std::vector<std::size_t> active_eps(const Rational& eps) const;
  const std::optional<TangentNormal>& tn() const { return tn_; }
  // Subdifferential of psi at x, or the reason it is unavailable.
  const std::optional<Subdifferential>& psi_subdiff() const { return psi_subdiff_; }
  const std::string& psi_subdiff_note() const { return psi_note_; }

 private:
  const MosipProblem* problem_;
  Vec x_;
  FSets f_;
  GSets g_;
  std::optional<TangentNormal> tn_;
  std::optional<Subdifferential> psi_subdiff_;
  std::string psi_note_;
};

}  // namespace mosip
