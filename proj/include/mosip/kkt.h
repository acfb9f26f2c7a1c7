#pragma once

// Weak, strong and perturbed KKT certificate search at a candidate point,
// and the efficiency claims those certificates (and qualification reports)
// license.

#include <optional>
#include <string>
#include <vector>

#include "mosip/cones.h"
#include "mosip/problem.h"
#include "mosip/quals.h"

namespace mosip {

struct ObjectiveTerm {
  Rational alpha;
  Vec xi;      // selected subgradient of f_i
  Vec coeffs;  // convex weights over c.f().per_objective[i]
};

struct ConstraintTerm {
  std::size_t t = 0;  // constraint index, active at the candidate
  Rational beta;      // > 0
  Vec zeta;           // selected subgradient of g_t
};

// sum_i alpha_i xi_i + sum_t beta_t zeta_t = target, sum alpha = 1.
struct KktCertificate {
  enum class Kind { kWeak, kStrong, kPerturbed };
  Kind kind = Kind::kWeak;
  Vec target;  // zero except for perturbed axis decompositions
  std::vector<ObjectiveTerm> objectives;
  std::vector<ConstraintTerm> constraints;
};

std::string kind_name(KktCertificate::Kind k);

// sum alpha xi + sum beta zeta - target.
Vec kkt_residual(const KktCertificate& k, std::size_t dim);

// Exact re-check against freshly computed subdifferentials: alpha in the
// simplex (all positive for kStrong), xi_i in the subdifferential of f_i,
// every t active with zeta_t in the subdifferential of g_t, zero residual.
bool verify_certificate(const CandidatePoint& c, const KktCertificate& k);

struct WeakKkt {
  std::optional<KktCertificate> certificate;
  // h with h'v <= bound on F* + G* and h'0 > bound, when no certificate.
  std::optional<Separator> separator;
  Provenance provenance;  // meaningful for a failure only
};

WeakKkt weak_kkt(const CandidatePoint& c);

struct StrongKkt {
  std::optional<KktCertificate> certificate;
  Rational tau;  // optimal min_i alpha_i (0 when the weak system fails)
  bool weak_holds = false;
  // Sufficient geometric test 0 in ri F* + G*: some g in G* with -g in
  // the relative interior of F*.
  bool ri_holds = false;
  std::optional<Vec> ri_point;
  Provenance provenance;
};

StrongKkt strong_kkt(const CandidatePoint& c);

struct EpsInclusion {
  Rational eps;
  bool inside = false;
  Rational radius;
};

struct PerturbedKkt {
  bool holds = false;
  Rational nu;             // certified ball radius when holds
  bool nu_exact = false;   // nu is the exact inradius about 0
  std::optional<Vec> escape;  // nonzero d with nonpositive support otherwise
  std::vector<KktCertificate> axis;  // decompositions of +/- nu e_i
  Provenance provenance;
  // Finite-eps version of the necessary inclusion for differentiable
  // constraints: F* + cone of the subgradients over T_eps. Report only.
  std::vector<EpsInclusion> eps_report;
};

PerturbedKkt perturbed_kkt(const CandidatePoint& c, const std::vector<Rational>& eps_grid = {});

// Exact re-check of a perturbed verdict: axis decompositions verify and the
// interior test reproduces a radius of at least nu.
bool verify_perturbed(const CandidatePoint& c, const PerturbedKkt& r);
bool verify_separator(const CandidatePoint& c, const Separator& s);

// --- claims ----------------------------------------------------------------

enum class Level { kWeakEfficient, kEfficient, kIsolatedEfficient };
std::string level_name(Level l);

struct EfficiencyClaim {
  enum class Direction { kSufficient, kNecessaryGiven, kCharacterization, kCounterexample };
  Level level = Level::kWeakEfficient;
  bool holds = true;  // false: the point is claimed NOT to have this level
  Direction direction = Direction::kSufficient;
  std::string rule;              // name of the result that licenses the claim
  std::vector<QualId> relied_on;  // qualification reports used
  std::string evidence;
};

std::string direction_name(EfficiencyClaim::Direction d);

// Everything assemble_claims may draw on. Gap and oracle findings enter as
// exactly re-verified facts.
struct ClaimInputs {
  std::optional<WeakKkt> weak;
  std::optional<StrongKkt> strong;
  std::optional<PerturbedKkt> perturbed;
  std::vector<QualReport> quals;
  bool gap_zero_weak = false;    // gap-zero witness with lambda >= 0
  bool gap_zero_strong = false;  // gap-zero witness with lambda > 0
  std::optional<Vec> strict_dominator;  // feasible, f < f(x) componentwise
  std::optional<Vec> dominator;         // feasible, f <= f(x), f != f(x)
  bool continuous = false;
  bool differentiable_constraints = false;
};

std::vector<EfficiencyClaim> assemble_claims(const ClaimInputs& in);

// No level is both claimed and refuted, and refutations respect
// isolated => efficient => weak efficient.
bool claims_consistent(const std::vector<EfficiencyClaim>& claims);

}  // namespace mosip
