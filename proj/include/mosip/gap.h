#pragma once

// The gap function
//
//   theta(x, xi, lambda) = sup_{y in S} sum_i lambda_i xi_i'(x - y)
//
// with xi_i in the subdifferential of f_i at x, and searches for its zeros,
// including the tilted problems with objectives f_i(x) - w'x.

#include <optional>
#include <string>
#include <vector>

#include "mosip/funcs.h"
#include "mosip/problem.h"

namespace mosip {

enum class GapMode { kWeak, kStrong };
std::string gap_mode_name(GapMode m);

struct GapWitness {
  Vec lambda;                   // in the simplex (all positive in strong mode)
  std::vector<Vec> xi;          // per-objective subgradient selections
  std::vector<Vec> xi_coeffs;   // convex weights over c.f().per_objective[i]
  ExtReal value;                // theta recomputed exactly
};

// sup_{y in S} c'(x - y) for an explicit c. -inf when S is empty.
ExtReal gap_sup(const HPolyhedron& s, const Vec& x, const Vec& c);

// Throws PreconditionError when S is not given or some xi_i is not a
// subgradient of f_i at x, InputError when lambda is not in the simplex.
ExtReal gap_eval(const MosipProblem& p, const Vec& x, const std::vector<Vec>& xi,
                 const Vec& lambda);

struct GapSearch {
  GapMode mode = GapMode::kWeak;
  std::optional<GapWitness> witness;
  Rational tau;      // strong mode: optimal min_i lambda_i
  std::string note;  // reason for a refusal
};

// Zeros via theta(x, xi, lambda) = 0 iff -sum lambda_i xi_i lies in the
// normal cone of S at x. Every witness is re-evaluated with gap_eval.
GapSearch gap_zero_search(const CandidatePoint& c, GapMode mode);

struct TiltCheck {
  Vec w;
  bool success = false;  // the tilted problem has a weak-mode gap zero
};

struct PerturbedGapReport {
  Rational nu;
  // Exact track: 0 interior to F* + N(S, x) (what the tilted gap zeros
  // characterize) next to 0 interior to F* + G* (perturbed KKT).
  bool gap_interior = false;
  Rational gap_radius;  // certified inradius of F* + N when interior
  bool kkt_interior = false;
  bool equivalent = false;
  // The characterization needs continuity, differentiable constraints and
  // MFCQ; otherwise the tracks are computed but carry no theorem.
  bool within_hypotheses = false;
  // Sampled track: rational points on the radius-nu sphere plus +/- nu e_i.
  std::vector<TiltCheck> per_w;
  bool all_success = false;
};

PerturbedGapReport perturbed_gap_check(const CandidatePoint& c, const Rational& nu,
                                       std::size_t sample_count);

// Exact rational points on the unit sphere in R^n (inverse stereographic
// projection of a Halton sequence), deterministic.
Matrix rational_sphere_points(std::size_t n, std::size_t count);

}  // namespace mosip
