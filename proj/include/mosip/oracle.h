#pragma once

// Brute-force classification of a candidate by a grid scan of S inside a
// box. Evaluation is floating point; any refutation is re-checked exactly
// before it is reported. nu_hat is evidence only.

#include <cstddef>
#include <optional>
#include <vector>

#include "mosip/problem.h"

namespace mosip {

struct Box {
  Vec lo;
  Vec hi;

  static Box cube(std::size_t n, const Rational& lo, const Rational& hi);
};

struct OracleGrid {
  Box box;
  std::size_t resolution = 0;  // points per axis
  std::size_t points = 0;
  std::size_t feasible = 0;
};

struct OracleReport {
  std::optional<Vec> weak_refuted;  // feasible, f < f(x) componentwise
  std::optional<Vec> eff_refuted;   // feasible, f <= f(x), f != f(x)
  // min over feasible grid points y != x of max_i (f_i(y) - f_i(x)) / |y - x|.
  std::optional<double> nu_hat;
  std::optional<Vec> nu_hat_at;
  OracleGrid grid;
};

// Feasibility is the closed-form feasible_set when given, otherwise the
// (truncated) constraint family. Throws InfeasibleCandidateError for an
// infeasible x and InputError for a box not containing x or resolution < 2.
// The OpenMP kernel; results are identical to the serial reference
// (chunks are merged in index order).
OracleReport classify_grid(const MosipProblem& p, const Vec& x, const Box& box,
                           std::size_t resolution);
OracleReport classify_grid_serial(const MosipProblem& p, const Vec& x, const Box& box,
                                  std::size_t resolution);

}  // namespace mosip
