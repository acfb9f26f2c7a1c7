#pragma once

// Exact rational linear programming.
//
// Problems are stated as
//
//   maximize    c'x
//   subject to  a_r'x  (<= | = | >=)  b_r      for each constraint r
//               lower_j <= x_j <= upper_j      (either bound optional)
//
// and solved with a two-phase dense tableau simplex using Bland's rule.
// Every outcome carries a certificate that `verify` re-checks by exact
// substitution:
//
//   Optimal     primal point, dual multipliers with equal objective value.
//   Unbounded   feasible point plus an improving recession ray.
//   Infeasible  Farkas multipliers: a nonnegative combination of the
//               constraints (written in <= orientation) reading 0 <= -1.
//
// Multiplier sign convention: inequality rows are first rewritten in <=
// orientation (>= rows are negated); their multipliers are then >= 0.
// Equality multipliers are free. Bound multipliers are >= 0 and attach to
// x_j <= upper_j and -x_j <= -lower_j respectively.

#include <cstddef>
#include <optional>
#include <variant>
#include <vector>

#include "mosip/rational.h"

namespace mosip::lp {

enum class Relation { kLessEqual, kEqual, kGreaterEqual };

struct Constraint {
  Vec coefficients;
  Relation relation = Relation::kLessEqual;
  Rational rhs;
};

struct LinearProgram {
  explicit LinearProgram(std::size_t n = 0);

  std::size_t num_vars = 0;
  Vec objective;  // maximized
  std::vector<Constraint> constraints;
  std::vector<std::optional<Rational>> lower;
  std::vector<std::optional<Rational>> upper;

  void add(Vec coefficients, Relation relation, Rational rhs);
  void set_nonnegative(std::size_t j) { lower.at(j) = Rational(0); }
  void set_bounds(std::size_t j, std::optional<Rational> lo, std::optional<Rational> hi);

  // Throws InputError on dimension mismatch or inconsistent bounds.
  void validate() const;
};

struct Multipliers {
  Vec rows;   // one per constraint, <=-orientation sign convention
  Vec lower;  // one per variable (zero when no lower bound)
  Vec upper;  // one per variable (zero when no upper bound)
};

struct Optimal {
  Rational value;
  Vec primal;
  Multipliers dual;
};

struct Unbounded {
  Vec point;
  Vec ray;
};

struct Infeasible {
  Multipliers farkas;  // combined right-hand side normalized to -1
};

using Outcome = std::variant<Optimal, Unbounded, Infeasible>;

Outcome solve(const LinearProgram& lp);

// True when the certificate in `outcome` is valid for `lp`.
bool verify(const LinearProgram& lp, const Outcome& outcome);

bool is_feasible_point(const LinearProgram& lp, std::span<const Rational> x);

struct FeasibilityResult {
  std::optional<Vec> point;          // set when the rows are satisfiable
  std::optional<Multipliers> farkas;  // set otherwise
};

// Witness point for a system of rows and bounds (the objective of `system`
// is ignored). Returns the witness minimizing the coordinate sum when that
// minimum exists, which keeps witnesses deterministic and small.
FeasibilityResult feasible_point(const LinearProgram& system);

inline const Optimal* as_optimal(const Outcome& o) { return std::get_if<Optimal>(&o); }
inline bool is_infeasible(const Outcome& o) { return std::holds_alternative<Infeasible>(o); }
inline bool is_unbounded(const Outcome& o) { return std::holds_alternative<Unbounded>(o); }

}  // namespace mosip::lp
