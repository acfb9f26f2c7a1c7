#include "mosip/lp.h"

#include <string>

#include "mosip/errors.h"

namespace mosip::lp {

LinearProgram::LinearProgram(std::size_t n)
    : num_vars(n), objective(zeros(n)), lower(n), upper(n) {}

void LinearProgram::add(Vec coefficients, Relation relation, Rational rhs) {
  constraints.push_back({std::move(coefficients), relation, std::move(rhs)});
}

void LinearProgram::set_bounds(std::size_t j, std::optional<Rational> lo,
                               std::optional<Rational> hi) {
  lower.at(j) = std::move(lo);
  upper.at(j) = std::move(hi);
}

void LinearProgram::validate() const {
  if (objective.size() != num_vars) {
    throw InputError("objective has " + std::to_string(objective.size()) +
                     " entries, expected " + std::to_string(num_vars));
  }
  if (lower.size() != num_vars || upper.size() != num_vars) {
    throw InputError("bound vectors do not match num_vars");
  }
  for (std::size_t k = 0; k < constraints.size(); ++k) {
    if (constraints[k].coefficients.size() != num_vars) {
      throw InputError("constraint " + std::to_string(k) + " has " +
                       std::to_string(constraints[k].coefficients.size()) +
                       " coefficients, expected " + std::to_string(num_vars));
    }
  }
  for (std::size_t j = 0; j < num_vars; ++j) {
    if (lower[j] && upper[j] && *lower[j] > *upper[j]) {
      throw InputError("variable " + std::to_string(j) + " has lower > upper");
    }
  }
}

namespace {

enum class VarKind { kLower, kBoth, kUpper, kFree };

struct VarMap {
  VarKind kind;
  std::size_t col;        // z column (z+ for free variables)
  std::size_t neg_col;    // z- for free variables
  std::size_t bound_row;  // internal row of z <= U-L for kBoth
};

struct Row {
  Vec coeffs;  // over internal z columns
  bool equality;
  Rational rhs;
};

// Internal form: maximize chat'z s.t. rows, z >= 0.
struct Internal {
  std::vector<VarMap> vars;
  std::size_t nz = 0;
  std::vector<Row> rows;
  Vec chat;
};

Internal build_internal(const LinearProgram& lp) {
  Internal in;
  in.vars.resize(lp.num_vars);
  for (std::size_t j = 0; j < lp.num_vars; ++j) {
    VarMap& v = in.vars[j];
    if (lp.lower[j] && lp.upper[j]) {
      v.kind = VarKind::kBoth;
    } else if (lp.lower[j]) {
      v.kind = VarKind::kLower;
    } else if (lp.upper[j]) {
      v.kind = VarKind::kUpper;
    } else {
      v.kind = VarKind::kFree;
    }
    v.col = in.nz++;
    if (v.kind == VarKind::kFree) v.neg_col = in.nz++;
  }
  auto internal_row = [&](const Vec& a, bool eq, const Rational& b) {
    Row row{zeros(in.nz), eq, b};
    for (std::size_t j = 0; j < lp.num_vars; ++j) {
      if (a[j] == 0) continue;
      const VarMap& v = in.vars[j];
      switch (v.kind) {
        case VarKind::kLower:
        case VarKind::kBoth:
          row.coeffs[v.col] += a[j];
          row.rhs -= a[j] * *lp.lower[j];
          break;
        case VarKind::kUpper:
          row.coeffs[v.col] -= a[j];
          row.rhs -= a[j] * *lp.upper[j];
          break;
        case VarKind::kFree:
          row.coeffs[v.col] += a[j];
          row.coeffs[v.neg_col] -= a[j];
          break;
      }
    }
    return row;
  };
  for (const auto& c : lp.constraints) {
    if (c.relation == Relation::kGreaterEqual) {
      in.rows.push_back(internal_row(scaled(c.coefficients, -1), false, -c.rhs));
    } else {
      in.rows.push_back(internal_row(c.coefficients, c.relation == Relation::kEqual, c.rhs));
    }
  }
  for (std::size_t j = 0; j < lp.num_vars; ++j) {
    VarMap& v = in.vars[j];
    if (v.kind != VarKind::kBoth) continue;
    v.bound_row = in.rows.size();
    Row row{zeros(in.nz), false, *lp.upper[j] - *lp.lower[j]};
    row.coeffs[v.col] = 1;
    in.rows.push_back(std::move(row));
  }
  in.chat = zeros(in.nz);
  for (std::size_t j = 0; j < lp.num_vars; ++j) {
    const VarMap& v = in.vars[j];
    const Rational& c = lp.objective[j];
    switch (v.kind) {
      case VarKind::kLower:
      case VarKind::kBoth:
        in.chat[v.col] = c;
        break;
      case VarKind::kUpper:
        in.chat[v.col] = -c;
        break;
      case VarKind::kFree:
        in.chat[v.col] = c;
        in.chat[v.neg_col] = -c;
        break;
    }
  }
  return in;
}

// Dense tableau over flipped rows (right-hand sides nonnegative).
class Tableau {
 public:
  explicit Tableau(const Internal& in) : m_(in.rows.size()), nz_(in.nz) {
    sigma_.resize(m_);
    for (std::size_t r = 0; r < m_; ++r) {
      if (!in.rows[r].equality) slack_col_.push_back(r);
    }
    std::size_t ns = slack_col_.size();
    slack_of_row_.assign(m_, kNone);
    for (std::size_t s = 0; s < ns; ++s) slack_of_row_[slack_col_[s]] = nz_ + s;
    ncols_ = nz_ + ns;
    init_col_.assign(m_, kNone);
    for (std::size_t r = 0; r < m_; ++r) {
      sigma_[r] = in.rows[r].rhs < 0 ? -1 : 1;
      bool slack_basis = !in.rows[r].equality && sigma_[r] == 1;
      if (slack_basis) {
        init_col_[r] = slack_of_row_[r];
      } else {
        init_col_[r] = ncols_++;
        artificial_.push_back(init_col_[r]);
      }
    }
    first_artificial_ = nz_ + ns;
    t_.assign(m_, zeros(ncols_));
    rhs_.resize(m_);
    basis_.resize(m_);
    for (std::size_t r = 0; r < m_; ++r) {
      const Row& row = in.rows[r];
      for (std::size_t c = 0; c < nz_; ++c) {
        if (row.coeffs[c] != 0) t_[r][c] = sigma_[r] * row.coeffs[c];
      }
      if (slack_of_row_[r] != kNone) t_[r][slack_of_row_[r]] = sigma_[r];
      t_[r][init_col_[r]] = 1;
      rhs_[r] = sigma_[r] * row.rhs;
      basis_[r] = init_col_[r];
    }
  }

  bool has_artificials() const { return !artificial_.empty(); }
  bool is_artificial(std::size_t c) const { return c >= first_artificial_; }

  void set_cost(const Vec& cost) {
    cost_ = cost;
    reduced_ = cost;
    for (std::size_t r = 0; r < m_; ++r) {
      const Rational& cb = cost_[basis_[r]];
      if (cb == 0) continue;
      for (std::size_t c = 0; c < ncols_; ++c) {
        if (t_[r][c] != 0) reduced_[c] -= cb * t_[r][c];
      }
    }
  }

  Vec phase1_cost() const {
    Vec cost = zeros(ncols_);
    for (auto c : artificial_) cost[c] = 1;
    return cost;
  }

  Vec phase2_cost(const Vec& chat) const {
    Vec cost = zeros(ncols_);
    for (std::size_t c = 0; c < nz_; ++c) cost[c] = -chat[c];
    return cost;
  }

  Rational objective() const {
    Rational v = 0;
    for (std::size_t r = 0; r < m_; ++r) v += cost_[basis_[r]] * rhs_[r];
    return v;
  }

  // Runs Bland's rule to optimality. Returns the entering column of an
  // unbounded direction, or kNone at optimality.
  std::size_t minimize(bool allow_artificial) {
    for (;;) {
      std::size_t enter = kNone;
      for (std::size_t c = 0; c < ncols_; ++c) {
        if (!allow_artificial && is_artificial(c)) continue;
        if (reduced_[c] < 0) {
          enter = c;
          break;
        }
      }
      if (enter == kNone) return kNone;
      std::size_t leave = kNone;
      Rational best_ratio;
      for (std::size_t r = 0; r < m_; ++r) {
        if (t_[r][enter] <= 0) continue;
        Rational ratio = rhs_[r] / t_[r][enter];
        if (leave == kNone || ratio < best_ratio ||
            (ratio == best_ratio && basis_[r] < basis_[leave])) {
          leave = r;
          best_ratio = ratio;
        }
      }
      if (leave == kNone) return enter;
      pivot(leave, enter);
    }
  }

  // After a successful phase 1, pivots zero-valued artificials out of the
  // basis where a structural column allows it.
  void drive_out_artificials() {
    for (std::size_t r = 0; r < m_; ++r) {
      if (!is_artificial(basis_[r])) continue;
      for (std::size_t c = 0; c < first_artificial_; ++c) {
        if (t_[r][c] != 0) {
          pivot(r, c);
          break;
        }
      }
    }
  }

  // w = c_B' B^{-1}; B^{-1} sits in the initial-basis columns.
  Vec basis_duals() const {
    Vec w = zeros(m_);
    for (std::size_t r = 0; r < m_; ++r) {
      const Rational& cb = cost_[basis_[r]];
      if (cb == 0) continue;
      for (std::size_t k = 0; k < m_; ++k) {
        const Rational& binv = t_[r][init_col_[k]];
        if (binv != 0) w[k] += cb * binv;
      }
    }
    return w;
  }

  Vec structural_values() const {
    Vec z = zeros(nz_);
    for (std::size_t r = 0; r < m_; ++r) {
      if (basis_[r] < nz_) z[basis_[r]] = rhs_[r];
    }
    return z;
  }

  Vec ray_for(std::size_t enter) const {
    Vec d = zeros(nz_);
    if (enter < nz_) d[enter] = 1;
    for (std::size_t r = 0; r < m_; ++r) {
      if (basis_[r] < nz_) d[basis_[r]] = -t_[r][enter];
    }
    return d;
  }

  int sigma(std::size_t r) const { return sigma_[r]; }

  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

 private:
  void pivot(std::size_t row, std::size_t col) {
    Rational inv = 1 / t_[row][col];
    for (std::size_t c = 0; c < ncols_; ++c) {
      if (t_[row][c] != 0) t_[row][c] *= inv;
    }
    rhs_[row] *= inv;
    for (std::size_t r = 0; r < m_; ++r) {
      if (r == row || t_[r][col] == 0) continue;
      Rational f = t_[r][col];
      for (std::size_t c = 0; c < ncols_; ++c) {
        if (t_[row][c] != 0) t_[r][c] -= f * t_[row][c];
      }
      rhs_[r] -= f * rhs_[row];
    }
    if (reduced_[col] != 0) {
      Rational f = reduced_[col];
      for (std::size_t c = 0; c < ncols_; ++c) {
        if (t_[row][c] != 0) reduced_[c] -= f * t_[row][c];
      }
    }
    basis_[row] = col;
  }

  std::size_t m_, nz_, ncols_ = 0, first_artificial_ = 0;
  std::vector<int> sigma_;
  std::vector<std::size_t> slack_col_, slack_of_row_, init_col_, artificial_, basis_;
  Matrix t_;
  Vec rhs_, cost_, reduced_;
};

Vec to_original(const LinearProgram& lp, const Internal& in, const Vec& z, bool ray) {
  Vec x = zeros(lp.num_vars);
  for (std::size_t j = 0; j < lp.num_vars; ++j) {
    const VarMap& v = in.vars[j];
    switch (v.kind) {
      case VarKind::kLower:
      case VarKind::kBoth:
        x[j] = z[v.col];
        if (!ray) x[j] += *lp.lower[j];
        break;
      case VarKind::kUpper:
        x[j] = -z[v.col];
        if (!ray) x[j] += *lp.upper[j];
        break;
      case VarKind::kFree:
        x[j] = z[v.col] - z[v.neg_col];
        break;
    }
  }
  return x;
}

// Maps internal row multipliers y (M'y >= chat, y_ineq >= 0) to original
// row and bound multipliers.
Multipliers to_original_multipliers(const LinearProgram& lp, const Internal& in,
                                    const Vec& y, const Vec& chat) {
  Multipliers out{zeros(lp.constraints.size()), zeros(lp.num_vars), zeros(lp.num_vars)};
  for (std::size_t k = 0; k < lp.constraints.size(); ++k) out.rows[k] = y[k];
  for (std::size_t j = 0; j < lp.num_vars; ++j) {
    const VarMap& v = in.vars[j];
    if (v.kind == VarKind::kFree) continue;
    Rational t = -chat[v.col];
    for (std::size_t r = 0; r < in.rows.size(); ++r) {
      const Rational& a = in.rows[r].coeffs[v.col];
      if (a != 0) t += a * y[r];
    }
    switch (v.kind) {
      case VarKind::kLower:
        out.lower[j] = t;
        break;
      case VarKind::kBoth:
        out.lower[j] = t;  // t already includes the bound row
        out.upper[j] = y[v.bound_row];
        break;
      case VarKind::kUpper:
        out.upper[j] = t;
        break;
      case VarKind::kFree:
        break;
    }
  }
  return out;
}

Vec normalized_coeffs(const Constraint& c) {
  return c.relation == Relation::kGreaterEqual ? scaled(c.coefficients, -1) : c.coefficients;
}

Rational normalized_rhs(const Constraint& c) {
  return c.relation == Relation::kGreaterEqual ? Rational(-c.rhs) : c.rhs;
}

bool multiplier_signs_ok(const LinearProgram& lp, const Multipliers& m) {
  if (m.rows.size() != lp.constraints.size() || m.lower.size() != lp.num_vars ||
      m.upper.size() != lp.num_vars) {
    return false;
  }
  for (std::size_t k = 0; k < lp.constraints.size(); ++k) {
    if (lp.constraints[k].relation != Relation::kEqual && m.rows[k] < 0) return false;
  }
  for (std::size_t j = 0; j < lp.num_vars; ++j) {
    if (m.lower[j] < 0 || (!lp.lower[j] && m.lower[j] != 0)) return false;
    if (m.upper[j] < 0 || (!lp.upper[j] && m.upper[j] != 0)) return false;
  }
  return true;
}

// Returns (sum_k y_k a~_k + u - l, sum_k y_k b~_k + u'U - l'L).
std::pair<Vec, Rational> combine(const LinearProgram& lp, const Multipliers& m) {
  Vec lhs = zeros(lp.num_vars);
  Rational rhs = 0;
  for (std::size_t k = 0; k < lp.constraints.size(); ++k) {
    if (m.rows[k] == 0) continue;
    axpy(lhs, m.rows[k], normalized_coeffs(lp.constraints[k]));
    rhs += m.rows[k] * normalized_rhs(lp.constraints[k]);
  }
  for (std::size_t j = 0; j < lp.num_vars; ++j) {
    lhs[j] += m.upper[j] - m.lower[j];
    if (lp.upper[j]) rhs += m.upper[j] * *lp.upper[j];
    if (lp.lower[j]) rhs -= m.lower[j] * *lp.lower[j];
  }
  return {lhs, rhs};
}

}  // namespace

bool is_feasible_point(const LinearProgram& lp, std::span<const Rational> x) {
  if (x.size() != lp.num_vars) return false;
  for (const auto& c : lp.constraints) {
    Rational v = dot(c.coefficients, x);
    switch (c.relation) {
      case Relation::kLessEqual:
        if (v > c.rhs) return false;
        break;
      case Relation::kEqual:
        if (v != c.rhs) return false;
        break;
      case Relation::kGreaterEqual:
        if (v < c.rhs) return false;
        break;
    }
  }
  for (std::size_t j = 0; j < lp.num_vars; ++j) {
    if (lp.lower[j] && x[j] < *lp.lower[j]) return false;
    if (lp.upper[j] && x[j] > *lp.upper[j]) return false;
  }
  return true;
}

bool verify(const LinearProgram& lp, const Outcome& outcome) {
  if (const auto* opt = std::get_if<Optimal>(&outcome)) {
    if (!is_feasible_point(lp, opt->primal)) return false;
    if (dot(lp.objective, opt->primal) != opt->value) return false;
    if (!multiplier_signs_ok(lp, opt->dual)) return false;
    auto [lhs, rhs] = combine(lp, opt->dual);
    return lhs == lp.objective && rhs == opt->value;
  }
  if (const auto* unb = std::get_if<Unbounded>(&outcome)) {
    if (!is_feasible_point(lp, unb->point)) return false;
    if (unb->ray.size() != lp.num_vars || dot(lp.objective, unb->ray) <= 0) return false;
    for (const auto& c : lp.constraints) {
      Rational v = dot(normalized_coeffs(c), unb->ray);
      if (c.relation == Relation::kEqual ? v != 0 : v > 0) return false;
    }
    for (std::size_t j = 0; j < lp.num_vars; ++j) {
      if (lp.lower[j] && unb->ray[j] < 0) return false;
      if (lp.upper[j] && unb->ray[j] > 0) return false;
    }
    return true;
  }
  const auto& inf = std::get<Infeasible>(outcome);
  if (!multiplier_signs_ok(lp, inf.farkas)) return false;
  auto [lhs, rhs] = combine(lp, inf.farkas);
  return is_zero(lhs) && rhs == -1;
}

Outcome solve(const LinearProgram& lp) {
  lp.validate();
  Internal in = build_internal(lp);
  Tableau tab(in);
  const std::size_t m = in.rows.size();
  auto internal_y = [&]() {
    Vec w = tab.basis_duals();
    Vec y(m);
    for (std::size_t r = 0; r < m; ++r) y[r] = -tab.sigma(r) * w[r];
    return y;
  };

  Outcome result;
  bool done = false;
  if (tab.has_artificials()) {
    tab.set_cost(tab.phase1_cost());
    tab.minimize(/*allow_artificial=*/true);
    if (tab.objective() > 0) {
      Vec y = internal_y();
      Multipliers f = to_original_multipliers(lp, in, y, zeros(in.nz));
      auto [lhs, rhs] = combine(lp, f);
      Rational scale = -1 / rhs;
      for (auto& q : f.rows) q *= scale;
      for (auto& q : f.lower) q *= scale;
      for (auto& q : f.upper) q *= scale;
      result = Infeasible{std::move(f)};
      done = true;
    } else {
      tab.drive_out_artificials();
    }
  }
  if (!done) {
    tab.set_cost(tab.phase2_cost(in.chat));
    std::size_t enter = tab.minimize(/*allow_artificial=*/false);
    Vec point = to_original(lp, in, tab.structural_values(), false);
    if (enter != Tableau::kNone) {
      Vec ray = to_original(lp, in, tab.ray_for(enter), true);
      result = Unbounded{std::move(point), std::move(ray)};
    } else {
      Vec y = internal_y();
      Multipliers d = to_original_multipliers(lp, in, y, in.chat);
      Rational value = dot(lp.objective, point);
      result = Optimal{std::move(value), std::move(point), std::move(d)};
    }
  }
  if (!verify(lp, result)) {
    throw InternalError("lp: certificate failed exact re-verification");
  }
  return result;
}

FeasibilityResult feasible_point(const LinearProgram& system) {
  LinearProgram lp = system;
  lp.objective.assign(lp.num_vars, Rational(-1));
  Outcome out = solve(lp);
  FeasibilityResult res;
  if (auto* opt = std::get_if<Optimal>(&out)) {
    res.point = std::move(opt->primal);
  } else if (auto* unb = std::get_if<Unbounded>(&out)) {
    res.point = std::move(unb->point);
  } else {
    res.farkas = std::move(std::get<Infeasible>(out).farkas);
  }
  return res;
}

}  // namespace mosip::lp
