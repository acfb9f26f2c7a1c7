#include "mosip/oracle.h"

#include <cmath>
#include <limits>
#include <utility>

#include "mosip/errors.h"

namespace mosip {
namespace {

constexpr double kFeasTol = 1e-9;
constexpr double kInf = std::numeric_limits<double>::infinity();

struct Row {
  std::vector<double> a;
  double b;
};

double dotd(const std::vector<double>& a, const double* x) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * x[i];
  return s;
}

std::vector<double> to_doubles(const Vec& v) {
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& q : v) out.push_back(to_double(q));
  return out;
}

std::vector<Row> to_rows(const HPolyhedron& h) {
  std::vector<Row> out;
  for (std::size_t r = 0; r < h.a.size(); ++r) out.push_back({to_doubles(h.a[r]), to_double(h.b[r])});
  return out;
}

bool rows_hold(const std::vector<Row>& rows, const double* x) {
  for (const auto& r : rows) {
    if (dotd(r.a, x) > r.b + kFeasTol * (1 + std::abs(r.b))) return false;
  }
  return true;
}

// Float mirror of eval(); Precomputed tables fall back to exact lookup.
class FloatFunc {
 public:
  explicit FloatFunc(const ConvexFunc& f) : f_(&f) {
    using K = ConvexFunc::Kind;
    if (f.domain()) domain_ = to_rows(*f.domain());
    switch (f.kind()) {
      case K::kAffine:
      case K::kMaxAffine:
      case K::kSupportPolygon:
      case K::kScaledNormInf:
        for (const auto& p : to_max_affine(f)) pieces_.push_back({to_doubles(p.a), to_double(p.b)});
        break;
      case K::kScaledNorm2:
        center_ = to_doubles(f.center());
        param_ = to_double(f.param());
        break;
      case K::kNegSqrtParabola1D:
        param_ = to_double(f.param());
        break;
      case K::kPrecomputed:
        exact_ = true;
        break;
    }
  }

  bool needs_exact() const { return exact_; }

  double operator()(const double* x, const Vec* exact_point) const {
    using K = ConvexFunc::Kind;
    if (exact_) {
      ExtReal v = eval(*f_, *exact_point);
      return v.is_pos_inf() ? kInf : v.to_double();
    }
    if (!rows_hold(domain_, x)) return kInf;
    switch (f_->kind()) {
      case K::kScaledNorm2: {
        double s = 0;
        for (std::size_t i = 0; i < center_.size(); ++i) s += (x[i] - center_[i]) * (x[i] - center_[i]);
        return param_ * std::sqrt(s);
      }
      case K::kNegSqrtParabola1D: {
        double r = 2 * param_ * x[0] - x[0] * x[0];
        if (r < -kFeasTol) return kInf;
        return -std::sqrt(std::max(r, 0.0));
      }
      default: {
        double best = -kInf;
        for (const auto& p : pieces_) best = std::max(best, dotd(p.a, x) + p.b);
        return best;
      }
    }
  }

 private:
  const ConvexFunc* f_;
  std::vector<Row> domain_;
  std::vector<Row> pieces_;
  std::vector<double> center_;
  double param_ = 0;
  bool exact_ = false;
};

struct Partial {
  std::optional<std::size_t> weak_idx;
  Vec weak_pt;
  std::optional<std::size_t> eff_idx;
  Vec eff_pt;
  double nu = kInf;
  std::optional<std::size_t> nu_idx;
  std::size_t feasible = 0;
};

class Scanner {
 public:
  Scanner(const MosipProblem& p, const Vec& x, const Box& box, std::size_t resolution)
      : p_(p), x_(x), box_(box), res_(resolution) {
    const std::size_t n = p.dim;
    if (resolution < 2) throw InputError("oracle: resolution must be at least 2");
    if (box.lo.size() != n || box.hi.size() != n || x.size() != n) {
      throw InputError("oracle: dimension mismatch");
    }
    require_feasible(p, x);
    total_ = 1;
    for (std::size_t i = 0; i < n; ++i) {
      if (box.lo[i] > x[i] || x[i] > box.hi[i]) throw InputError("oracle: box must contain the candidate");
      step_.push_back((box.hi[i] - box.lo[i]) / static_cast<long>(resolution - 1));
      // Coordinates rounded from exact nodes, so x itself is hit exactly.
      std::vector<double> axis(resolution);
      for (std::size_t k = 0; k < resolution; ++k) {
        axis[k] = to_double(box.lo[i] + step_.back() * static_cast<long>(k));
      }
      coords_.push_back(std::move(axis));
      total_ *= resolution;
    }
    for (const auto& f : p.objectives) objectives_.emplace_back(f);
    if (p.feasible_set) {
      s_rows_ = to_rows(*p.feasible_set);
    } else {
      for (const auto& g : p.constraints.members()) constraints_.emplace_back(g);
    }
    for (const auto& f : objectives_) exact_ = exact_ || f.needs_exact();
    for (const auto& g : constraints_) exact_ = exact_ || g.needs_exact();
    x_d_ = to_doubles(x);
    for (const auto& f : objectives_) fx_d_.push_back(f(x_d_.data(), &x_));
    for (const auto& f : p.objectives) fx_.push_back(eval(f, x_));
  }

  std::size_t total() const { return total_; }

  Vec point(std::size_t idx) const {
    Vec y(p_.dim);
    for (std::size_t i = 0; i < p_.dim; ++i) {
      y[i] = box_.lo[i] + step_[i] * static_cast<long>(idx % res_);
      idx /= res_;
    }
    return y;
  }

  Partial scan(std::size_t begin, std::size_t end) const {
    const std::size_t n = p_.dim;
    Partial out;
    std::vector<double> y(n), fy(objectives_.size());
    Vec exact_y;
    for (std::size_t idx = begin; idx < end; ++idx) {
      std::size_t rest = idx;
      for (std::size_t i = 0; i < n; ++i) {
        y[i] = coords_[i][rest % res_];
        rest /= res_;
      }
      if (exact_) exact_y = point(idx);
      if (!feasible_float(y.data(), &exact_y)) continue;
      ++out.feasible;
      bool all_less = true, all_le = true, some_less = false;
      double worst = -kInf;
      for (std::size_t i = 0; i < objectives_.size(); ++i) {
        fy[i] = objectives_[i](y.data(), &exact_y);
        all_less = all_less && fy[i] < fx_d_[i];
        all_le = all_le && fy[i] <= fx_d_[i];
        some_less = some_less || fy[i] < fx_d_[i];
        worst = std::max(worst, fy[i] - fx_d_[i]);
      }
      double dist = 0;
      for (std::size_t i = 0; i < n; ++i) dist += (y[i] - x_d_[i]) * (y[i] - x_d_[i]);
      dist = std::sqrt(dist);
      if (dist > 0) {
        double ratio = worst / dist;
        if (ratio < out.nu) {
          out.nu = ratio;
          out.nu_idx = idx;
        }
      }
      if (!out.weak_idx && all_less) confirm(idx, true, &out);
      if (!out.eff_idx && all_le && some_less) confirm(idx, false, &out);
    }
    return out;
  }

  static void merge(Partial* acc, Partial&& part) {
    if (!acc->weak_idx && part.weak_idx) {
      acc->weak_idx = part.weak_idx;
      acc->weak_pt = std::move(part.weak_pt);
    }
    if (!acc->eff_idx && part.eff_idx) {
      acc->eff_idx = part.eff_idx;
      acc->eff_pt = std::move(part.eff_pt);
    }
    if (part.nu_idx && part.nu < acc->nu) {
      acc->nu = part.nu;
      acc->nu_idx = part.nu_idx;
    }
    acc->feasible += part.feasible;
  }

  OracleReport report(Partial&& all) const {
    OracleReport r;
    if (all.weak_idx) r.weak_refuted = std::move(all.weak_pt);
    if (all.eff_idx) r.eff_refuted = std::move(all.eff_pt);
    if (all.nu_idx) {
      r.nu_hat = all.nu;
      r.nu_hat_at = point(*all.nu_idx);
    }
    r.grid = {box_, res_, total_, all.feasible};
    return r;
  }

 private:
  bool feasible_float(const double* y, const Vec* exact_y) const {
    if (p_.feasible_set) return rows_hold(s_rows_, y);
    for (const auto& g : constraints_) {
      if (!(g(y, exact_y) <= kFeasTol)) return false;
    }
    return true;
  }

  bool feasible_exact(const Vec& y) const {
    if (p_.feasible_set) return p_.feasible_set->contains(y);
    for (const auto& g : p_.constraints.members()) {
      if (eval(g, y) > ExtReal(0)) return false;
    }
    return true;
  }

  // Exact re-check of a float refutation candidate.
  void confirm(std::size_t idx, bool strict, Partial* out) const {
    Vec y = point(idx);
    if (!feasible_exact(y)) return;
    bool some_less = false;
    for (std::size_t i = 0; i < p_.objectives.size(); ++i) {
      ExtReal v = eval(p_.objectives[i], y);
      if (strict ? !(v < fx_[i]) : v > fx_[i]) return;
      some_less = some_less || v < fx_[i];
    }
    if (!some_less) return;
    if (strict) {
      out->weak_idx = idx;
      out->weak_pt = std::move(y);
    } else {
      out->eff_idx = idx;
      out->eff_pt = std::move(y);
    }
  }

  const MosipProblem& p_;
  Vec x_;
  Box box_;
  std::size_t res_;
  std::size_t total_ = 0;
  std::vector<Rational> step_;
  std::vector<std::vector<double>> coords_;
  std::vector<double> x_d_, fx_d_;
  std::vector<ExtReal> fx_;
  std::vector<FloatFunc> objectives_, constraints_;
  std::vector<Row> s_rows_;
  bool exact_ = false;
};

}  // namespace

Box Box::cube(std::size_t n, const Rational& lo, const Rational& hi) {
  return {Vec(n, lo), Vec(n, hi)};
}

OracleReport classify_grid_serial(const MosipProblem& p, const Vec& x, const Box& box,
                                  std::size_t resolution) {
  Scanner s(p, x, box, resolution);
  return s.report(s.scan(0, s.total()));
}

OracleReport classify_grid(const MosipProblem& p, const Vec& x, const Box& box,
                           std::size_t resolution) {
  Scanner s(p, x, box, resolution);
  const std::size_t total = s.total();
  const std::size_t chunks = std::min<std::size_t>(total, 256);
  std::vector<Partial> parts(chunks);
  const long nchunks = static_cast<long>(chunks);
#pragma omp parallel for schedule(dynamic)
  for (long c = 0; c < nchunks; ++c) {
    const std::size_t begin = total * static_cast<std::size_t>(c) / chunks;
    const std::size_t end = total * static_cast<std::size_t>(c + 1) / chunks;
    parts[static_cast<std::size_t>(c)] = s.scan(begin, end);
  }
  Partial all;
  for (auto& part : parts) Scanner::merge(&all, std::move(part));
  return s.report(std::move(all));
}

}  // namespace mosip
