#pragma once

// Independent brute-force oracles shared by the unit tests and the
// acceptance binary. None of these call the LP engine.

#include <cmath>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "mosip/rational.h"

namespace mosip::testing {

inline void for_each_subset(std::size_t m, std::size_t k,
                            const std::function<void(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (cur.size() == k) {
      fn(cur);
      return;
    }
    for (std::size_t i = start; i < m; ++i) {
      cur.push_back(i);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
}

// Solves cols * c = d exactly for c (cols given as a list of column
// vectors). Returns nullopt when inconsistent or when the columns are
// dependent.
inline std::optional<Vec> solve_columns(const Matrix& cols, const Vec& d) {
  const std::size_t k = cols.size();
  const std::size_t n = d.size();
  Matrix a(n, Vec(k + 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < k; ++j) a[i][j] = cols[j][i];
    a[i][k] = d[i];
  }
  std::size_t row = 0;
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t p = row;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) return std::nullopt;
    std::swap(a[p], a[row]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == row || a[r][c] == 0) continue;
      Rational f = a[r][c] / a[row][c];
      for (std::size_t j = 0; j <= k; ++j) a[r][j] -= f * a[row][j];
    }
    ++row;
  }
  for (std::size_t r = row; r < n; ++r) {
    if (a[r][k] != 0) return std::nullopt;
  }
  Vec c(k);
  for (std::size_t j = 0; j < k; ++j) c[j] = a[j][k] / a[j][j];
  return c;
}

// Caratheodory: d is in cone(G) iff it is a nonnegative combination of some
// linearly independent subset of G.
inline bool cone_member_bruteforce(const Matrix& gens, const Vec& d) {
  if (is_zero(d)) return true;
  const std::size_t n = d.size();
  bool found = false;
  for (std::size_t k = 1; k <= std::min(n, gens.size()) && !found; ++k) {
    for_each_subset(gens.size(), k, [&](const std::vector<std::size_t>& idx) {
      if (found) return;
      Matrix cols;
      for (auto i : idx) cols.push_back(gens[i]);
      auto c = solve_columns(cols, d);
      if (!c) return;
      for (const auto& q : *c) {
        if (q < 0) return;
      }
      found = true;
    });
  }
  return found;
}

// Max of c'x over {a_r'x <= b_r} by enumerating n-subsets of tight rows.
// Returns nullopt when no vertex is feasible.
inline std::optional<Rational> lp_max_bruteforce(const Matrix& a, const Vec& b, const Vec& c) {
  const std::size_t n = c.size();
  std::optional<Rational> best;
  for_each_subset(a.size(), n, [&](const std::vector<std::size_t>& idx) {
    // Rows as columns of the transpose system.
    Matrix cols(n, Vec(n));
    Vec rhs(n);
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t j = 0; j < n; ++j) cols[j][r] = a[idx[r]][j];
      rhs[r] = b[idx[r]];
    }
    auto x = solve_columns(cols, rhs);
    if (!x) return;
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (dot(a[r], *x) > b[r]) return;
    }
    Rational v = dot(c, *x);
    if (!best || v > *best) best = v;
  });
  return best;
}

// Deterministic quasi-uniform unit directions (Fibonacci sphere in 3-D,
// equally spaced angles in 2-D, +-1 in 1-D).
inline std::vector<std::vector<double>> sphere_directions(std::size_t n, std::size_t count) {
  std::vector<std::vector<double>> out;
  if (n == 1) return {{1.0}, {-1.0}};
  const double pi = std::acos(-1.0);
  if (n == 2) {
    for (std::size_t k = 0; k < count; ++k) {
      double t = 2 * pi * (static_cast<double>(k) + 0.5) / static_cast<double>(count);
      out.push_back({std::cos(t), std::sin(t)});
    }
    return out;
  }
  const double golden = pi * (3.0 - std::sqrt(5.0));
  for (std::size_t k = 0; k < count; ++k) {
    double z = 1.0 - 2.0 * (static_cast<double>(k) + 0.5) / static_cast<double>(count);
    double r = std::sqrt(1.0 - z * z);
    double phi = golden * static_cast<double>(k);
    out.push_back({r * std::cos(phi), r * std::sin(phi), z});
  }
  return out;
}

inline double dotd(const Vec& v, const std::vector<double>& u) {
  double s = 0;
  for (std::size_t i = 0; i < u.size(); ++i) s += v[i].get_d() * u[i];
  return s;
}

// Support function of conv(V) + cone(R) in direction u (+inf when a
// recession generator points along u).
inline double support_float(const Matrix& v, const Matrix& r, const std::vector<double>& u) {
  for (const auto& g : r) {
    if (dotd(g, u) > 1e-12) return HUGE_VAL;
  }
  double best = -HUGE_VAL;
  for (const auto& x : v) best = std::max(best, dotd(x, u));
  return best;
}

inline Rational random_int(std::mt19937& rng, int lo, int hi) {
  return Rational(std::uniform_int_distribution<int>(lo, hi)(rng));
}

inline Vec random_vec(std::mt19937& rng, std::size_t n, int lo, int hi) {
  Vec v(n);
  for (auto& q : v) q = random_int(rng, lo, hi);
  return v;
}

}  // namespace mosip::testing
