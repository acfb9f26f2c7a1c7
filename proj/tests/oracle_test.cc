#include "mosip/oracle.h"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "mosip/errors.h"
#include "mosip/kkt.h"
#include "random_instances.h"
#include "test_oracles.h"

namespace mosip {
namespace {

Rational Q(long n, long d = 1) { return make_rational(n, d); }
Vec V(std::initializer_list<long> xs) {
  Vec v;
  for (long x : xs) v.push_back(Q(x));
  return v;
}

TEST(OracleTest, Example1IsolationConstant) {
  MosipProblem p = builtin_problem("example1", 20);
  OracleReport r = classify_grid(p, V({0}), Box::cube(1, -3, 0), 301);
  EXPECT_FALSE(r.weak_refuted);
  EXPECT_FALSE(r.eff_refuted);
  ASSERT_TRUE(r.nu_hat);
  // -2x = 2|x| on S.
  EXPECT_NEAR(*r.nu_hat, 2.0, 1e-9);
  EXPECT_EQ(r.grid.points, 301u);
  EXPECT_EQ(r.grid.feasible, 301u);
}

TEST(OracleTest, Example2GridMinimumIsZero) {
  MosipProblem p = builtin_problem("example2", 6);
  OracleReport r = classify_grid(p, V({0, 0}), Box::cube(2, -2, 0), 101);
  EXPECT_FALSE(r.weak_refuted);
  EXPECT_FALSE(r.eff_refuted);
  ASSERT_TRUE(r.nu_hat);
  // Points (0, -s) tie both objectives with the candidate.
  EXPECT_NEAR(*r.nu_hat, 0.0, 1e-12);
  ASSERT_TRUE(r.nu_hat_at);
  EXPECT_EQ((*r.nu_hat_at)[0], 0);
  // The hand value at (-1, -1): max_i (f_i - f_i(0)) = 1 over sqrt(2).
  Vec y = V({-1, -1});
  double ratio = eval(p.objectives[0], y).to_double() / std::sqrt(2.0);
  EXPECT_NEAR(ratio, 0.7071067811865476, 1e-12);
  EXPECT_LE(*r.nu_hat, ratio);
}

TEST(OracleTest, UniqueMinimizerHasPositiveConstant) {
  MosipProblem p;
  p.dim = 1;
  p.objectives.push_back(ConvexFunc::max_affine({{V({1}), 0}, {V({-1}), 0}}));
  OracleReport r = classify_grid(p, V({0}), Box::cube(1, -1, 1), 41);
  EXPECT_FALSE(r.weak_refuted);
  ASSERT_TRUE(r.nu_hat);
  EXPECT_NEAR(*r.nu_hat, 1.0, 1e-12);
}

TEST(OracleTest, RefutationsAreExact) {
  // minimize x over [0, 1] at x = 1.
  MosipProblem p;
  p.dim = 1;
  p.objectives.push_back(ConvexFunc::affine(V({1}), 0));
  HPolyhedron s{1, {}, {}};
  s.add_row(V({-1}), 0);
  s.add_row(V({1}), 1);
  p.feasible_set = s;
  OracleReport r = classify_grid(p, V({1}), Box::cube(1, 0, 1), 11);
  ASSERT_TRUE(r.weak_refuted);
  ASSERT_TRUE(r.eff_refuted);
  EXPECT_EQ(*r.weak_refuted, V({0}));  // first in index order
  EXPECT_TRUE(testing::feasible_exact(p, *r.weak_refuted));
  ASSERT_TRUE(r.nu_hat);
  EXPECT_NEAR(*r.nu_hat, -1.0, 1e-12);
}

TEST(OracleTest, RejectsBadInput) {
  MosipProblem p = builtin_problem("example1", 20);
  EXPECT_THROW(classify_grid(p, V({0}), Box::cube(1, -3, -1), 11), InputError);
  EXPECT_THROW(classify_grid(p, V({0}), Box::cube(1, -3, 0), 1), InputError);
  EXPECT_THROW(classify_grid(p, V({1}), Box::cube(1, -3, 2), 11), InfeasibleCandidateError);
}

TEST(OracleTest, Example3UsesFeasibleSet) {
  MosipProblem p = builtin_problem("example3", 50);
  OracleReport r = classify_grid(p, V({0}), Box::cube(1, -1, 3), 41);
  // S = [0, 2] and f(x) = x: the candidate is the minimizer.
  EXPECT_FALSE(r.weak_refuted);
  EXPECT_EQ(r.grid.feasible, 21u);
  ASSERT_TRUE(r.nu_hat);
  EXPECT_NEAR(*r.nu_hat, 1.0, 1e-12);
}

TEST(OracleTest, RefinementNeverRaisesNuHat) {
  for (const char* name : {"example1", "example2"}) {
    MosipProblem p = builtin_problem(name, 6);
    const std::size_t n = p.dim;
    Vec x = zeros(n);
    Box box = Box::cube(n, -2, 0);
    std::size_t res = 11;
    double prev = *classify_grid(p, x, box, res).nu_hat;
    for (int k = 0; k < 3; ++k) {
      res = 2 * res - 1;  // halves the spacing, keeps the old nodes
      double cur = *classify_grid(p, x, box, res).nu_hat;
      EXPECT_LE(cur, prev + 1e-9) << name << " " << res;
      prev = cur;
    }
  }
}

TEST(OraclePropertyTest, ParallelMatchesSerialAndRefutationsVerify) {
  std::mt19937 rng(31);
  int refuted = 0;
  for (int it = 0; it < 150; ++it) {
    auto inst = testing::random_instance(rng);
    const MosipProblem& p = inst.problem;
    Box box{inst.x, inst.x};
    for (std::size_t i = 0; i < p.dim; ++i) {
      box.lo[i] -= 2;
      box.hi[i] += 2;
    }
    const std::size_t res = p.dim == 3 ? 9 : 17;
    OracleReport a = classify_grid(p, inst.x, box, res);
    OracleReport b = classify_grid_serial(p, inst.x, box, res);
    EXPECT_EQ(a.weak_refuted, b.weak_refuted) << it;
    EXPECT_EQ(a.eff_refuted, b.eff_refuted) << it;
    EXPECT_EQ(a.nu_hat, b.nu_hat) << it;
    EXPECT_EQ(a.nu_hat_at, b.nu_hat_at) << it;
    EXPECT_EQ(a.grid.feasible, b.grid.feasible) << it;

    auto fx = testing::objective_values(p, inst.x);
    if (a.weak_refuted) {
      ++refuted;
      ASSERT_TRUE(testing::feasible_exact(p, *a.weak_refuted));
      ASSERT_TRUE(testing::strictly_dominates(testing::objective_values(p, *a.weak_refuted), fx));
      // A strict dominator rules out any weak KKT certificate.
      CandidatePoint c(p, inst.x);
      EXPECT_TRUE(weak_kkt(c).separator) << it;
    }
    if (a.eff_refuted) {
      ASSERT_TRUE(testing::feasible_exact(p, *a.eff_refuted));
      ASSERT_TRUE(testing::dominates(testing::objective_values(p, *a.eff_refuted), fx));
    }
  }
  EXPECT_GT(refuted, 20);
}

}  // namespace
}  // namespace mosip
