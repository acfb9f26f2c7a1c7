#include "mosip/problem.h"

#include <gtest/gtest.h>

#include <random>

#include "mosip/errors.h"
#include "test_oracles.h"

namespace mosip {
namespace {

using testing::random_vec;

Rational Q(long n, long d = 1) { return make_rational(n, d); }
Vec V(std::initializer_list<long> xs) {
  Vec v;
  for (long x : xs) v.push_back(Q(x));
  return v;
}

// g_t(0) for the first example family, written out independently.
Rational example1_at_zero(std::size_t t) {
  if (t == 0) return 0;
  long k = static_cast<long>(t / 2);
  return t % 2 == 1 ? -Q(1, k + 1) : -Q(1, k);
}

TEST(FamilyTest, Example1Members) {
  ConstraintFamily fam = ConstraintFamily::indexed("example1", {}, 7);
  EXPECT_EQ(fam.size(), 7u);
  EXPECT_FALSE(fam.is_finite());
  EXPECT_EQ(eval(fam.at(0), V({1})), ExtReal(2));
  EXPECT_EQ(eval(fam.at(1), V({0})), ExtReal(-1));
  EXPECT_EQ(eval(fam.at(2), V({0})), ExtReal(-1));
  EXPECT_EQ(eval(fam.at(5), V({1})), ExtReal(Q(2, 3)));
  EXPECT_EQ(eval(fam.at(6), V({1})), ExtReal(Q(8, 3)));
  EXPECT_EQ(fam.retruncated(3).size(), 3u);
  EXPECT_THROW(ConstraintFamily::finite({}).retruncated(3), InputError);
  EXPECT_THROW(ConstraintFamily::indexed("example1", {}, 0), InputError);
  EXPECT_THROW(ConstraintFamily::indexed("nope", {}, 2), InputError);
}

TEST(FamilyTest, Example3IndexMap) {
  ConstraintFamily fam = ConstraintFamily::indexed("example3", {}, 50);
  EXPECT_EQ(fam.at(0).param(), Q(1));
  EXPECT_EQ(fam.at(49).param(), Q(2));
  EXPECT_EQ(fam.at(7).param(), 1 + Q(7, 49));
  ConstraintFamily custom =
      ConstraintFamily::indexed("example3", {{"t_min", Q(2)}, {"t_max", Q(4)}}, 3);
  EXPECT_EQ(custom.at(1).param(), Q(3));
  EXPECT_THROW(ConstraintFamily::indexed("example3", {{"t_min", Q(0)}}, 3), InputError);
}

TEST(FamilyTest, Example2PolygonsInscribed) {
  ConstraintFamily fam = ConstraintFamily::indexed("example2", {}, 6);
  for (std::size_t t = 0; t < fam.size(); ++t) {
    const ConvexFunc& g = fam.at(t);
    EXPECT_TRUE(g.approximates());
    Rational r = 1 + Q(static_cast<long>(t));
    ASSERT_EQ(g.vertices().size(), 8u);
    for (const auto& v : g.vertices()) {
      // On the boundary circle, inside the closed right half.
      EXPECT_EQ(v[0] * v[0] + v[1] * v[1] - 2 * r * v[1], Q(0));
      EXPECT_GE(v[0], 0);
      EXPECT_GE(v[1], 0);
    }
  }
}

TEST(Example2Test, FamilyIsMonotoneAndBelowTrueSupport) {
  ConstraintFamily fam = ConstraintFamily::indexed("example2", {}, 6);
  std::mt19937 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    Vec x = random_vec(rng, 2, -4, 4);
    double true_prev = -1;
    for (std::size_t t = 0; t < fam.size(); ++t) {
      ExtReal gt = eval(fam.at(t), x);
      if (t > 0) EXPECT_GE(gt, eval(fam.at(t - 1), x));
      EXPECT_GE(gt, ExtReal(0));  // the origin is a vertex
      // Support of the half disk, by dense sampling of its boundary.
      double r = 1.0 + t, best = 0;
      for (int k = 0; k <= 2000; ++k) {
        double th = -M_PI / 2 + M_PI * k / 2000;
        double y1 = r * std::cos(th), y2 = r + r * std::sin(th);
        best = std::max(best, to_double(x[0]) * y1 + to_double(x[1]) * y2);
      }
      EXPECT_LE(gt.to_double(), best + 1e-9);
      EXPECT_GE(best, true_prev);
      true_prev = best;
    }
  }
}

TEST(ProblemTest, BuiltinsValidate) {
  for (const auto& name : builtin_families()) {
    MosipProblem p = builtin_problem(name, 8);
    EXPECT_NO_THROW(p.validate());
    EXPECT_TRUE(p.truncated());
  }
  EXPECT_THROW(builtin_problem("nope", 3), InputError);
  EXPECT_TRUE(builtin_problem("example2", 3).approximated());
  EXPECT_FALSE(builtin_problem("example1", 3).approximated());
  EXPECT_TRUE(builtin_problem("example1", 3).polyhedral());
  EXPECT_FALSE(builtin_problem("example3", 3).is_continuous());
}

TEST(ProblemTest, ValidateRejectsLowPsiOverride) {
  MosipProblem p = builtin_problem("example1", 5);
  p.psi_override = ConvexFunc::affine({Q(1)}, 0);  // below 3x - 1 at x = 2
  EXPECT_THROW(p.validate(), InputError);
}

TEST(ProblemTest, ValidateRejectsOversizedFeasibleSet) {
  MosipProblem p = builtin_problem("example1", 5);
  p.feasible_set->b[0] = 1;  // x <= 1, but g_0(1) = 2
  EXPECT_THROW(p.validate(), InputError);
}

TEST(ProblemTest, ValidateRejectsBadDimensions) {
  MosipProblem p = builtin_problem("example1", 3);
  p.objectives.push_back(ConvexFunc::affine(V({1, 1}), 0));
  EXPECT_THROW(p.validate(), InputError);
  MosipProblem q;
  EXPECT_THROW(q.validate(), InputError);
}

TEST(ActiveSetTest, Example1) {
  MosipProblem p = builtin_problem("example1", 20);
  EXPECT_EQ(active_set(p, V({0}), 0), std::vector<std::size_t>({0}));
  std::vector<std::size_t> expected;
  for (std::size_t t = 0; t < 20; ++t) {
    if (example1_at_zero(t) >= -Q(1, 2)) expected.push_back(t);
  }
  EXPECT_EQ(active_set(p, V({0}), Q(1, 2)), expected);
  EXPECT_EQ(expected.front(), 0u);
  EXPECT_EQ(expected[1], 3u);  // g_3(0) = -1/2
}

TEST(ActiveSetTest, Example2AllActive) {
  MosipProblem p = builtin_problem("example2", 9);
  for (long e : {0, 1, 5}) EXPECT_EQ(active_set(p, V({0, 0}), Q(e)).size(), 9u);
}

TEST(ActiveSetTest, InfeasibleNamesIndex) {
  MosipProblem p;
  p.dim = 1;
  p.objectives = {ConvexFunc::affine(V({1}), 0)};
  p.constraints = ConstraintFamily::finite(
      {ConvexFunc::affine(V({1}), -5), ConvexFunc::affine(V({1}), -1)});
  try {
    active_set(p, V({2}), 0);
    FAIL() << "expected InfeasibleCandidateError";
  } catch (const InfeasibleCandidateError& e) {
    EXPECT_EQ(e.index(), 1);
  }
  MosipProblem q = builtin_problem("example1", 3);
  try {
    require_feasible(q, V({1}));
    FAIL();
  } catch (const InfeasibleCandidateError& e) {
    EXPECT_EQ(e.index(), -1);
  }
  EXPECT_THROW(active_set(q, V({0}), -Q(1)), InputError);
}

TEST(ActiveSetTest, EpsMonotone) {
  MosipProblem p = builtin_problem("example1", 30);
  std::mt19937 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    Rational a = Rational(testing::random_int(rng, 0, 20) / 10);
    Rational b = a + Rational(testing::random_int(rng, 0, 20) / 10);
    Vec x = {Rational(testing::random_int(rng, -10, 0) / 10)};
    auto small = active_set(p, x, a), big = active_set(p, x, b);
    EXPECT_TRUE(std::includes(big.begin(), big.end(), small.begin(), small.end()));
  }
}

TEST(PsiTest, Example1) {
  MosipProblem p = builtin_problem("example1", 10);
  BoundValue s = psi(p, V({-1}));
  EXPECT_EQ(s.value, ExtReal(-1));
  EXPECT_FALSE(s.truncated);
  BoundValue i = iota(p, V({-1}));
  EXPECT_EQ(i.value, ExtReal(-4));
  EXPECT_TRUE(i.truncated);
  EXPECT_EQ(psi(p, V({2})).value, ExtReal(6));
}

TEST(PsiTest, Example2OverrideAndTruncatedValue) {
  MosipProblem p = builtin_problem("example2", 5);
  EXPECT_TRUE(psi(p, V({1, 0})).value.is_pos_inf());
  EXPECT_EQ(psi(p, V({-1, -3})).value, ExtReal(0));
  p.psi_override.reset();
  BoundValue s = psi(p, V({1, 0}));
  EXPECT_TRUE(s.truncated);
  // Rightmost polygon vertex at u = 1/7 has first coordinate (24/25) r.
  EXPECT_EQ(s.value, ExtReal(Q(24, 5)));
  EXPECT_LT(s.value, ExtReal(5));
}

TEST(PsiTest, SingleFunction) {
  MosipProblem p;
  p.dim = 2;
  p.objectives = {ConvexFunc::affine(V({1, 0}), 0)};
  ConvexFunc g = ConvexFunc::scaled_norm_inf(V({0, 0}), Q(1));
  p.constraints = ConstraintFamily::finite({g});
  Vec x = V({3, -4});
  EXPECT_EQ(psi(p, x).value, eval(g, x));
  EXPECT_EQ(iota(p, x).value, eval(g, x));
  EXPECT_FALSE(psi(p, x).truncated);
}

TEST(PsiTest, DominanceOnSamples) {
  std::mt19937 rng(3);
  for (const auto& name : builtin_families()) {
    MosipProblem p = builtin_problem(name, 12);
    MosipProblem raw = p;
    raw.psi_override.reset();
    for (int trial = 0; trial < 60; ++trial) {
      Vec x;
      for (std::size_t i = 0; i < p.dim; ++i) {
        x.push_back(Rational(testing::random_int(rng, -30, 50) / 10));
      }
      ExtReal hi = psi(p, x).value, hi_raw = psi(raw, x).value, lo = iota(p, x).value;
      for (const auto& g : p.constraints.members()) {
        ExtReal gx = eval(g, x);
        EXPECT_GE(hi, gx);
        EXPECT_GE(hi_raw, gx);
        EXPECT_LE(lo, gx);
      }
    }
  }
}

TEST(PsiTest, FeasibleSetVerticesHaveNonpositivePsi) {
  for (const auto& name : builtin_families()) {
    MosipProblem p = builtin_problem(name, 10);
    EXPECT_LE(psi(p, zeros(p.dim)).value, ExtReal(0)) << name;
  }
  EXPECT_LE(psi(builtin_problem("example3", 10), V({2})).value, ExtReal(0));
}

TEST(FSetsTest, Examples) {
  FSets f1 = f_sets(builtin_problem("example1", 4), V({0}));
  EXPECT_EQ(f1.F, Matrix({V({-2}), V({-1})}));
  EXPECT_EQ(f1.F_star.vertices, Matrix({V({-2}), V({-1})}));
  FSets f2 = f_sets(builtin_problem("example2", 4), V({0, 0}));
  EXPECT_EQ(f2.F, Matrix({V({-1, 0})}));
  EXPECT_EQ(f2.per_objective.size(), 2u);
  MosipProblem p;
  p.dim = 2;
  p.objectives = {ConvexFunc::affine(V({3, -1}), 4)};
  EXPECT_EQ(f_sets(p, V({5, 5})).F_star.vertices, Matrix({V({3, -1})}));
}

TEST(GSetsTest, Example1) {
  GSets g = g_sets(builtin_problem("example1", 10), V({0}));
  EXPECT_EQ(g.active, std::vector<std::size_t>({0}));
  EXPECT_EQ(g.G, Matrix({V({2})}));
  EXPECT_FALSE(g.is_empty);
  EXPECT_EQ(g.G_star.generators, Matrix({V({1})}));  // primitive form of 2
  EXPECT_FALSE(g.approximated);
}

TEST(GSetsTest, Example3EmptyFlag) {
  GSets g = g_sets(builtin_problem("example3", 50), V({0}));
  EXPECT_EQ(g.active.size(), 50u);
  EXPECT_TRUE(g.is_empty);
  EXPECT_TRUE(g.G.empty());
  EXPECT_TRUE(g.G_star.generators.empty());
}

TEST(GSetsTest, Example2GeneratorsInTrueCone) {
  GSets g = g_sets(builtin_problem("example2", 6), V({0, 0}));
  EXPECT_TRUE(g.approximated);
  EXPECT_FALSE(g.is_empty);
  for (const auto& v : g.G) {
    bool zero = v[0] == 0 && v[1] == 0;
    EXPECT_TRUE(zero || (v[0] >= 0 && v[1] > 0)) << to_string(v);
  }
  for (const auto& v : g.G_star.generators) EXPECT_TRUE(v[0] >= 0 && v[1] > 0);
  EXPECT_EQ(g.labelled.size(), 6u * 8u);
  EXPECT_EQ(g.closure.generators, Matrix({V({0, 1}), V({1, 0})}));
}

TEST(SublevelTest, Example1) {
  MosipProblem p = builtin_problem("example1", 4);
  for (std::size_t i = 0; i < 2; ++i) {
    HPolyhedron q = sublevel_Q(p, V({0}), i);
    EXPECT_TRUE(q.contains(V({0})));
    EXPECT_FALSE(q.contains(Vec({Q(1, 2)})));
    EXPECT_FALSE(q.contains(Vec({Q(-1, 2)})));
  }
  EXPECT_THROW(sublevel_Q(p, V({0}), 2), InputError);
}

TEST(SublevelTest, Example2) {
  MosipProblem p = builtin_problem("example2", 4);
  HPolyhedron q = sublevel_Q(p, V({0, 0}), 0);
  EXPECT_TRUE(q.contains(V({0, -3})));
  EXPECT_FALSE(q.contains(V({-1, 0})));
  EXPECT_FALSE(q.contains(V({0, 1})));
  HCone c = tangent_cone(q, V({0, 0}));
  EXPECT_TRUE(c.contains(V({0, -1})));
  EXPECT_FALSE(c.contains(V({-1, -1})));
}

TEST(SublevelTest, ScalarIsFeasibleSet) {
  MosipProblem p = builtin_problem("example3", 4);
  HPolyhedron q = sublevel_Q(p, V({0}), 0);
  EXPECT_EQ(q.a, p.feasible_set->a);
  EXPECT_EQ(q.b, p.feasible_set->b);
  MosipProblem bad = builtin_problem("example1", 4);
  bad.objectives[1] = ConvexFunc::scaled_norm2(V({0}), Q(1));
  EXPECT_THROW(sublevel_Q(bad, V({0}), 0), UnsupportedError);
}

TEST(TangentNormalTest, Examples) {
  TangentNormal t1 = tangent_normal(builtin_problem("example1", 3), V({0}));
  EXPECT_TRUE(t1.C.contains(V({-1})));
  EXPECT_FALSE(t1.C.contains(V({1})));
  EXPECT_EQ(t1.N.generators, Matrix({V({1})}));
  TangentNormal t2 = tangent_normal(builtin_problem("example2", 3), V({0, 0}));
  EXPECT_EQ(t2.N.generators, Matrix({V({0, 1}), V({1, 0})}));
  EXPECT_TRUE(t2.C.contains(V({-2, -5})));
  EXPECT_FALSE(t2.C.contains(V({1, -5})));
  TangentNormal t3 = tangent_normal(builtin_problem("example3", 3), V({1}));
  EXPECT_TRUE(t3.C.normals.empty());
  EXPECT_TRUE(t3.N.generators.empty());
  MosipProblem nos = builtin_problem("example1", 3);
  nos.feasible_set.reset();
  EXPECT_THROW(tangent_normal(nos, V({0})), PreconditionError);
}

// Random finite affine systems with S given by the constraint rows plus a
// box; the active gradients must sit in the normal cone of S.
TEST(InclusionPropertyTest, GStarInsideNormalCone) {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 120; ++trial) {
    const std::size_t n = 1 + trial % 3;
    Vec x0 = random_vec(rng, n, -2, 2);
    std::vector<ConvexFunc> gs;
    HPolyhedron s{n, {}, {}};
    for (int t = 0; t < 4; ++t) {
      Vec a = random_vec(rng, n, -3, 3);
      Rational slack = testing::random_int(rng, 0, 2);
      Rational b = dot(a, x0) + slack;
      gs.push_back(ConvexFunc::affine(a, -b));
      s.add_row(a, b);
    }
    for (std::size_t i = 0; i < n; ++i) {
      s.add_row(unit(n, i), 3);
      s.add_row(unit(n, i, -1), 3);
    }
    MosipProblem p;
    p.dim = n;
    p.objectives = {ConvexFunc::affine(zeros(n), 0)};
    p.constraints = ConstraintFamily::finite(gs);
    p.feasible_set = s;
    ASSERT_NO_THROW(p.validate());
    CandidatePoint c(p, x0);
    ASSERT_TRUE(c.tn());
    for (const auto& gen : c.g().G_star.generators) {
      EXPECT_TRUE(testing::cone_member_bruteforce(c.tn()->N.generators, gen));
    }
    EXPECT_TRUE(contains(c.g().G_star, c.tn()->N).holds);
  }
}

TEST(CandidateTest, PsiSubdifferential) {
  MosipProblem p1 = builtin_problem("example1", 6);
  CandidatePoint c1(p1, V({0}));
  ASSERT_TRUE(c1.psi_subdiff());
  EXPECT_EQ(c1.psi_subdiff()->base.vertices, Matrix({V({1}), V({3})}));
  EXPECT_EQ(c1.active_eps(0), std::vector<std::size_t>({0}));

  MosipProblem p2 = builtin_problem("example2", 6);
  CandidatePoint c2(p2, V({0, 0}));
  ASSERT_TRUE(c2.psi_subdiff());
  EXPECT_EQ(c2.psi_subdiff()->base.vertices, Matrix({V({0, 0})}));
  EXPECT_EQ(canonical(c2.psi_subdiff()->recession).generators, Matrix({V({0, 1}), V({1, 0})}));

  MosipProblem p3 = builtin_problem("example3", 50);
  CandidatePoint c3(p3, V({0}));
  ASSERT_TRUE(c3.psi_subdiff());
  EXPECT_TRUE(c3.psi_subdiff()->empty());
  EXPECT_NE(c3.psi_subdiff_note().find("truncated"), std::string::npos);
  EXPECT_THROW(CandidatePoint(p3, V({-1})), InfeasibleCandidateError);
}

TEST(CandidateTest, MaxRuleWithoutOverride) {
  MosipProblem p;
  p.dim = 1;
  p.objectives = {ConvexFunc::affine(V({1}), 0)};
  p.constraints = ConstraintFamily::finite({ConvexFunc::affine(V({1}), 0),
                                            ConvexFunc::affine(V({-2}), 0),
                                            ConvexFunc::affine(V({5}), -1)});
  CandidatePoint c(p, V({0}));
  ASSERT_TRUE(c.psi_subdiff());
  EXPECT_EQ(c.psi_subdiff()->base.vertices, Matrix({V({-2}), V({1})}));
  EXPECT_EQ(c.g().active, std::vector<std::size_t>({0, 1}));
  EXPECT_FALSE(c.tn());
}

}  // namespace
}  // namespace mosip
