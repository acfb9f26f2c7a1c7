#include "mosip/funcs.h"

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

ConvexFunc psi_example() {
  return ConvexFunc::max_affine({{V({1}), Q(0)}, {V({3}), Q(0)}});
}

TEST(ExtRealTest, Ordering) {
  ExtReal r = ExtReal::root(-1, Q(2));
  EXPECT_EQ(r.kind(), ExtReal::Kind::kRoot);
  EXPECT_LT(r, ExtReal(0));
  EXPECT_LT(ExtReal(Q(-3, 2)), r);
  EXPECT_LT(r, ExtReal(Q(-7, 5)));
  EXPECT_LT(ExtReal::neg_inf(), r);
  EXPECT_LT(r, ExtReal::pos_inf());
  EXPECT_EQ(ExtReal::root(1, Q(9, 4)), ExtReal(Q(3, 2)));
  EXPECT_EQ(ExtReal::root(1, Q(2)) + ExtReal::root(-1, Q(2)), ExtReal(0));
  EXPECT_EQ(ExtReal::root(1, Q(2)).scaled(Q(-3)), ExtReal::root(-1, Q(18)));
}

TEST(ExtRealTest, InfinityArithmetic) {
  EXPECT_TRUE((ExtReal::pos_inf() + ExtReal(5)).is_pos_inf());
  EXPECT_THROW(ExtReal::pos_inf() + ExtReal::neg_inf(), InputError);
  EXPECT_THROW(ExtReal::root(1, Q(2)) + ExtReal(1), UnsupportedError);
  EXPECT_EQ(ExtReal::root(1, Q(3)).to_string(), "sqrt(3)");
}

TEST(EvalTest, NegSqrtParabola) {
  ConvexFunc g = ConvexFunc::neg_sqrt_parabola(Q(1));
  EXPECT_EQ(eval(g, V({1})), ExtReal(-1));
  EXPECT_EQ(eval(g, V({0})), ExtReal(0));
  EXPECT_TRUE(eval(g, V({3})).is_pos_inf());
  EXPECT_TRUE(eval(g, V({-1})).is_pos_inf());
  EXPECT_EQ(eval(g, Vec({Q(1, 2)})), ExtReal::root(-1, Q(3, 4)));
}

TEST(EvalTest, MaxAffineExample) {
  EXPECT_EQ(eval(psi_example(), V({-1})), ExtReal(-1));
  EXPECT_EQ(eval(psi_example(), V({2})), ExtReal(6));
}

TEST(EvalTest, DomainAndNorms) {
  HPolyhedron neg{2, {}, {}};
  neg.add_row(V({1, 0}), 0);
  neg.add_row(V({0, 1}), 0);
  ConvexFunc ind = ConvexFunc::affine(V({0, 0}), 0).with_domain(neg);
  EXPECT_EQ(eval(ind, V({-1, -2})), ExtReal(0));
  EXPECT_TRUE(eval(ind, V({1, 0})).is_pos_inf());
  ConvexFunc ninf = ConvexFunc::scaled_norm_inf(V({1, 1}), Q(2));
  EXPECT_EQ(eval(ninf, V({4, 0})), ExtReal(6));
  ConvexFunc n2 = ConvexFunc::scaled_norm2(V({0, 0}), Q(1));
  EXPECT_EQ(eval(n2, V({3, 4})), ExtReal(5));
  EXPECT_EQ(eval(n2, V({1, 1})), ExtReal::root(1, Q(2)));
}

TEST(SubdiffTest, MaxAffineKink) {
  Subdifferential s = subdiff(psi_example(), V({0}));
  EXPECT_EQ(s.base.vertices, Matrix({V({1}), V({3})}));
  EXPECT_TRUE(s.bounded());
  EXPECT_FALSE(s.approximated);
}

TEST(SubdiffTest, NegSqrtBoundaryIsEmpty) {
  for (long k = 0; k < 5; ++k) {
    ConvexFunc g = ConvexFunc::neg_sqrt_parabola(1 + Q(k, 4));
    EXPECT_TRUE(subdiff(g, V({0})).empty());
  }
  ConvexFunc g = ConvexFunc::neg_sqrt_parabola(Q(1));
  EXPECT_TRUE(subdiff(g, V({2})).empty());
  EXPECT_EQ(subdiff(g, V({1})).base.vertices, Matrix({V({0})}));
  // At x = 1/5, 2x - x^2 = 9/25 and the slope is -(4/5)/(3/5).
  EXPECT_EQ(subdiff(g, Vec({Q(1, 5)})).base.vertices, Matrix({Vec({Q(-4, 3)})}));
  EXPECT_THROW(subdiff(g, Vec({Q(1, 2)})), UnsupportedError);
  EXPECT_THROW(subdiff(g, V({3})), PreconditionError);
}

TEST(SubdiffTest, SupportPolygonAtOrigin) {
  Matrix poly = {V({0, 0}), V({1, 1}), V({0, 2})};
  FGCone exact{2, {V({1, 0}), V({0, 1})}};
  ConvexFunc g = ConvexFunc::support_polygon(poly, exact);
  Subdifferential s = subdiff(g, V({0, 0}));
  EXPECT_EQ(s.base.vertices, canonical(Polytope{2, poly}).vertices);
  EXPECT_TRUE(s.approximated);
  ASSERT_TRUE(s.exact_cone);
  Subdifferential away = subdiff(g, V({1, 0}));
  EXPECT_TRUE(away.approximated);
  EXPECT_FALSE(away.exact_cone);
  EXPECT_EQ(away.base.vertices, Matrix({V({1, 1})}));
}

TEST(SubdiffTest, DomainNormalConeAsRecession) {
  HPolyhedron neg{1, {}, {}};
  neg.add_row(V({1}), 0);
  ConvexFunc ind = ConvexFunc::affine(V({0}), 0).with_domain(neg);
  Subdifferential s = subdiff(ind, V({0}));
  EXPECT_EQ(s.base.vertices, Matrix({V({0})}));
  EXPECT_EQ(s.recession.generators, Matrix({V({1})}));
  EXPECT_TRUE(subdiff(ind, V({-1})).bounded());
}

TEST(DirDerivativeTest, Examples) {
  EXPECT_EQ(dir_derivative(psi_example(), V({0}), V({-1})), ExtReal(-1));
  EXPECT_EQ(dir_derivative(psi_example(), V({0}), V({1})), ExtReal(3));
  ConvexFunc g = ConvexFunc::neg_sqrt_parabola(Q(1));
  EXPECT_TRUE(dir_derivative(g, V({0}), V({1})).is_neg_inf());
  EXPECT_TRUE(dir_derivative(g, V({0}), V({-1})).is_pos_inf());
  EXPECT_EQ(dir_derivative(g, V({0}), V({0})), ExtReal(0));
  EXPECT_TRUE(dir_derivative(g, V({2}), V({-1})).is_neg_inf());
  EXPECT_TRUE(dir_derivative(g, V({2}), V({1})).is_pos_inf());
  // Interior slope -(t - x)/sqrt(2tx - x^2) at x = 1/2 is -(1/2)/sqrt(3/4).
  EXPECT_EQ(dir_derivative(g, Vec({Q(1, 2)}), V({1})), ExtReal::root(-1, Q(1, 3)));
}

TEST(TiltTest, ShiftsGradients) {
  ConvexFunc t = tilt(psi_example(), V({2}));
  EXPECT_EQ(eval(t, V({1})), ExtReal(1));
  EXPECT_EQ(subdiff(t, V({0})).base.vertices, Matrix({V({-1}), V({1})}));
  ConvexFunc a = tilt(ConvexFunc::affine(V({-2}), 0), V({1}));
  EXPECT_EQ(a.kind(), ConvexFunc::Kind::kAffine);
  EXPECT_EQ(a.pieces().front().a, V({-3}));
  EXPECT_THROW(tilt(ConvexFunc::neg_sqrt_parabola(Q(1)), V({1})), UnsupportedError);
}

// Random polyhedral functions for the calculus properties.
ConvexFunc random_polyhedral(std::mt19937& rng, std::size_t n, int kind) {
  switch (kind % 3) {
    case 0: {
      std::vector<AffinePiece> pieces;
      for (int k = 0; k < 1 + kind % 4; ++k) pieces.push_back({random_vec(rng, n, -3, 3), testing::random_int(rng, -2, 2)});
      return ConvexFunc::max_affine(std::move(pieces));
    }
    case 1:
      return ConvexFunc::scaled_norm_inf(random_vec(rng, n, -1, 1), testing::random_int(rng, 0, 3));
    default: {
      Matrix verts;
      for (int k = 0; k < 3; ++k) verts.push_back(random_vec(rng, n, -2, 2));
      return ConvexFunc::support_polygon(std::move(verts), std::nullopt);
    }
  }
}

TEST(CalculusPropertyTest, SubgradientInequalityAndMaxFormula) {
  std::mt19937 rng(31);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + trial % 3;
    ConvexFunc f = random_polyhedral(rng, n, trial);
    // Small integer points hit kinks often.
    Vec x = random_vec(rng, n, -1, 1);
    Vec y = random_vec(rng, n, -3, 3);
    Subdifferential s = subdiff(f, x);
    ASSERT_FALSE(s.empty());
    ExtReal fx = eval(f, x), fy = eval(f, y);
    for (const auto& xi : s.base.vertices) {
      EXPECT_GE(fy, fx + ExtReal(dot(xi, sub(y, x))));
    }
    Vec d = random_vec(rng, n, -2, 2);
    Rational best = dot(s.base.vertices.front(), d);
    for (const auto& xi : s.base.vertices) best = std::max(best, Rational(dot(xi, d)));
    EXPECT_EQ(dir_derivative(f, x, d), ExtReal(best));
    // Midpoint convexity.
    Vec mid = scaled(add(x, y), Q(1, 2));
    EXPECT_LE(eval(f, mid).scaled(2), fx + fy);
  }
}

TEST(CalculusPropertyTest, NegSqrtSubgradientInequality) {
  // Points x with 2x - x^2 a perfect square for t = 1.
  ConvexFunc g = ConvexFunc::neg_sqrt_parabola(Q(1));
  const Vec xs = {Q(1, 5), Q(2, 5), Q(1), Q(8, 5), Q(9, 5)};
  for (const auto& x : xs) {
    Subdifferential s = subdiff(g, {x});
    ASSERT_EQ(s.base.vertices.size(), 1u);
    for (long k = 0; k <= 20; ++k) {
      Vec y = {Q(k, 10)};
      ExtReal lhs = eval(g, y);
      // lhs >= g(x) + xi (y - x) with g(x) rational here.
      Rational rhs = eval(g, {x}).rational() + s.base.vertices[0][0] * (y[0] - x);
      EXPECT_GE(lhs, ExtReal(rhs)) << "x=" << x << " y=" << y[0];
    }
  }
}

}  // namespace
}  // namespace mosip
