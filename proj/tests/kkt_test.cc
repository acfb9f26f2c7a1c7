#include "mosip/kkt.h"

#include <gtest/gtest.h>

#include <random>

#include "mosip/errors.h"
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

bool has_claim(const std::vector<EfficiencyClaim>& cs, Level l, bool holds) {
  for (const auto& c : cs) {
    if (c.level == l && c.holds == holds) return true;
  }
  return false;
}

// Objectives with the given gradients, no constraints.
MosipProblem gradients_only(const Matrix& grads) {
  MosipProblem p;
  p.dim = grads[0].size();
  for (const auto& g : grads) p.objectives.push_back(ConvexFunc::affine(g, 0));
  return p;
}

TEST(Example1Kkt, WeakCertificate) {
  MosipProblem p = builtin_problem("example1", 20);
  CandidatePoint c(p, V({0}));
  WeakKkt w = weak_kkt(c);
  ASSERT_TRUE(w.certificate);
  EXPECT_FALSE(w.separator);
  EXPECT_TRUE(is_zero(kkt_residual(*w.certificate, 1)));
  EXPECT_TRUE(verify_certificate(c, *w.certificate));
  // Only g_0 = 2x is active, so every multiplier sits on t = 0 with zeta = 2.
  ASSERT_EQ(w.certificate->constraints.size(), 1u);
  EXPECT_EQ(w.certificate->constraints[0].t, 0u);
  EXPECT_EQ(w.certificate->constraints[0].zeta, V({2}));
}

TEST(Example1Kkt, HandCertificateVerifies) {
  MosipProblem p = builtin_problem("example1", 20);
  CandidatePoint c(p, V({0}));
  KktCertificate k;
  k.target = V({0});
  k.objectives = {{Q(1), V({-2}), V({1})}, {Q(0), V({-1}), V({1})}};
  k.constraints = {{0, Q(1), V({2})}};
  EXPECT_TRUE(verify_certificate(c, k));
  k.constraints[0].beta = Q(1, 2);
  EXPECT_FALSE(verify_certificate(c, k));
  k.constraints[0].beta = 1;
  k.constraints[0].t = 1;  // inactive index
  EXPECT_FALSE(verify_certificate(c, k));
}

TEST(Example1Kkt, StrongCertificate) {
  MosipProblem p = builtin_problem("example1", 20);
  CandidatePoint c(p, V({0}));
  StrongKkt s = strong_kkt(c);
  ASSERT_TRUE(s.certificate);
  EXPECT_TRUE(s.weak_holds);
  EXPECT_GT(s.tau, 0);
  for (const auto& o : s.certificate->objectives) EXPECT_GT(o.alpha, 0);
  EXPECT_TRUE(verify_certificate(c, *s.certificate));
  // ri F* + G* = (-2, inf) contains 0.
  EXPECT_TRUE(s.ri_holds);
  ASSERT_TRUE(s.ri_point);
  EXPECT_GT((*s.ri_point)[0], 1);
  EXPECT_LT((*s.ri_point)[0], 2);

  // The hand instance alpha = (1/2, 1/2), beta = 3/4.
  KktCertificate k;
  k.kind = KktCertificate::Kind::kStrong;
  k.target = V({0});
  k.objectives = {{Q(1, 2), V({-2}), V({1})}, {Q(1, 2), V({-1}), V({1})}};
  k.constraints = {{0, Q(3, 4), V({2})}};
  EXPECT_TRUE(verify_certificate(c, k));
  k.objectives[0].alpha = 1;
  k.objectives[1].alpha = 0;
  k.constraints[0].beta = 1;
  EXPECT_FALSE(verify_certificate(c, k));  // zero alpha is not strong
}

TEST(Example1Kkt, PerturbedRadiusTwo) {
  MosipProblem p = builtin_problem("example1", 20);
  CandidatePoint c(p, V({0}));
  PerturbedKkt r = perturbed_kkt(c);
  ASSERT_TRUE(r.holds);
  EXPECT_EQ(r.nu, 2);
  EXPECT_TRUE(r.nu_exact);
  ASSERT_EQ(r.axis.size(), 2u);
  EXPECT_EQ(r.axis[0].target, V({2}));
  EXPECT_EQ(r.axis[1].target, V({-2}));
  EXPECT_TRUE(verify_perturbed(c, r));
  PerturbedKkt bad = r;
  bad.nu = Q(201, 100);
  for (auto& k : bad.axis) k.target = scaled(k.target, Q(201, 200));
  EXPECT_FALSE(verify_perturbed(c, bad));
}

TEST(Example2Kkt, WeakFailsWithSeparator) {
  MosipProblem p = builtin_problem("example2", 6);
  CandidatePoint c(p, V({0, 0}));
  WeakKkt w = weak_kkt(c);
  EXPECT_FALSE(w.certificate);
  ASSERT_TRUE(w.separator);
  EXPECT_TRUE(verify_separator(c, *w.separator));
  EXPECT_TRUE(w.provenance.approximated);
  EXPECT_TRUE(w.provenance.truncated);
}

TEST(Example2Kkt, StrongAndPerturbedFail) {
  MosipProblem p = builtin_problem("example2", 6);
  CandidatePoint c(p, V({0, 0}));
  StrongKkt s = strong_kkt(c);
  EXPECT_FALSE(s.certificate);
  EXPECT_FALSE(s.weak_holds);
  EXPECT_FALSE(s.ri_holds);
  PerturbedKkt r = perturbed_kkt(c);
  EXPECT_FALSE(r.holds);
  ASSERT_TRUE(r.escape);
  EXPECT_TRUE(verify_perturbed(c, r));
  EXPECT_FALSE(r.provenance.exact());
}

TEST(KktTest, UnconstrainedStationaryPoint) {
  MosipProblem p;
  p.dim = 2;
  // ||x||_inf as a max of four affine pieces, minimized at 0.
  p.objectives.push_back(ConvexFunc::max_affine(
      {{V({1, 0}), 0}, {V({-1, 0}), 0}, {V({0, 1}), 0}, {V({0, -1}), 0}}));
  CandidatePoint c(p, V({0, 0}));
  WeakKkt w = weak_kkt(c);
  ASSERT_TRUE(w.certificate);
  EXPECT_TRUE(w.certificate->constraints.empty());
  EXPECT_TRUE(is_zero(w.certificate->objectives[0].xi));
  // A single objective makes strong and weak coincide.
  StrongKkt s = strong_kkt(c);
  ASSERT_TRUE(s.certificate);
  EXPECT_EQ(s.certificate->objectives[0].alpha, 1);
}

TEST(KktTest, SimplexInradiusByHand) {
  // conv{(-2,-1), (2,-1), (-2,2)}: facets x >= -2 (distance 2), y >= -1
  // (distance 1) and 3x + 4y <= 2 (distance 2/5).
  MosipProblem p = gradients_only({V({-2, -1}), V({2, -1}), V({-2, 2})});
  CandidatePoint c(p, V({0, 0}));
  PerturbedKkt r = perturbed_kkt(c);
  ASSERT_TRUE(r.holds);
  EXPECT_EQ(r.nu, Q(2, 5));
  EXPECT_TRUE(r.nu_exact);
  EXPECT_TRUE(verify_perturbed(c, r));
  ASSERT_EQ(r.axis.size(), 4u);
}

TEST(KktTest, BoundaryZeroIsNotPerturbed) {
  MosipProblem p = gradients_only({V({0, 0}), V({1, 0}), V({0, 1})});
  CandidatePoint c(p, V({0, 0}));
  EXPECT_TRUE(weak_kkt(c).certificate);
  PerturbedKkt r = perturbed_kkt(c);
  EXPECT_FALSE(r.holds);
  EXPECT_TRUE(r.provenance.exact());
}

TEST(KktTest, EpsReportForDifferentiableConstraints) {
  MosipProblem p;
  p.dim = 1;
  p.objectives.push_back(ConvexFunc::affine(V({-1}), 0));
  p.constraints = ConstraintFamily::finite(
      {ConvexFunc::affine(V({1}), 0), ConvexFunc::affine(V({-1}), Q(-1, 4))});
  p.differentiable_constraints = true;
  CandidatePoint c(p, V({0}));
  PerturbedKkt r = perturbed_kkt(c, {Q(1), Q(1, 8)});
  ASSERT_EQ(r.eps_report.size(), 2u);
  // eps = 1 sees both gradients: F* + cone{1, -1} is the whole line.
  EXPECT_TRUE(r.eps_report[0].inside);
  EXPECT_TRUE(r.eps_report[1].inside);
  EXPECT_TRUE(r.holds);
}

TEST(ClaimsTest, Example1AllPositive) {
  MosipProblem p = builtin_problem("example1", 20);
  CandidatePoint c(p, V({0}));
  ClaimInputs in;
  in.weak = weak_kkt(c);
  in.strong = strong_kkt(c);
  in.perturbed = perturbed_kkt(c);
  in.quals = check_all(c);
  auto claims = assemble_claims(in);
  EXPECT_TRUE(has_claim(claims, Level::kWeakEfficient, true));
  EXPECT_TRUE(has_claim(claims, Level::kEfficient, true));
  EXPECT_TRUE(has_claim(claims, Level::kIsolatedEfficient, true));
  for (const auto& cl : claims) {
    EXPECT_TRUE(cl.holds);
    EXPECT_EQ(cl.direction, EfficiencyClaim::Direction::kSufficient);
    EXPECT_FALSE(cl.rule.empty());
  }
  EXPECT_TRUE(claims_consistent(claims));
}

TEST(ClaimsTest, Example2OnlyGapBasedAndNoNegativeIsolated) {
  MosipProblem p = builtin_problem("example2", 6);
  CandidatePoint c(p, V({0, 0}));
  ClaimInputs in;
  in.weak = weak_kkt(c);
  in.strong = strong_kkt(c);
  in.perturbed = perturbed_kkt(c);
  in.quals = check_all(c);
  in.continuous = p.is_continuous();
  auto kkt_only = assemble_claims(in);
  EXPECT_TRUE(kkt_only.empty());
  in.gap_zero_weak = true;
  auto claims = assemble_claims(in);
  ASSERT_EQ(claims.size(), 1u);
  EXPECT_EQ(claims[0].level, Level::kWeakEfficient);
  EXPECT_TRUE(claims[0].holds);
  EXPECT_FALSE(has_claim(claims, Level::kIsolatedEfficient, false));
}

TEST(ClaimsTest, EmptyInputsGiveNoClaims) { EXPECT_TRUE(assemble_claims({}).empty()); }

TEST(ClaimsTest, LfmcqLicensesNegativeWeakClaim) {
  // minimize x subject to x - 1 <= 0, at x = 1: 0 is not in {1} + R_+.
  MosipProblem p;
  p.dim = 1;
  p.objectives.push_back(ConvexFunc::affine(V({1}), 0));
  p.constraints = ConstraintFamily::finite({ConvexFunc::affine(V({1}), Q(-1))});
  HPolyhedron s{1, {}, {}};
  s.add_row(V({1}), 1);
  p.feasible_set = s;
  CandidatePoint c(p, V({1}));
  ClaimInputs in;
  in.weak = weak_kkt(c);
  in.quals = check_all(c);
  ASSERT_FALSE(in.weak->certificate);
  ASSERT_TRUE(in.weak->provenance.exact());
  auto claims = assemble_claims(in);
  ASSERT_TRUE(has_claim(claims, Level::kWeakEfficient, false));
  for (const auto& cl : claims) {
    EXPECT_FALSE(cl.holds);
    EXPECT_FALSE(cl.relied_on.empty());
  }
  // And indeed x = 0 strictly dominates.
  EXPECT_TRUE(testing::feasible_exact(p, V({0})));
}

TEST(ClaimsTest, ConsistencyChecker) {
  EfficiencyClaim iso{Level::kIsolatedEfficient, true, {}, "r", {}, ""};
  EfficiencyClaim not_weak{Level::kWeakEfficient, false, {}, "r", {}, ""};
  EfficiencyClaim not_iso{Level::kIsolatedEfficient, false, {}, "r", {}, ""};
  EfficiencyClaim weak{Level::kWeakEfficient, true, {}, "r", {}, ""};
  EXPECT_FALSE(claims_consistent({iso, not_weak}));
  EXPECT_TRUE(claims_consistent({weak, not_iso}));
  EXPECT_FALSE(claims_consistent({weak, not_weak}));
}

// --- randomized properties --------------------------------------------------

TEST(KktPropertyTest, CertificatesSeparatorsAndSoundness) {
  std::mt19937 rng(4242);
  int weak_count = 0, strong_count = 0, perturbed_count = 0, fail_count = 0;
  for (int it = 0; it < 300; ++it) {
    auto inst = testing::random_instance(rng);
    const MosipProblem& p = inst.problem;
    CandidatePoint c(p, inst.x);
    WeakKkt w = weak_kkt(c);
    StrongKkt s = strong_kkt(c);
    PerturbedKkt r = perturbed_kkt(c);
    // Exactly one of certificate and separator.
    ASSERT_NE(w.certificate.has_value(), w.separator.has_value());
    if (w.separator) {
      ++fail_count;
      EXPECT_TRUE(verify_separator(c, *w.separator));
      EXPECT_FALSE(s.certificate);
      EXPECT_FALSE(r.holds);
    }
    EXPECT_TRUE(verify_perturbed(c, r));

    auto fx = testing::objective_values(p, inst.x);
    auto grid = testing::grid_around(inst.x, Q(1, 2), p.dim == 3 ? 3 : 4);
    if (w.certificate) {
      ++weak_count;
      EXPECT_TRUE(verify_certificate(c, *w.certificate));
    }
    if (s.certificate) {
      ++strong_count;
      KktCertificate as_weak = *s.certificate;
      as_weak.kind = KktCertificate::Kind::kWeak;
      EXPECT_TRUE(verify_certificate(c, as_weak));
    }
    if (r.holds) ++perturbed_count;
    for (const auto& y : grid) {
      if (!testing::feasible_exact(p, y)) continue;
      auto fy = testing::objective_values(p, y);
      if (w.certificate) ASSERT_FALSE(testing::strictly_dominates(fy, fx)) << it;
      if (s.certificate) ASSERT_FALSE(testing::dominates(fy, fx)) << it;
      if (r.holds) {
        // max_i (f_i(y) - f_i(x)) >= nu ||y - x||, compared in squares.
        Rational m = (fy[0] - fx[0]).rational();
        for (std::size_t i = 1; i < fy.size(); ++i) m = std::max(m, (fy[i] - fx[i]).rational());
        Vec d = sub(y, inst.x);
        ASSERT_GE(m, 0) << it;
        ASSERT_GE(m * m, r.nu * r.nu * squared_norm(d)) << it;
      }
    }
  }
  EXPECT_GT(weak_count, 30);
  EXPECT_GT(strong_count, 10);
  EXPECT_GT(perturbed_count, 5);
  EXPECT_GT(fail_count, 30);
}

TEST(KktPropertyTest, ClaimsAgreeWithGridDominators) {
  // Grid dominators enter as counterexample claims; every theorem-based
  // positive claim must stay consistent with them.
  std::mt19937 rng(99);
  int negative = 0, counterexamples = 0;
  for (int it = 0; it < 200; ++it) {
    auto inst = testing::random_instance(rng);
    const MosipProblem& p = inst.problem;
    CandidatePoint c(p, inst.x);
    ClaimInputs in;
    in.weak = weak_kkt(c);
    in.strong = strong_kkt(c);
    in.perturbed = perturbed_kkt(c);
    in.quals = check_all(c);
    in.continuous = p.is_continuous();
    auto fx = testing::objective_values(p, inst.x);
    for (const auto& y : testing::grid_around(inst.x, Q(1, 2), 2)) {
      if (!testing::feasible_exact(p, y)) continue;
      auto fy = testing::objective_values(p, y);
      if (testing::strictly_dominates(fy, fx) && !in.strict_dominator) in.strict_dominator = y;
      if (testing::dominates(fy, fx) && !in.dominator) in.dominator = y;
    }
    auto claims = assemble_claims(in);
    EXPECT_TRUE(claims_consistent(claims)) << it;
    for (const auto& cl : claims) {
      if (cl.holds) continue;
      if (cl.direction == EfficiencyClaim::Direction::kCounterexample) {
        ++counterexamples;
      } else {
        ++negative;
      }
    }
  }
  EXPECT_GT(negative, 10);
  EXPECT_GT(counterexamples, 10);
}

}  // namespace
}  // namespace mosip
