#include "vipsolve/baselines.h"

#include <atomic>
#include <cmath>
#include <memory>

#include <gtest/gtest.h>

#include "test_util.h"
#include "vipsolve/operator_probes.h"
#include "vipsolve/problems.h"
#include "vipsolve/projection.h"

namespace vipsolve {
namespace {

Vector Scalar(double v) { return Vector::Constant(1, v); }

ProblemInstance IdentityOn(FeasibleSet set) {
  ProblemInstance p;
  p.dim = 1;
  p.op = {[](const Vector& x) { return x; }, 1.0, "identity"};
  p.set = std::move(set);
  return p;
}

ProblemInstance ZeroOperator(Index dim) {
  ProblemInstance p;
  p.dim = dim;
  p.op = {[](const Vector& x) { return Vector::Zero(x.size()); }, 1.0, "zero"};
  p.set = L2Ball(1.0);
  return p;
}

// Scalar oracles for B(x) = x, x = 1, lambda = 0.5 on R.
TEST(BaselineStepTest, HandExamplesOnWholeLine) {
  const auto p = IdentityOn(WholeSpace());
  const double x = 1.0, lam = 0.5;
  const double y = x - lam * x;

  const auto egm = EgmStep(Scalar(x), p, lam);
  EXPECT_DOUBLE_EQ(egm.y[0], y);
  EXPECT_DOUBLE_EQ(egm.x_next[0], x - lam * y);  // 0.75

  const auto popov = PopovStep(Scalar(x), p, lam);
  EXPECT_DOUBLE_EQ(popov.x_next[0], y - lam * x);  // 0

  const auto segm = SegmStep(Scalar(x), p, lam);
  EXPECT_DOUBLE_EQ(segm.x_next[0], x - lam * y);  // whole-space half-space

  const auto yang = YangStep(Scalar(x), p, lam, 0.5);
  EXPECT_DOUBLE_EQ(yang.x_next[0], 0.75);
  // mu (|x-y|^2 + |x+-y|^2) / (2 (B x - B y)(x+ - y)) = 0.625, clamped to 0.5.
  const double ratio = 0.5 * (0.25 + 0.0625) / (2 * 0.5 * 0.25);
  EXPECT_DOUBLE_EQ(ratio, 0.625);
  EXPECT_DOUBLE_EQ(yang.next_step, std::min(ratio, lam));
}

TEST(BaselineStepTest, YangShrinksStepWhenCurvatureIsLarge) {
  // B(x) = 4x, x = 1, alpha = 0.2: y = 0.2, x+ = 1 - 0.2*0.8 = 0.84.
  ProblemInstance p = IdentityOn(WholeSpace());
  p.op = {[](const Vector& x) -> Vector { return 4.0 * x; }, 4.0, "4x"};
  const auto step = YangStep(Scalar(1.0), p, 0.2, 0.5);
  const double y = 0.2, xn = 0.84;
  const double oracle =
      0.5 * ((1 - y) * (1 - y) + (xn - y) * (xn - y)) / (2 * (4 - 4 * y) * (xn - y));
  EXPECT_NEAR(step.x_next[0], xn, 1e-15);
  EXPECT_NEAR(step.next_step, std::min(oracle, 0.2), 1e-15);
  EXPECT_LT(step.next_step, 0.2);
}

TEST(BaselineStepTest, ZeroOperatorFixesFeasiblePoints) {
  const auto p = ZeroOperator(3);
  const Vector x = Vector::Constant(3, 0.2);
  EXPECT_EQ(EgmStep(x, p, 0.1).x_next, x);
  EXPECT_EQ(PopovStep(x, p, 0.1).x_next, x);
  EXPECT_EQ(SegmStep(x, p, 0.1).x_next, x);
  const auto yang = YangStep(x, p, 0.1, 0.5);
  EXPECT_EQ(yang.x_next, x);
  EXPECT_EQ(yang.next_step, 0.1);
}

TEST(BaselineStepTest, EvaluationCounts) {
  auto counter = std::make_shared<std::atomic<std::int64_t>>(0);
  auto p = BallProblem(4).Instance();
  p.op = CountEvaluations(p.op, counter);
  const Vector x = Vector::Constant(4, 1.0);
  auto count = [&](auto&& fn) {
    counter->store(0);
    fn();
    return counter->load();
  };
  EXPECT_EQ(count([&] { EgmStep(x, p, 0.05); }), 2);
  EXPECT_EQ(count([&] { PopovStep(x, p, 0.02); }), 1);
  EXPECT_EQ(count([&] { SegmStep(x, p, 0.05); }), 2);
  EXPECT_EQ(count([&] { YangStep(x, p, 0.05, 0.5); }), 2);
}

TEST(BaselineStepTest, SegmMatchesEgmWhenProjectionIsInactive) {
  // Inside the radius-5 ball with a short step, P_C is the identity.
  const auto p = BallProblem(3).Instance();
  SplitMix64 rng(8);
  for (int k = 0; k < 100; ++k) {
    const Vector x = testing::RandomInBall(rng, 3, 1.0);
    EXPECT_TRUE(SegmStep(x, p, 0.05).x_next.isApprox(EgmStep(x, p, 0.05).x_next,
                                                     1e-14));
  }
}

TEST(BaselineStepTest, SegmIterateStaysInSupportingHalfSpace) {
  const auto p = BallProblem(5).Instance();
  SplitMix64 rng(10);
  for (int k = 0; k < 200; ++k) {
    const Vector x = testing::RandomInBall(rng, 5, 5.0);
    const double lam = 0.08;
    const auto step = SegmStep(x, p, lam);
    const HalfSpace h = SupportingHalfSpace(x - lam * p.op(x), step.y);
    EXPECT_TRUE(h.contains(step.x_next, 1e-10));
  }
}

TEST(BaselineParamsTest, RejectsInadmissibleFixedSteps) {
  const auto p = BallProblem(3).Instance();  // L = 11
  BaselineParams params;
  params.lambda = 1.0 / 11.0;
  EXPECT_THROW(params.Validate(BaselineMethod::kEgm, p), std::invalid_argument);
  params.lambda = 0.09;
  EXPECT_NO_THROW(params.Validate(BaselineMethod::kEgm, p));
  EXPECT_THROW(params.Validate(BaselineMethod::kPopov, p), std::invalid_argument);
  params.lambda = 0.03;
  EXPECT_NO_THROW(params.Validate(BaselineMethod::kPopov, p));
  params.lambda = 0.0;
  EXPECT_THROW(params.Validate(BaselineMethod::kSegm, p), std::invalid_argument);
  params.mu = 1.0;
  EXPECT_THROW(params.Validate(BaselineMethod::kYang, p), std::invalid_argument);
}

TEST(BaselineParamsTest, DefaultStepsAreAdmissible) {
  const auto p = BallProblem(3).Instance();
  EXPECT_DOUBLE_EQ(*DefaultFixedStep(BaselineMethod::kEgm, p), 0.9 / 11);
  EXPECT_DOUBLE_EQ(*DefaultFixedStep(BaselineMethod::kPopov, p), 0.9 / 33);
  EXPECT_FALSE(DefaultFixedStep(BaselineMethod::kEgm, SunProblem(4).Instance()));
}

TEST(BaselineMethodTest, NamesRoundTrip) {
  for (auto m : {BaselineMethod::kEgm, BaselineMethod::kPopov,
                 BaselineMethod::kSegm, BaselineMethod::kYang}) {
    EXPECT_EQ(ParseBaselineMethod(ToString(m)), m);
  }
  EXPECT_FALSE(ParseBaselineMethod("cg-segm"));
}

TEST(SolveBaselineTest, YangStepNonincreasing) {
  const auto p = BallProblem(10).Instance();
  BaselineParams params;
  params.max_iters = 200;
  params.tol = 1e-300;
  SplitMix64 rng(3);
  const auto r = SolveBaseline(BaselineMethod::kYang, p, params,
                               testing::RandomInBall(rng, 10, 5.0));
  for (std::size_t k = 1; k < r.trace.size(); ++k) {
    ASSERT_LE(r.trace[k].lambda, r.trace[k - 1].lambda);
    ASSERT_GT(r.trace[k].lambda, 0.0);
  }
}

TEST(SolveBaselineTest, AllMethodsSolveSunProblem) {
  const auto p = SunProblem(100).Instance();
  const Vector x0 = Vector::Constant(100, 0.5);
  for (auto m : {BaselineMethod::kEgm, BaselineMethod::kPopov,
                 BaselineMethod::kSegm, BaselineMethod::kYang}) {
    BaselineParams params;
    params.lambda = m == BaselineMethod::kPopov ? 0.9 / 42 : 0.9 / 14;
    params.max_iters = 10000;
    const auto r = SolveBaseline(m, p, params, x0);
    EXPECT_EQ(r.reason, StopReason::kConverged) << ToString(m);
    EXPECT_LE(r.trace.back().residual, 1e-4) << ToString(m);
    EXPECT_GE(r.x.minCoeff(), 0.0);
  }
}

TEST(SolveBaselineTest, ZeroIterations) {
  const auto p = BallProblem(2).Instance();
  BaselineParams params;
  params.lambda = 0.05;
  params.max_iters = 0;
  const auto r =
      SolveBaseline(BaselineMethod::kEgm, p, params, Vector::Ones(2));
  EXPECT_EQ(r.reason, StopReason::kMaxIters);
  EXPECT_TRUE(r.trace.empty());
  EXPECT_EQ(r.x, Vector::Ones(2));
}

}  // namespace
}  // namespace vipsolve
