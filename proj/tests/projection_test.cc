#include "vipsolve/projection.h"

#include <functional>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "test_util.h"

namespace vipsolve {
namespace {

using testing::RandomInBall;
using testing::RandomOnSimplex;
using testing::RandomVector;

Vector Vec(std::initializer_list<double> values) {
  Vector v(static_cast<Index>(values.size()));
  Index i = 0;
  for (double x : values) v[i++] = x;
  return v;
}

TEST(ProjectNonnegOrthantTest, ClampsAtZero) {
  EXPECT_EQ(ProjectNonnegOrthant(Vec({1, -2, 3})), Vec({1, 0, 3}));
  EXPECT_EQ(ProjectNonnegOrthant(Vec({0, 0})), Vec({0, 0}));
  EXPECT_EQ(ProjectNonnegOrthant(Vec({-1, -1})), Vec({0, 0}));
}

TEST(ProjectL2BallTest, InsideUnchangedOutsideScaled) {
  const Vector inside = Vec({0.6 * 3, 0.8 * 3});  // norm 3
  EXPECT_EQ(ProjectL2Ball(inside, 5.0), inside);
  EXPECT_TRUE(ProjectL2Ball(Vec({10, 0}), 5.0).isApprox(Vec({5, 0})));
  EXPECT_EQ(ProjectL2Ball(Vector::Zero(4), 5.0), Vector::Zero(4));
  EXPECT_THROW(ProjectL2Ball(Vec({1}), 0.0), std::invalid_argument);
}

TEST(ProjectSimplexTest, FixedPointsAndClamp) {
  EXPECT_EQ(ProjectSimplex(Vec({1, 0})), Vec({1, 0}));
  EXPECT_EQ(ProjectSimplex(Vec({0.5, 0.5})), Vec({0.5, 0.5}));
  EXPECT_TRUE(ProjectSimplex(Vec({2, 0})).isApprox(Vec({1, 0})));
  EXPECT_THROW(ProjectSimplex(Vector(0)), std::invalid_argument);
}

// Grid oracle for u = (2, 0): minimize ||(t, 1-t) - u||^2 over t in [0, 1].
TEST(ProjectSimplexTest, MatchesGridSearchOnTwoSimplex) {
  const Vector u = Vec({2, 0});
  double best_t = 0.0;
  double best = 1e300;
  for (int k = 0; k <= 1000000; ++k) {
    const double t = k * 1e-6;
    const double f = (Vec({t, 1 - t}) - u).squaredNorm();
    if (f < best) {
      best = f;
      best_t = t;
    }
  }
  EXPECT_NEAR(best_t, 1.0, 1e-6);
  const Vector p = ProjectSimplex(u);
  EXPECT_NEAR(p[0], best_t, 1e-6);
  EXPECT_NEAR(p[1], 1 - best_t, 1e-6);
}

TEST(ProjectSimplexTest, AgreesWithSupportEnumeration) {
  SplitMix64 rng(2024);
  for (int trial = 0; trial < 1000; ++trial) {
    const Index d = 2 + trial % 3;
    const Vector u = RandomVector(rng, d, -2.0, 2.0);
    const Vector p = ProjectSimplex(u);
    const Vector oracle = testing::SimplexProjectionByEnumeration(u);
    ASSERT_LE((p - oracle).lpNorm<Eigen::Infinity>(), 1e-6) << "trial " << trial;
    ASSERT_NEAR(p.sum(), 1.0, 1e-12);
    ASSERT_GE(p.minCoeff(), 0.0);
  }
}

TEST(ProjectHalfSpaceTest, Examples) {
  const HalfSpace h(Vec({1, 0}), 0.0);
  EXPECT_EQ(ProjectHalfSpace(Vec({-1, 4}), h), Vec({-1, 4}));
  EXPECT_TRUE(ProjectHalfSpace(Vec({2, 3}), h).isApprox(Vec({0, 3})));
  const HalfSpace whole(Vec({0, 0}), 0.0);
  EXPECT_TRUE(whole.is_whole_space());
  EXPECT_EQ(ProjectHalfSpace(Vec({7, 7}), whole), Vec({7, 7}));
}

// The nearest point of {z_1 <= 0} to (2, 3) lies on z_1 = 0; scan that line.
TEST(ProjectHalfSpaceTest, MatchesLineSearchOracle) {
  const Vector u = Vec({2, 3});
  double best_s = 0.0;
  double best = 1e300;
  for (int k = -100000; k <= 100000; ++k) {
    const double s = k * 1e-4;
    const double f = (Vec({0, s}) - u).squaredNorm();
    if (f < best) {
      best = f;
      best_s = s;
    }
  }
  const Vector p = ProjectHalfSpace(u, HalfSpace(Vec({1, 0}), 0.0));
  EXPECT_NEAR(p[0], 0.0, 1e-12);
  EXPECT_NEAR(p[1], best_s, 1e-4);
}

TEST(HalfSpaceTest, RejectsEmptyDegenerateSet) {
  EXPECT_THROW(HalfSpace(Vec({0, 0}), -1.0), std::invalid_argument);
}

TEST(SupportingHalfSpaceTest, UnitBallExampleContainsSampledPoints) {
  const HalfSpace h = SupportingHalfSpace(Vec({2, 0}), Vec({1, 0}));
  EXPECT_EQ(h.normal(), Vec({1, 0}));
  EXPECT_DOUBLE_EQ(h.offset(), 1.0);
  SplitMix64 rng(7);
  for (int k = 0; k < 100; ++k) {
    EXPECT_TRUE(h.contains(RandomInBall(rng, 2, 1.0), 1e-10));
  }
}

TEST(SupportingHalfSpaceTest, InteriorAndOrthantExamples) {
  const HalfSpace interior = SupportingHalfSpace(Vec({0.3, 0.4}), Vec({0.3, 0.4}));
  EXPECT_TRUE(interior.is_whole_space());
  EXPECT_DOUBLE_EQ(interior.offset(), 0.0);

  const HalfSpace orthant = SupportingHalfSpace(Vec({0, -3}), Vec({0, 0}));
  EXPECT_EQ(orthant.normal(), Vec({0, -3}));
  EXPECT_DOUBLE_EQ(orthant.offset(), 0.0);
}

// Property suites shared by every projection the solvers use.
struct SetCase {
  std::string name;
  FeasibleSet set;
  Index dim;
  std::function<Vector(SplitMix64&)> feasible_point;
};

void PrintTo(const SetCase& c, std::ostream* os) { *os << c.name; }

std::vector<SetCase> AllSets() {
  return {
      {"orthant", NonnegOrthant(), 5,
       [](SplitMix64& rng) { return RandomVector(rng, 5, 0.0, 3.0); }},
      {"ball", L2Ball(5.0), 5,
       [](SplitMix64& rng) { return RandomInBall(rng, 5, 5.0); }},
      {"simplex", ProbabilitySimplex(), 5,
       [](SplitMix64& rng) { return RandomOnSimplex(rng, 5); }},
      {"simplex-product", SimplexProduct({3, 4}), 7,
       [](SplitMix64& rng) {
         Vector z(7);
         z << RandomOnSimplex(rng, 3), RandomOnSimplex(rng, 4);
         return z;
       }},
  };
}

class ProjectionPropertyTest : public ::testing::TestWithParam<SetCase> {};

TEST_P(ProjectionPropertyTest, Nonexpansive) {
  const auto& c = GetParam();
  SplitMix64 rng(11);
  for (int k = 0; k < 1000; ++k) {
    const Vector x = RandomVector(rng, c.dim, -10, 10);
    const Vector y = RandomVector(rng, c.dim, -10, 10);
    ASSERT_LE((c.set.project(x) - c.set.project(y)).norm(),
              (x - y).norm() + 1e-10);
  }
}

TEST_P(ProjectionPropertyTest, VariationalCharacterization) {
  const auto& c = GetParam();
  SplitMix64 rng(12);
  for (int k = 0; k < 1000; ++k) {
    const Vector x = RandomVector(rng, c.dim, -10, 10);
    const Vector p = c.set.project(x);
    for (int m = 0; m < 100; ++m) {
      const Vector y = c.feasible_point(rng);
      ASSERT_LE((x - p).dot(y - p), 1e-10);
    }
  }
}

TEST_P(ProjectionPropertyTest, FirmInequality) {
  const auto& c = GetParam();
  SplitMix64 rng(13);
  for (int k = 0; k < 1000; ++k) {
    const Vector x = RandomVector(rng, c.dim, -10, 10);
    const Vector y = c.feasible_point(rng);
    const Vector p = c.set.project(x);
    ASSERT_LE((p - y).squaredNorm(),
              (x - y).squaredNorm() - (p - x).squaredNorm() + 1e-8);
  }
}

TEST_P(ProjectionPropertyTest, IdempotentAndFeasible) {
  const auto& c = GetParam();
  SplitMix64 rng(14);
  for (int k = 0; k < 1000; ++k) {
    const Vector p = c.set.project(RandomVector(rng, c.dim, -10, 10));
    ASSERT_LE((c.set.project(p) - p).lpNorm<Eigen::Infinity>(), 1e-12);
    ASSERT_TRUE(c.set.contains(p, 1e-10));
  }
}

TEST_P(ProjectionPropertyTest, SupportingHalfSpaceContainsSet) {
  const auto& c = GetParam();
  SplitMix64 rng(15);
  for (int k = 0; k < 1000; ++k) {
    const Vector pre = RandomVector(rng, c.dim, -10, 10);
    const HalfSpace h = SupportingHalfSpace(pre, c.set.project(pre));
    for (int m = 0; m < 100; ++m) {
      ASSERT_TRUE(h.contains(c.feasible_point(rng), 1e-10));
    }
  }
}

INSTANTIATE_TEST_SUITE_P(
    Sets, ProjectionPropertyTest, ::testing::ValuesIn(AllSets()),
    [](const ::testing::TestParamInfo<SetCase>& info) {
      std::string name = info.param.name;
      for (char& ch : name) {
        if (ch == '-') ch = '_';
      }
      return name;
    });

TEST(HalfSpaceProjectionPropertyTest, Nonexpansive) {
  SplitMix64 rng(16);
  for (int k = 0; k < 1000; ++k) {
    const HalfSpace h(RandomVector(rng, 4), rng.Uniform(-1, 1));
    const Vector x = RandomVector(rng, 4, -10, 10);
    const Vector y = RandomVector(rng, 4, -10, 10);
    const Vector px = ProjectHalfSpace(x, h);
    ASSERT_LE((px - ProjectHalfSpace(y, h)).norm(), (x - y).norm() + 1e-10);
    ASSERT_TRUE(h.contains(px, 1e-10));
    ASSERT_LE((ProjectHalfSpace(px, h) - px).lpNorm<Eigen::Infinity>(), 1e-12);
  }
}

TEST(FeasibleSetTest, BallMembershipToleratesRoundOff) {
  const FeasibleSet ball = L2Ball(5.0);
  EXPECT_TRUE(ball.contains(Vec({5.0 + 5e-11, 0}), 0.0));
  EXPECT_FALSE(ball.contains(Vec({5.001, 0}), 0.0));
}

}  // namespace
}  // namespace vipsolve
