#pragma once

#include <cstdint>

#include "vipsolve/types.h"

namespace vipsolve {

// Sun's nonlinear complementarity-type VIP on the nonnegative orthant:
//   B(x) = B1(x) + D x + c,  b_i(x) = x_i^2 + x_i + x_{i-1} x_i + x_i x_{i+1}
// with x_0 = x_{d+1} = 0, D tridiagonal (1 below, 4 on, -2 above the
// diagonal) and c = -1.
class SunProblem {
 public:
  explicit SunProblem(Index dim);

  Index dim() const { return dim_; }
  Matrix D() const;
  Vector c() const { return Vector::Constant(dim_, -1.0); }

  Vector Evaluate(const Vector& x) const;
  // D x + c, i.e. the operator without the quadratic part.
  Vector EvaluateAffine(const Vector& x) const;

  // Bound on the Jacobian norm over [0, 1]^d (Gershgorin: |row| <= 14).
  // Not a global constant; used only to size fixed steps for baselines.
  static constexpr double kUnitBoxLipschitz = 14.0;

  // No global Lipschitz hint: the quadratic term is unbounded on R^d_+.
  ProblemInstance Instance() const;

 private:
  Index dim_;
};

Vector SunOperator(const Vector& x);

// (shift - ||x||) x on the ball of radius `radius`. With the defaults the
// operator is pseudomonotone but not monotone on the ball, Lipschitz with
// L = 11, and the unique solution is x* = 0.
class BallProblem {
 public:
  explicit BallProblem(Index dim, double radius = 5.0, double shift = 7.0);

  Index dim() const { return dim_; }
  double radius() const { return radius_; }
  double shift() const { return shift_; }

  Vector Evaluate(const Vector& x) const;
  ProblemInstance Instance() const;

 private:
  Index dim_;
  double radius_;
  double shift_;
};

Vector BallOperator(const Vector& x, double shift = 7.0);

// payoff(i, j) = wealth_i (1 - exp(-alpha |positions_i - positions_j|)).
Matrix BuildPayoff(const Vector& wealth, double alpha, const Vector& positions);

// Saddle operator of min_u max_v v^T P u on z = (u, v): (P^T v, -P u).
Vector GameOperator(const Vector& z, const Matrix& payoff);

// max_i (P u)_i - min_j (P^T v)_j for u, v on their simplices (1e-8).
// Throws std::invalid_argument on infeasible input.
double DualityGap(const Vector& u, const Vector& v, const Matrix& payoff);

// Largest singular value by power iteration on P^T P.
double SpectralNorm(const Matrix& m, double tol = 1e-10,
                    int max_iters = 10000);

// Burglar/policeman matrix game on a street of n houses at positions
// 0..n-1. The joint variable is z = (u, v) on simplex x simplex; u is the
// policeman's (minimizing) strategy, v the burglar's.
class GameProblem {
 public:
  GameProblem(Vector wealth, double alpha);
  GameProblem(Vector wealth, double alpha, Vector positions);

  // wealth_i ~ U[1, 2] from a SplitMix64 stream seeded with `seed`.
  static Vector UniformWealth(Index houses, std::uint64_t seed);

  Index houses() const { return wealth_.size(); }
  Index dim() const { return 2 * houses(); }
  const Vector& wealth() const { return wealth_; }
  double alpha() const { return alpha_; }
  const Matrix& payoff() const { return payoff_; }
  double lipschitz() const { return lipschitz_; }

  Vector Evaluate(const Vector& z) const;
  // Duality gap at the projection of z onto the strategy sets. Trace
  // iterates need not be feasible, so the certificate is taken at P_C(z).
  double GapAtProjection(const Vector& z) const;
  ProblemInstance Instance() const;

 private:
  Vector wealth_;
  double alpha_;
  Matrix payoff_;
  double lipschitz_;
};

}  // namespace vipsolve
