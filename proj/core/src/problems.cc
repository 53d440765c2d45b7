#include "vipsolve/problems.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "vipsolve/projection.h"
#include "vipsolve/rng.h"

namespace vipsolve {
namespace {

constexpr double kSimplexTol = 1e-8;
constexpr std::uint64_t kWealthStream = 0x5745414c5448ULL;

void RequireDim(const Vector& x, Index dim, const char* who) {
  if (x.size() != dim) {
    throw std::invalid_argument(std::string(who) + ": dimension mismatch");
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Sun

SunProblem::SunProblem(Index dim) : dim_(dim) {
  if (dim < 1) throw std::invalid_argument("SunProblem: dim must be >= 1");
}

Matrix SunProblem::D() const {
  Matrix d = Matrix::Zero(dim_, dim_);
  for (Index i = 0; i < dim_; ++i) {
    d(i, i) = 4.0;
    if (i > 0) d(i, i - 1) = 1.0;
    if (i + 1 < dim_) d(i, i + 1) = -2.0;
  }
  return d;
}

Vector SunProblem::EvaluateAffine(const Vector& x) const {
  RequireDim(x, dim_, "SunProblem");
  Vector out(dim_);
  for (Index i = 0; i < dim_; ++i) {
    const double left = i > 0 ? x[i - 1] : 0.0;
    const double right = i + 1 < dim_ ? x[i + 1] : 0.0;
    out[i] = left + 4.0 * x[i] - 2.0 * right - 1.0;
  }
  return out;
}

Vector SunProblem::Evaluate(const Vector& x) const {
  Vector out = EvaluateAffine(x);
  for (Index i = 0; i < dim_; ++i) {
    const double left = i > 0 ? x[i - 1] : 0.0;
    const double right = i + 1 < dim_ ? x[i + 1] : 0.0;
    out[i] += x[i] * x[i] + x[i] + left * x[i] + x[i] * right;
  }
  return out;
}

ProblemInstance SunProblem::Instance() const {
  ProblemInstance p;
  p.label = "sun";
  p.dim = dim_;
  p.op = OperatorSpec{[self = *this](const Vector& x) { return self.Evaluate(x); },
                      std::nullopt, "sun"};
  p.set = NonnegOrthant();
  return p;
}

Vector SunOperator(const Vector& x) { return SunProblem(x.size()).Evaluate(x); }

// ---------------------------------------------------------------------------
// Ball

BallProblem::BallProblem(Index dim, double radius, double shift)
    : dim_(dim), radius_(radius), shift_(shift) {
  if (dim < 1) throw std::invalid_argument("BallProblem: dim must be >= 1");
  if (!(radius > 0.0)) throw std::invalid_argument("BallProblem: radius <= 0");
}

Vector BallOperator(const Vector& x, double shift) {
  return (shift - x.norm()) * x;
}

Vector BallProblem::Evaluate(const Vector& x) const {
  RequireDim(x, dim_, "BallProblem");
  return BallOperator(x, shift_);
}

ProblemInstance BallProblem::Instance() const {
  ProblemInstance p;
  p.label = "ball";
  p.dim = dim_;
  // Lipschitz constant on the ball. For the default data the published
  // value 11 is used; otherwise the Jacobian bound max(|s - r|, |s - 2r|)
  // over 0 <= r <= radius.
  const double hint = (radius_ == 5.0 && shift_ == 7.0)
                          ? 11.0
                          : std::max(std::abs(shift_),
                                     std::abs(shift_ - 2.0 * radius_));
  p.op = OperatorSpec{[shift = shift_](const Vector& x) {
                        return BallOperator(x, shift);
                      },
                      hint, "ball"};
  p.set = L2Ball(radius_);
  return p;
}

// ---------------------------------------------------------------------------
// Game

Matrix BuildPayoff(const Vector& wealth, double alpha, const Vector& positions) {
  if (!(alpha > 0.0)) throw std::invalid_argument("BuildPayoff: alpha <= 0");
  if (wealth.size() != positions.size()) {
    throw std::invalid_argument("BuildPayoff: wealth/positions size mismatch");
  }
  if (wealth.size() > 0 && !(wealth.minCoeff() > 0.0)) {
    throw std::invalid_argument("BuildPayoff: wealth must be positive");
  }
  const Index n = wealth.size();
  Matrix payoff(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      const double dist = std::abs(positions[i] - positions[j]);
      payoff(i, j) = wealth[i] * -std::expm1(-alpha * dist);
    }
  }
  return payoff;
}

Vector GameOperator(const Vector& z, const Matrix& payoff) {
  const Index n = payoff.rows();
  if (payoff.cols() != n || z.size() != 2 * n) {
    throw std::invalid_argument("GameOperator: dimension mismatch");
  }
  Vector out(2 * n);
  out.head(n).noalias() = payoff.transpose() * z.tail(n);
  out.tail(n).noalias() = -(payoff * z.head(n));
  return out;
}

double DualityGap(const Vector& u, const Vector& v, const Matrix& payoff) {
  const Index n = payoff.rows();
  if (payoff.cols() != n || u.size() != n || v.size() != n) {
    throw std::invalid_argument("DualityGap: dimension mismatch");
  }
  const FeasibleSet simplex = ProbabilitySimplex();
  if (!simplex.contains(u, kSimplexTol) || !simplex.contains(v, kSimplexTol)) {
    throw std::invalid_argument("DualityGap: strategies must lie on the simplex");
  }
  return (payoff * u).maxCoeff() - (payoff.transpose() * v).minCoeff();
}

double SpectralNorm(const Matrix& m, double tol, int max_iters) {
  if (m.size() == 0) return 0.0;
  const Matrix gram = m.transpose() * m;
  Vector v = Vector::Constant(gram.cols(), 1.0 / std::sqrt(gram.cols()));
  double eig = 0.0;
  for (int it = 0; it < max_iters; ++it) {
    Vector next = gram * v;
    const double norm = next.norm();
    if (norm == 0.0) return 0.0;
    next /= norm;
    const double prev = eig;
    eig = next.dot(gram * next);
    v = std::move(next);
    if (std::abs(eig - prev) <= tol * std::max(1.0, eig)) break;
  }
  return std::sqrt(eig);
}

GameProblem::GameProblem(Vector wealth, double alpha)
    : GameProblem(wealth, alpha,
                  Vector::LinSpaced(wealth.size(), 0.0,
                                    static_cast<double>(wealth.size()) - 1.0)) {}

GameProblem::GameProblem(Vector wealth, double alpha, Vector positions)
    : wealth_(std::move(wealth)),
      alpha_(alpha),
      payoff_(BuildPayoff(wealth_, alpha_, positions)),
      lipschitz_(SpectralNorm(payoff_)) {
  if (wealth_.size() < 1) throw std::invalid_argument("GameProblem: no houses");
}

Vector GameProblem::UniformWealth(Index houses, std::uint64_t seed) {
  SplitMix64 rng(seed ^ kWealthStream);
  Vector w(houses);
  for (Index i = 0; i < houses; ++i) w[i] = rng.Uniform(1.0, 2.0);
  return w;
}

Vector GameProblem::Evaluate(const Vector& z) const {
  return GameOperator(z, payoff_);
}

double GameProblem::GapAtProjection(const Vector& z) const {
  const Index n = houses();
  RequireDim(z, 2 * n, "GameProblem");
  const Vector u = ProjectSimplex(z.head(n));
  const Vector v = ProjectSimplex(z.tail(n));
  return DualityGap(u, v, payoff_);
}

ProblemInstance GameProblem::Instance() const {
  ProblemInstance p;
  p.label = "game";
  p.dim = dim();
  // The block operator [[0, P^T], [-P, 0]] has spectral norm sigma_max(P).
  p.op = OperatorSpec{[payoff = payoff_](const Vector& z) {
                        return GameOperator(z, payoff);
                      },
                      lipschitz_, "game"};
  p.set = SimplexProduct({houses(), houses()});
  p.metrics.push_back(
      {"gap_duality", [self = *this](const Vector& z) {
         return self.GapAtProjection(z);
       }});
  return p;
}

}  // namespace vipsolve
