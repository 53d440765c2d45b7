#include "vipsolve/cg_segm.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "vipsolve/projection.h"
#include "vipsolve/residual.h"

namespace vipsolve {
namespace {

constexpr double kOperatorChangeFloor = 1e-14;
constexpr double kAnchorMembershipTol = 1e-8;

void RequireFinite(const Vector& v, const char* what, std::int64_t j) {
  if (!AllFinite(v)) {
    std::ostringstream os;
    os << "non-finite " << what << " at iteration " << j;
    throw NonFiniteError(os.str());
  }
}

}  // namespace

std::string_view ToString(StopReason reason) {
  switch (reason) {
    case StopReason::kConverged:
      return "Converged";
    case StopReason::kMaxIters:
      return "MaxIters";
    case StopReason::kNonFinite:
      return "NonFinite";
  }
  return "Unknown";
}

void SolverParams::Validate(const ProblemInstance& problem) const {
  if (!(mu > 0.0 && mu < 1.0)) {
    throw std::invalid_argument("mu must lie in (0, 1)");
  }
  if (!(psi > 0.0) || !std::isfinite(psi)) {
    throw std::invalid_argument("psi must be positive");
  }
  if (!(lambda0 > 0.0) || !std::isfinite(lambda0)) {
    throw std::invalid_argument("lambda0 must be positive");
  }
  if (max_iters < 0) throw std::invalid_argument("max_iters must be >= 0");
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
  if (anchor.size() != problem.dim) {
    throw std::invalid_argument("anchor dimension does not match the problem");
  }
  if (!AllFinite(anchor) || !problem.set.contains(anchor, kAnchorMembershipTol)) {
    throw std::invalid_argument("anchor must lie in the feasible set");
  }
}

SolverState SolverState::Initial(const ProblemInstance& problem,
                                 const SolverParams& params, Vector x0) {
  SolverState state;
  state.j = 0;
  state.d = -problem.op(x0);
  state.x = std::move(x0);
  state.lambda = params.lambda0;
  return state;
}

Vector CgDirection(const Vector& d_prev, const Vector& b_x, double gamma,
                   double psi) {
  if (d_prev.size() != b_x.size()) {
    throw std::invalid_argument("CgDirection: dimension mismatch");
  }
  const double theta = gamma / std::max(d_prev.norm(), psi);
  return -b_x + theta * d_prev;
}

double AdaptiveStepsize(double lambda, double mu, const Vector& x,
                        const Vector& w, const Vector& b_x, const Vector& b_w) {
  const double change = (b_w - b_x).norm();
  if (!(change > kOperatorChangeFloor)) return lambda;
  return std::min(mu * (w - x).norm() / change, lambda);
}

StepOutcome IterateOnce(const SolverState& state, const ProblemInstance& problem,
                        const SolverParams& params,
                        const StepObserver* observer) {
  const std::int64_t j = state.j;
  const double lambda = state.lambda;
  const Vector& x = state.x;

  const Vector b_x = problem.op(x);
  RequireFinite(b_x, "B(x)", j);

  Vector direction = CgDirection(state.d, b_x, params.gamma(j), params.psi);
  const Vector w_pre = x + lambda * direction;
  Vector w = problem.set.project(w_pre);
  RequireFinite(w, "w", j);

  const Vector b_w = problem.op(w);
  RequireFinite(b_w, "B(w)", j);

  const HalfSpace halfspace = SupportingHalfSpace(w_pre, w);
  Vector y = ProjectHalfSpace(x - lambda * b_w, halfspace);
  RequireFinite(y, "y", j);

  const double alpha = params.alpha(j);
  Vector x_next = alpha * params.anchor + (1.0 - alpha) * y;
  const double next_lambda = AdaptiveStepsize(lambda, params.mu, x, w, b_x, b_w);
  RequireFinite(x_next, "x", j + 1);

  IterationRecord record;
  record.j = j;
  record.residual = NaturalResidual(x, b_x, problem.set);
  record.gap_xw = (x - w).norm();
  record.lambda = lambda;
  for (const auto& metric : problem.metrics) {
    record.extra.emplace_back(metric.name, metric.eval(x));
  }

  if (observer != nullptr) {
    (*observer)(StepDetail{x, direction, w, y, halfspace, lambda, next_lambda});
  }

  SolverState next;
  next.j = j + 1;
  next.x = std::move(x_next);
  next.d = std::move(direction);
  next.lambda = next_lambda;
  next.last_w = std::move(w);
  next.last_y = std::move(y);
  return {std::move(next), std::move(record)};
}

SolveResult Solve(const ProblemInstance& problem, const SolverParams& params,
                  const Vector& x0, const StepObserver* observer) {
  params.Validate(problem);
  if (x0.size() != problem.dim || !AllFinite(x0)) {
    throw std::invalid_argument("x0 must be finite with the problem dimension");
  }
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  auto seconds_since_start = [&] {
    return std::chrono::duration<double>(Clock::now() - start).count();
  };

  SolveResult result;
  result.x = x0;
  if (params.max_iters == 0) {
    result.reason = StopReason::kMaxIters;
    return result;
  }

  SolverState state = SolverState::Initial(problem, params, x0);
  if (!AllFinite(state.d)) {
    result.reason = StopReason::kNonFinite;
    result.wall_seconds = seconds_since_start();
    return result;
  }
  result.reason = StopReason::kMaxIters;
  while (state.j < params.max_iters) {
    StepOutcome outcome;
    try {
      outcome = IterateOnce(state, problem, params, observer);
    } catch (const NonFiniteError&) {
      result.reason = StopReason::kNonFinite;
      break;
    }
    outcome.record.elapsed = seconds_since_start();
    const double measure = params.criterion == StopCriterion::kResidual
                               ? outcome.record.residual
                               : outcome.record.gap_xw;
    result.trace.push_back(std::move(outcome.record));
    if (measure <= params.tol) {
      result.reason = StopReason::kConverged;
      break;
    }
    state = std::move(outcome.next);
  }
  result.x = std::move(state.x);
  result.wall_seconds = seconds_since_start();
  return result;
}

}  // namespace vipsolve
