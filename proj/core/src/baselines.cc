#include "vipsolve/baselines.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "vipsolve/projection.h"
#include "vipsolve/residual.h"

namespace vipsolve {
namespace {

void RequireFinite(const Vector& v, const char* what) {
  if (!AllFinite(v)) throw NonFiniteError(std::string("non-finite ") + what);
}

}  // namespace

std::string_view ToString(BaselineMethod method) {
  switch (method) {
    case BaselineMethod::kEgm:
      return "egm";
    case BaselineMethod::kPopov:
      return "popov";
    case BaselineMethod::kSegm:
      return "segm";
    case BaselineMethod::kYang:
      return "yang";
  }
  return "unknown";
}

std::optional<BaselineMethod> ParseBaselineMethod(std::string_view name) {
  for (auto m : {BaselineMethod::kEgm, BaselineMethod::kPopov,
                 BaselineMethod::kSegm, BaselineMethod::kYang}) {
    if (ToString(m) == name) return m;
  }
  return std::nullopt;
}

void BaselineParams::Validate(BaselineMethod method,
                              const ProblemInstance& problem) const {
  if (max_iters < 0) throw std::invalid_argument("max_iters must be >= 0");
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
  if (method == BaselineMethod::kYang) {
    if (!(mu > 0.0 && mu < 1.0)) {
      throw std::invalid_argument("mu must lie in (0, 1)");
    }
    if (!(lambda0 > 0.0) || !std::isfinite(lambda0)) {
      throw std::invalid_argument("lambda0 must be positive");
    }
    return;
  }
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw std::invalid_argument("lambda must be positive");
  }
  if (problem.op.lipschitz) {
    const double L = *problem.op.lipschitz;
    const double bound = method == BaselineMethod::kPopov ? 1.0 / (3.0 * L)
                                                          : 1.0 / L;
    if (!(lambda < bound)) {
      std::ostringstream os;
      os << ToString(method) << ": lambda=" << lambda
         << " is not below the admissible bound " << bound;
      throw std::invalid_argument(os.str());
    }
  }
}

std::optional<double> DefaultFixedStep(BaselineMethod method,
                                       const ProblemInstance& problem) {
  if (!problem.op.lipschitz) return std::nullopt;
  const double L = *problem.op.lipschitz;
  return method == BaselineMethod::kPopov ? 0.9 / (3.0 * L) : 0.9 / L;
}

BaselineStep EgmStep(const Vector& x, const ProblemInstance& problem,
                     double lambda) {
  BaselineStep step;
  step.b_x = problem.op(x);
  RequireFinite(step.b_x, "B(x)");
  step.y = problem.set.project(x - lambda * step.b_x);
  const Vector b_y = problem.op(step.y);
  RequireFinite(b_y, "B(y)");
  step.x_next = problem.set.project(x - lambda * b_y);
  RequireFinite(step.x_next, "x");
  step.next_step = lambda;
  return step;
}

BaselineStep PopovStep(const Vector& x, const ProblemInstance& problem,
                       double lambda) {
  BaselineStep step;
  step.b_x = problem.op(x);
  RequireFinite(step.b_x, "B(x)");
  step.y = problem.set.project(x - lambda * step.b_x);
  step.x_next = problem.set.project(step.y - lambda * step.b_x);
  RequireFinite(step.x_next, "x");
  step.next_step = lambda;
  return step;
}

BaselineStep SegmStep(const Vector& x, const ProblemInstance& problem,
                      double lambda) {
  BaselineStep step;
  step.b_x = problem.op(x);
  RequireFinite(step.b_x, "B(x)");
  const Vector y_pre = x - lambda * step.b_x;
  step.y = problem.set.project(y_pre);
  const Vector b_y = problem.op(step.y);
  RequireFinite(b_y, "B(y)");
  step.x_next =
      ProjectHalfSpace(x - lambda * b_y, SupportingHalfSpace(y_pre, step.y));
  RequireFinite(step.x_next, "x");
  step.next_step = lambda;
  return step;
}

BaselineStep YangStep(const Vector& x, const ProblemInstance& problem,
                      double alpha, double mu) {
  BaselineStep step;
  step.b_x = problem.op(x);
  RequireFinite(step.b_x, "B(x)");
  const Vector y_pre = x - alpha * step.b_x;
  step.y = problem.set.project(y_pre);
  const Vector b_y = problem.op(step.y);
  RequireFinite(b_y, "B(y)");
  step.x_next =
      ProjectHalfSpace(x - alpha * b_y, SupportingHalfSpace(y_pre, step.y));
  RequireFinite(step.x_next, "x");

  const double denom = (step.b_x - b_y).dot(step.x_next - step.y);
  step.next_step = alpha;
  if (denom > 0.0) {
    const double num =
        mu * ((x - step.y).squaredNorm() + (step.x_next - step.y).squaredNorm());
    step.next_step = std::min(num / (2.0 * denom), alpha);
  }
  return step;
}

SolveResult SolveBaseline(BaselineMethod method, const ProblemInstance& problem,
                          const BaselineParams& params, const Vector& x0) {
  params.Validate(method, problem);
  if (x0.size() != problem.dim || !AllFinite(x0)) {
    throw std::invalid_argument("x0 must be finite with the problem dimension");
  }
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  auto seconds_since_start = [&] {
    return std::chrono::duration<double>(Clock::now() - start).count();
  };

  SolveResult result;
  result.reason = StopReason::kMaxIters;
  Vector x = x0;
  double step_size =
      method == BaselineMethod::kYang ? params.lambda0 : params.lambda;

  for (std::int64_t j = 0; j < params.max_iters; ++j) {
    BaselineStep step;
    try {
      switch (method) {
        case BaselineMethod::kEgm:
          step = EgmStep(x, problem, step_size);
          break;
        case BaselineMethod::kPopov:
          step = PopovStep(x, problem, step_size);
          break;
        case BaselineMethod::kSegm:
          step = SegmStep(x, problem, step_size);
          break;
        case BaselineMethod::kYang:
          step = YangStep(x, problem, step_size, params.mu);
          break;
      }
    } catch (const NonFiniteError&) {
      result.reason = StopReason::kNonFinite;
      break;
    }

    IterationRecord record;
    record.j = j;
    record.residual = NaturalResidual(x, step.b_x, problem.set);
    record.gap_xw = (x - step.y).norm();
    record.lambda = step_size;
    for (const auto& metric : problem.metrics) {
      record.extra.emplace_back(metric.name, metric.eval(x));
    }
    record.elapsed = seconds_since_start();
    const double measure = params.criterion == StopCriterion::kResidual
                               ? record.residual
                               : record.gap_xw;
    result.trace.push_back(std::move(record));
    if (measure <= params.tol) {
      result.reason = StopReason::kConverged;
      break;
    }
    x = std::move(step.x_next);
    step_size = step.next_step;
  }
  result.x = std::move(x);
  result.wall_seconds = seconds_since_start();
  return result;
}

}  // namespace vipsolve
