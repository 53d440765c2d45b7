#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "vipsolve/schedule.h"
#include "vipsolve/types.h"

namespace vipsolve {

enum class StopReason { kConverged, kMaxIters, kNonFinite };
enum class StopCriterion { kResidual, kGapXW };

std::string_view ToString(StopReason reason);

// Thrown by a single step when an intermediate value leaves the reals.
class NonFiniteError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One trace row. `residual` and `gap_xw` describe the iterate x_j that the
// row's step started from.
struct IterationRecord {
  std::int64_t j = 0;
  double residual = 0.0;
  double gap_xw = 0.0;
  double lambda = 0.0;
  double elapsed = 0.0;  // seconds since the solve started
  std::vector<std::pair<std::string, double>> extra;
};

struct SolveResult {
  Vector x;
  std::vector<IterationRecord> trace;
  StopReason reason = StopReason::kMaxIters;
  double wall_seconds = 0.0;
};

// Controls of the self-adaptive subgradient extragradient method with a
// conjugate-gradient-type direction.
struct SolverParams {
  double mu = 0.05;       // stepsize safety factor, in (0, 1)
  double psi = 1.0;       // floor on ||d_j|| in the direction weight
  double lambda0 = 0.03;  // initial stepsize
  Vector anchor;          // Halpern anchor rho; must lie in C
  PowerSchedule alpha = PowerSchedule::ForAnchor(1.0, 2.0, 1.0, 0.01);
  PowerSchedule gamma = PowerSchedule::ForDirection(1.0, 1.0, 1.0, 1.2);
  std::int64_t max_iters = 10000;
  double tol = 1e-4;
  StopCriterion criterion = StopCriterion::kResidual;

  // Throws std::invalid_argument describing the first violated constraint.
  void Validate(const ProblemInstance& problem) const;
};

struct SolverState {
  std::int64_t j = 0;
  Vector x;       // x_j
  Vector d;       // d_j
  double lambda = 0.0;  // lambda_j
  std::optional<Vector> last_w;
  std::optional<Vector> last_y;

  // x_0 = x0, d_0 = -B(x0), lambda_0 from params. One operator evaluation.
  static SolverState Initial(const ProblemInstance& problem,
                             const SolverParams& params, Vector x0);
};

// Intermediate quantities of one step, exposed for instrumentation.
struct StepDetail {
  const Vector& x;
  const Vector& direction;  // d_{j+1}
  const Vector& w;
  const Vector& y;
  const HalfSpace& halfspace;  // T_j
  double lambda;
  double next_lambda;
};
using StepObserver = std::function<void(const StepDetail&)>;

// d_{j+1} = -B(x_j) + Gamma_j / max(||d_j||, psi) * d_j.
Vector CgDirection(const Vector& d_prev, const Vector& b_x, double gamma,
                   double psi);

// lambda_{j+1} = min(mu ||w - x|| / ||B(w) - B(x)||, lambda) when
// ||B(w) - B(x)|| > 1e-14, otherwise lambda.
double AdaptiveStepsize(double lambda, double mu, const Vector& x,
                        const Vector& w, const Vector& b_x, const Vector& b_w);

struct StepOutcome {
  SolverState next;
  IterationRecord record;
};

// One full iteration: direction, projection onto C, supporting half-space,
// projection onto it, anchor combination, stepsize update. Evaluates the
// operator exactly twice, at x_j and at w_j. Throws NonFiniteError.
StepOutcome IterateOnce(const SolverState& state, const ProblemInstance& problem,
                        const SolverParams& params,
                        const StepObserver* observer = nullptr);

// Runs IterateOnce until the stopping criterion holds at x_j (x_j is
// returned), max_iters steps have been taken, or a value becomes non-finite.
SolveResult Solve(const ProblemInstance& problem, const SolverParams& params,
                  const Vector& x0, const StepObserver* observer = nullptr);

}  // namespace vipsolve
