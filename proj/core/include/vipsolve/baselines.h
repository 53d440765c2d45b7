#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "vipsolve/cg_segm.h"
#include "vipsolve/types.h"

namespace vipsolve {

// Classical projection methods used as comparison baselines.
enum class BaselineMethod { kEgm, kPopov, kSegm, kYang };

std::string_view ToString(BaselineMethod method);
std::optional<BaselineMethod> ParseBaselineMethod(std::string_view name);

struct BaselineParams {
  double lambda = 0.0;  // fixed step (EGM, Popov, SEGM)
  double mu = 0.5;      // Yang: safety factor in (0, 1)
  double lambda0 = 0.5; // Yang: initial step
  std::int64_t max_iters = 10000;
  double tol = 1e-4;
  StopCriterion criterion = StopCriterion::kResidual;

  // Step admissibility against the problem's Lipschitz hint, when present:
  // lambda < 1/L for EGM and SEGM, lambda < 1/(3L) for Popov.
  void Validate(BaselineMethod method, const ProblemInstance& problem) const;
};

// 0.9/L for EGM and SEGM, 0.9/(3L) for Popov. Empty without a hint.
std::optional<double> DefaultFixedStep(BaselineMethod method,
                                       const ProblemInstance& problem);

// Each step returns the new iterate together with the predictor y and the
// operator value at the incoming x, so drivers can report the residual at x
// without an extra evaluation.
struct BaselineStep {
  Vector x_next;
  Vector y;
  Vector b_x;
  double next_step = 0.0;  // Yang's updated step; the fixed step otherwise
};

// y = P_C(x - lambda B(x)), x+ = P_C(x - lambda B(y)).
BaselineStep EgmStep(const Vector& x, const ProblemInstance& problem,
                     double lambda);

// y = P_C(x - lambda B(x)), x+ = P_C(y - lambda B(x)); one evaluation.
BaselineStep PopovStep(const Vector& x, const ProblemInstance& problem,
                       double lambda);

// y = P_C(x - lambda B(x)); V = supporting half-space of C at y;
// x+ = P_V(x - lambda B(y)).
BaselineStep SegmStep(const Vector& x, const ProblemInstance& problem,
                      double lambda);

// SEGM with the self-adaptive step
//   alpha+ = min(mu (|x-y|^2 + |x+-y|^2) / (2 <B(x)-B(y), x+-y>), alpha)
// when the inner product is positive, alpha otherwise.
BaselineStep YangStep(const Vector& x, const ProblemInstance& problem,
                      double alpha, double mu);

// Same stopping contract as Solve: the criterion is measured at x_j, and
// x_j is returned on convergence.
SolveResult SolveBaseline(BaselineMethod method, const ProblemInstance& problem,
                          const BaselineParams& params, const Vector& x0);

}  // namespace vipsolve
