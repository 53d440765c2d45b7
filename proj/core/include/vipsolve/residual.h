#pragma once

#include "vipsolve/types.h"

namespace vipsolve {

// Natural residual ||x - P_C(x - B(x))||; zero exactly at VIP solutions.
double NaturalResidual(const Vector& x, const ProblemInstance& problem);

// Same, with B(x) already evaluated. Lets solvers reuse the operator value
// they computed for the step.
double NaturalResidual(const Vector& x, const Vector& b_x,
                       const FeasibleSet& set);

}  // namespace vipsolve
