#include "vipsolve/residual.h"

#include <stdexcept>

namespace vipsolve {

double NaturalResidual(const Vector& x, const Vector& b_x,
                       const FeasibleSet& set) {
  if (x.size() != b_x.size()) {
    throw std::invalid_argument("NaturalResidual: dimension mismatch");
  }
  return (x - set.project(x - b_x)).norm();
}

double NaturalResidual(const Vector& x, const ProblemInstance& problem) {
  return NaturalResidual(x, problem.op(x), problem.set);
}

}  // namespace vipsolve
