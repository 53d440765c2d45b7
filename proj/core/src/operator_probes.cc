#include "vipsolve/operator_probes.h"

#include <algorithm>
#include <stdexcept>

namespace vipsolve {
namespace {

constexpr double kProbeSlack = 1e-10;

}  // namespace

bool ProbeMonotone(const OperatorSpec& op,
                   std::span<const VectorPair> samples) {
  return std::all_of(samples.begin(), samples.end(), [&](const VectorPair& p) {
    const auto& [x, y] = p;
    return (x - y).dot(op(x) - op(y)) >= -kProbeSlack;
  });
}

bool ProbePseudomonotone(const OperatorSpec& op,
                         std::span<const VectorPair> samples) {
  return std::all_of(samples.begin(), samples.end(), [&](const VectorPair& p) {
    const auto& [x, y] = p;
    const Vector diff = x - y;
    if (op(y).dot(diff) < 0.0) return true;  // premise fails
    return op(x).dot(diff) >= -kProbeSlack;
  });
}

double EstimateLipschitz(const OperatorSpec& op,
                         std::span<const VectorPair> samples) {
  double best = 0.0;
  for (const auto& [x, y] : samples) {
    const double dist = (x - y).norm();
    if (dist == 0.0) {
      throw std::invalid_argument("EstimateLipschitz: coincident sample pair");
    }
    best = std::max(best, (op(x) - op(y)).norm() / dist);
  }
  return best;
}

OperatorSpec CountEvaluations(
    OperatorSpec op, std::shared_ptr<std::atomic<std::int64_t>> counter) {
  auto inner = op.eval;
  op.eval = [inner = std::move(inner),
             counter = std::move(counter)](const Vector& x) {
    counter->fetch_add(1, std::memory_order_relaxed);
    return inner(x);
  };
  return op;
}

}  // namespace vipsolve
