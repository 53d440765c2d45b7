#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <span>
#include <utility>

#include "vipsolve/types.h"

namespace vipsolve {

using VectorPair = std::pair<Vector, Vector>;

// Sampled operator-class checks. A `true` answer is evidence, not proof: it
// means no sampled pair violates the defining inequality (slack 1e-10).

// <x - y, B(x) - B(y)> >= 0 on every pair.
bool ProbeMonotone(const OperatorSpec& op, std::span<const VectorPair> samples);

// <B(y), x - y> >= 0  implies  <B(x), x - y> >= 0, on every pair.
bool ProbePseudomonotone(const OperatorSpec& op,
                         std::span<const VectorPair> samples);

// max ||B(x) - B(y)|| / ||x - y|| over the pairs; a lower bound on L.
// Throws std::invalid_argument if a pair has x == y.
double EstimateLipschitz(const OperatorSpec& op,
                         std::span<const VectorPair> samples);

// Wraps `op` so every evaluation increments `*counter`.
OperatorSpec CountEvaluations(OperatorSpec op,
                              std::shared_ptr<std::atomic<std::int64_t>> counter);

}  // namespace vipsolve
