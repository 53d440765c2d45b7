#pragma once

#include <vector>

#include "vipsolve/types.h"

namespace vipsolve {

// Componentwise max(u_i, 0).
Vector ProjectNonnegOrthant(const Vector& u);

// Radial projection onto {x : ||x|| <= radius}. Requires radius > 0.
Vector ProjectL2Ball(const Vector& u, double radius);

// Euclidean projection onto the probability simplex {x >= 0, sum x = 1}.
// Sort-based: find the threshold tau with sum max(u_i - tau, 0) = 1.
Vector ProjectSimplex(const Vector& u);

// Closed-form projection onto a half-space; identity for the whole space.
Vector ProjectHalfSpace(const Vector& u, const HalfSpace& h);

// Half-space {z : <a, z> <= <a, projected>} with a = pre_projection -
// projected. When `projected` is the projection of `pre_projection` onto a
// convex set C, C lies inside the returned half-space.
HalfSpace SupportingHalfSpace(const Vector& pre_projection,
                              const Vector& projected);

// Feasible-set factories.
FeasibleSet WholeSpace();
FeasibleSet NonnegOrthant();
FeasibleSet L2Ball(double radius);
FeasibleSet ProbabilitySimplex();
// Cartesian product of simplices; `block_sizes` partitions the coordinates.
FeasibleSet SimplexProduct(std::vector<Index> block_sizes);

}  // namespace vipsolve
