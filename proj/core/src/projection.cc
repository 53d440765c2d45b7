#include "vipsolve/projection.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace vipsolve {

HalfSpace::HalfSpace(Vector normal, double offset)
    : normal_(std::move(normal)), offset_(offset) {
  whole_space_ = normal_.squaredNorm() == 0.0;
  if (whole_space_ && offset_ < 0.0) {
    throw std::invalid_argument("HalfSpace: zero normal with negative offset");
  }
}

bool HalfSpace::contains(const Vector& z, double tol) const {
  if (whole_space_) return true;
  return normal_.dot(z) <= offset_ + tol;
}

bool AllFinite(const Vector& v) { return v.allFinite(); }

Vector ProjectNonnegOrthant(const Vector& u) { return u.cwiseMax(0.0); }

Vector ProjectL2Ball(const Vector& u, double radius) {
  if (!(radius > 0.0)) {
    throw std::invalid_argument("ProjectL2Ball: radius must be positive");
  }
  const double norm = u.norm();
  if (norm <= radius) return u;
  return (radius / norm) * u;
}

Vector ProjectSimplex(const Vector& u) {
  const Index d = u.size();
  if (d < 1) throw std::invalid_argument("ProjectSimplex: empty vector");
  std::vector<double> sorted(u.data(), u.data() + d);
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double running = 0.0;
  double tau = 0.0;
  for (Index k = 0; k < d; ++k) {
    running += sorted[k];
    const double candidate = (running - 1.0) / static_cast<double>(k + 1);
    if (sorted[k] - candidate > 0.0) tau = candidate;
  }
  Vector x = (u.array() - tau).cwiseMax(0.0);
  // Round-off in the running sum can leave |sum - 1| ~ d * eps; rescale the
  // support so the output sits on the simplex to working precision.
  const double total = x.sum();
  if (total > 0.0) x /= total;
  return x;
}

Vector ProjectHalfSpace(const Vector& u, const HalfSpace& h) {
  if (h.is_whole_space()) return u;
  const Vector& a = h.normal();
  const double excess = a.dot(u) - h.offset();
  if (excess <= 0.0) return u;
  return u - (excess / a.squaredNorm()) * a;
}

HalfSpace SupportingHalfSpace(const Vector& pre_projection,
                              const Vector& projected) {
  if (pre_projection.size() != projected.size()) {
    throw std::invalid_argument("SupportingHalfSpace: dimension mismatch");
  }
  Vector a = pre_projection - projected;
  const double b = a.dot(projected);
  return HalfSpace(std::move(a), b);
}

FeasibleSet WholeSpace() {
  return {[](const Vector& u) { return u; },
          [](const Vector& u, double) { return AllFinite(u); }, "whole-space"};
}

FeasibleSet NonnegOrthant() {
  return {ProjectNonnegOrthant,
          [](const Vector& u, double tol) { return u.minCoeff() >= -tol; },
          "nonneg-orthant"};
}

FeasibleSet L2Ball(double radius) {
  if (!(radius > 0.0)) {
    throw std::invalid_argument("L2Ball: radius must be positive");
  }
  // Membership uses a fixed 1e-10 slack on top of the caller tolerance so a
  // freshly projected point is never classified as exterior.
  return {[radius](const Vector& u) { return ProjectL2Ball(u, radius); },
          [radius](const Vector& u, double tol) {
            return u.norm() <= radius + std::max(tol, 1e-10);
          },
          "l2-ball"};
}

namespace {

bool OnSimplex(const Eigen::Ref<const Vector>& u, double tol) {
  return u.minCoeff() >= -tol && std::abs(u.sum() - 1.0) <= tol;
}

}  // namespace

FeasibleSet ProbabilitySimplex() {
  return {ProjectSimplex,
          [](const Vector& u, double tol) { return OnSimplex(u, tol); },
          "simplex"};
}

FeasibleSet SimplexProduct(std::vector<Index> block_sizes) {
  for (Index n : block_sizes) {
    if (n < 1) throw std::invalid_argument("SimplexProduct: empty block");
  }
  const Index total =
      std::accumulate(block_sizes.begin(), block_sizes.end(), Index{0});
  auto project = [block_sizes, total](const Vector& u) {
    if (u.size() != total) {
      throw std::invalid_argument("SimplexProduct: dimension mismatch");
    }
    Vector out(total);
    Index offset = 0;
    for (Index n : block_sizes) {
      out.segment(offset, n) = ProjectSimplex(u.segment(offset, n));
      offset += n;
    }
    return out;
  };
  auto contains = [block_sizes, total](const Vector& u, double tol) {
    if (u.size() != total) return false;
    Index offset = 0;
    for (Index n : block_sizes) {
      if (!OnSimplex(u.segment(offset, n), tol)) return false;
      offset += n;
    }
    return true;
  };
  return {std::move(project), std::move(contains), "simplex-product"};
}

}  // namespace vipsolve
