#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace vipsolve {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

// A single-valued operator B : R^d -> R^d. `lipschitz` is an upper bound on
// the Lipschitz constant when one is known analytically.
struct OperatorSpec {
  std::function<Vector(const Vector&)> eval;
  std::optional<double> lipschitz;
  std::string label;

  Vector operator()(const Vector& x) const { return eval(x); }
};

// Closed convex set given by its Euclidean projection and a membership test.
struct FeasibleSet {
  std::function<Vector(const Vector&)> project;
  std::function<bool(const Vector&, double)> contains;
  std::string label;
};

// {z : <normal, z> <= offset}. A zero normal denotes the whole space.
class HalfSpace {
 public:
  // Throws std::invalid_argument when normal == 0 and offset < 0 (empty set).
  HalfSpace(Vector normal, double offset);

  const Vector& normal() const { return normal_; }
  double offset() const { return offset_; }
  bool is_whole_space() const { return whole_space_; }
  bool contains(const Vector& z, double tol) const;

 private:
  Vector normal_;
  double offset_;
  bool whole_space_;
};

// Problem-specific diagnostic evaluated on the trace, e.g. a duality gap.
struct NamedMetric {
  std::string name;
  std::function<double(const Vector&)> eval;
};

struct ProblemInstance {
  std::string label;
  Index dim = 0;
  OperatorSpec op;
  FeasibleSet set;
  std::vector<NamedMetric> metrics;
};

bool AllFinite(const Vector& v);

}  // namespace vipsolve
