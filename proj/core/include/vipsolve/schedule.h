#pragma once

#include <cstdint>
#include <string>

namespace vipsolve {

// j -> c / (a*j + b)^p. Construct through ForAnchor / ForDirection so the
// parameter ranges the convergence theory needs are checked once, up front.
class PowerSchedule {
 public:
  // Halpern anchor weights: p in (0, 1] (not summable, vanishing), a, b > 0,
  // and 0 < c <= b^p so every value lies in (0, 1].
  static PowerSchedule ForAnchor(double c, double a, double b, double p);
  // Conjugate-direction weights: c >= 0, a, b > 0, p > 1 (summable).
  static PowerSchedule ForDirection(double c, double a, double b, double p);
  // Identically zero direction weights (no conjugate term).
  static PowerSchedule Zero();
  // Unchecked; for tests and for the Halpern-free special cases.
  static PowerSchedule Unchecked(double c, double a, double b, double p);

  double operator()(std::int64_t j) const;

  double c() const { return c_; }
  double a() const { return a_; }
  double b() const { return b_; }
  double p() const { return p_; }
  std::string ToString() const;

 private:
  PowerSchedule(double c, double a, double b, double p)
      : c_(c), a_(a), b_(b), p_(p) {}

  double c_, a_, b_, p_;
};

}  // namespace vipsolve
