#include "vipsolve/schedule.h"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace vipsolve {
namespace {

void RequireFinite(double c, double a, double b, double p) {
  if (!std::isfinite(c) || !std::isfinite(a) || !std::isfinite(b) ||
      !std::isfinite(p)) {
    throw std::invalid_argument("PowerSchedule: non-finite parameter");
  }
}

}  // namespace

PowerSchedule PowerSchedule::ForAnchor(double c, double a, double b, double p) {
  RequireFinite(c, a, b, p);
  if (!(a > 0.0 && b > 0.0)) {
    throw std::invalid_argument("anchor schedule: a and b must be positive");
  }
  if (!(p > 0.0 && p <= 1.0)) {
    throw std::invalid_argument("anchor schedule: exponent must lie in (0, 1]");
  }
  if (!(c > 0.0 && c <= std::pow(b, p))) {
    throw std::invalid_argument("anchor schedule: values must lie in (0, 1]");
  }
  return PowerSchedule(c, a, b, p);
}

PowerSchedule PowerSchedule::ForDirection(double c, double a, double b,
                                          double p) {
  RequireFinite(c, a, b, p);
  if (!(a > 0.0 && b > 0.0)) {
    throw std::invalid_argument("direction schedule: a and b must be positive");
  }
  if (!(p > 1.0)) {
    throw std::invalid_argument(
        "direction schedule: exponent must exceed 1 (summability)");
  }
  if (!(c >= 0.0)) {
    throw std::invalid_argument("direction schedule: c must be nonnegative");
  }
  return PowerSchedule(c, a, b, p);
}

PowerSchedule PowerSchedule::Zero() { return PowerSchedule(0.0, 1.0, 1.0, 2.0); }

PowerSchedule PowerSchedule::Unchecked(double c, double a, double b, double p) {
  return PowerSchedule(c, a, b, p);
}

double PowerSchedule::operator()(std::int64_t j) const {
  return c_ / std::pow(a_ * static_cast<double>(j) + b_, p_);
}

std::string PowerSchedule::ToString() const {
  std::ostringstream os;
  os << c_ << "/(" << a_ << "*j+" << b_ << ")^" << p_;
  return os.str();
}

}  // namespace vipsolve
