#pragma once

#include <cmath>
#include <limits>

namespace msharp::testing {

// Distance between two doubles in units of the spacing at the reference.
inline double ulps(double value, double reference) {
  const double a = std::fabs(reference);
  const double spacing = a == 0.0 ? std::numeric_limits<double>::denorm_min()
                                  : std::nextafter(a, std::numeric_limits<double>::infinity()) - a;
  return std::fabs(value - reference) / spacing;
}

inline double rel(double value, double reference) { return std::fabs(value - reference) / std::fabs(reference); }

}  // namespace msharp::testing
