#pragma once

// Closed intervals of doubles with outward rounding.
//
// Arithmetic results are nudged one ulp outward only on the side where the
// rounded result may have crossed the exact value; the side is detected
// with error-free transforms (two-sum, fma residuals).  Transcendentals are
// evaluated in extended precision, rounded, and nudged one ulp outward on
// both ends.  Domain violations throw DomainError.

#include <algorithm>

namespace msharp {

class Interval {
 public:
  Interval() = default;
  explicit Interval(double v);
  Interval(double lo, double hi);

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  double width() const { return hi_ - lo_; }
  double mid() const { return lo_ + 0.5 * (hi_ - lo_); }

  bool contains(double v) const { return lo_ <= v && v <= hi_; }
  bool contains(const Interval& o) const { return lo_ <= o.lo_ && o.hi_ <= hi_; }
  bool positive() const { return lo_ > 0.0; }
  bool negative() const { return hi_ < 0.0; }

  /// Smallest distance from zero over the interval (0 if it straddles zero).
  double mignitude() const;
  double magnitude() const { return std::max(-lo_, hi_); }

 private:
  double lo_ = 0.0;
  double hi_ = 0.0;
};

Interval operator-(const Interval& a);
Interval operator+(const Interval& a, const Interval& b);
Interval operator-(const Interval& a, const Interval& b);
Interval operator*(const Interval& a, const Interval& b);
Interval operator/(const Interval& a, const Interval& b);

inline Interval operator+(const Interval& a, double b) { return a + Interval(b); }
inline Interval operator+(double a, const Interval& b) { return Interval(a) + b; }
inline Interval operator-(const Interval& a, double b) { return a - Interval(b); }
inline Interval operator-(double a, const Interval& b) { return Interval(a) - b; }
inline Interval operator*(const Interval& a, double b) { return a * Interval(b); }
inline Interval operator*(double a, const Interval& b) { return Interval(a) * b; }
inline Interval operator/(const Interval& a, double b) { return a / Interval(b); }
inline Interval operator/(double a, const Interval& b) { return Interval(a) / b; }

Interval sqr(const Interval& a);
Interval sqrt(const Interval& a);
Interval ln(const Interval& a);
/// ln(1 + a), a.lo > -1.
Interval ln1p(const Interval& a);
Interval asinh(const Interval& a);

/// Convex hull.
Interval hull(const Interval& a, const Interval& b);

}  // namespace msharp
