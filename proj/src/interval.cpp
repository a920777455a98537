#include "msharp/interval.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "detail/ext_math.hpp"
#include "msharp/error.hpp"

namespace msharp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Below this magnitude fma residuals may underflow, so exactness cannot be
// decided and both sides are nudged.
constexpr double kTiny = 0x1p-900;

double down(double v) { return std::nextafter(v, -kInf); }
double up(double v) { return std::nextafter(v, kInf); }

// A rounded result together with the sign of (exact - rounded); kUnknown
// when the sign cannot be decided.
constexpr int kUnknown = 2;

struct Rounded {
  double v;
  int err;
};

int sign_of(double e) { return (e > 0.0) - (e < 0.0); }

double lower_of(Rounded r) { return (r.err == 0 || r.err == 1) ? r.v : down(r.v); }
double upper_of(Rounded r) { return (r.err == 0 || r.err == -1) ? r.v : up(r.v); }

Rounded add_rounded(double a, double b) {
  const double s = a + b;
  if (!std::isfinite(s)) return {s, kUnknown};
  const double bb = s - a;
  const double e = (a - (s - bb)) + (b - bb);
  return {s, sign_of(e)};
}

Rounded mul_rounded(double a, double b) {
  const double m = a * b;
  if (a == 0.0 || b == 0.0) return {m, 0};
  if (!std::isfinite(m) || std::fabs(m) < kTiny) return {m, kUnknown};
  return {m, sign_of(std::fma(a, b, -m))};
}

Rounded div_rounded(double a, double b) {
  const double q = a / b;
  if (a == 0.0) return {q, 0};
  if (!std::isfinite(q) || std::fabs(q) < kTiny || std::fabs(a) < kTiny) return {q, kUnknown};
  const double r = std::fma(-q, b, a);
  return {q, sign_of(r) * sign_of(b)};
}

Rounded sqrt_rounded(double a) {
  const double s = std::sqrt(a);
  if (a == 0.0) return {s, 0};
  if (!std::isfinite(s) || a < kTiny) return {s, kUnknown};
  return {s, sign_of(std::fma(-s, s, a))};
}

// Extended-precision kernels are accurate to a few units of 2^-64, far
// inside half a double ulp, so one outward step after rounding encloses.
Interval from_extended(detail::ext lo, detail::ext hi) {
  return Interval(down(static_cast<double>(lo)), up(static_cast<double>(hi)));
}

void require_finite(const Interval& r) {
  if (std::isnan(r.lo()) || std::isnan(r.hi())) throw DomainError("interval operation produced NaN");
}

}  // namespace

Interval::Interval(double v) : lo_(v), hi_(v) {
  if (std::isnan(v)) throw DomainError("interval endpoint is NaN");
}

Interval::Interval(double lo, double hi) : lo_(lo), hi_(hi) {
  if (std::isnan(lo) || std::isnan(hi) || lo > hi)
    throw DomainError("invalid interval [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
}

double Interval::mignitude() const {
  if (lo_ > 0.0) return lo_;
  if (hi_ < 0.0) return -hi_;
  return 0.0;
}

Interval operator-(const Interval& a) { return Interval(-a.hi(), -a.lo()); }

Interval operator+(const Interval& a, const Interval& b) {
  return Interval(lower_of(add_rounded(a.lo(), b.lo())), upper_of(add_rounded(a.hi(), b.hi())));
}

Interval operator-(const Interval& a, const Interval& b) { return a + (-b); }

Interval operator*(const Interval& a, const Interval& b) {
  const Rounded c[4] = {mul_rounded(a.lo(), b.lo()), mul_rounded(a.lo(), b.hi()),
                        mul_rounded(a.hi(), b.lo()), mul_rounded(a.hi(), b.hi())};
  double lo = kInf;
  double hi = -kInf;
  for (const Rounded& r : c) {
    if (std::isnan(r.v)) throw DomainError("interval product produced NaN");
    lo = std::min(lo, lower_of(r));
    hi = std::max(hi, upper_of(r));
  }
  return Interval(lo, hi);
}

Interval operator/(const Interval& a, const Interval& b) {
  if (b.lo() <= 0.0 && b.hi() >= 0.0) throw DomainError("interval division by an interval containing 0");
  const Rounded c[4] = {div_rounded(a.lo(), b.lo()), div_rounded(a.lo(), b.hi()),
                        div_rounded(a.hi(), b.lo()), div_rounded(a.hi(), b.hi())};
  double lo = kInf;
  double hi = -kInf;
  for (const Rounded& r : c) {
    lo = std::min(lo, lower_of(r));
    hi = std::max(hi, upper_of(r));
  }
  Interval out(lo, hi);
  require_finite(out);
  return out;
}

Interval sqr(const Interval& a) {
  if (a.lo() >= 0.0) return Interval(lower_of(mul_rounded(a.lo(), a.lo())), upper_of(mul_rounded(a.hi(), a.hi())));
  if (a.hi() <= 0.0) return sqr(-a);
  const double m = std::max(-a.lo(), a.hi());
  return Interval(0.0, upper_of(mul_rounded(m, m)));
}

Interval sqrt(const Interval& a) {
  if (a.lo() < 0.0) throw DomainError("interval sqrt of negative values");
  return Interval(lower_of(sqrt_rounded(a.lo())), upper_of(sqrt_rounded(a.hi())));
}

Interval ln(const Interval& a) {
  if (!(a.lo() > 0.0)) throw DomainError("interval ln needs lo > 0, got " + std::to_string(a.lo()));
  return from_extended(std::log(detail::ext(a.lo())), std::log(detail::ext(a.hi())));
}

Interval ln1p(const Interval& a) {
  if (!(a.lo() > -1.0)) throw DomainError("interval ln1p needs lo > -1, got " + std::to_string(a.lo()));
  return from_extended(std::log1p(detail::ext(a.lo())), std::log1p(detail::ext(a.hi())));
}

Interval asinh(const Interval& a) {
  auto f = [](double v) -> detail::ext {
    return v < 0.0 ? -detail::asinh_ext(-detail::ext(v)) : detail::asinh_ext(v);
  };
  return from_extended(f(a.lo()), f(a.hi()));
}

Interval hull(const Interval& a, const Interval& b) {
  return Interval(std::min(a.lo(), b.lo()), std::max(a.hi(), b.hi()));
}

}  // namespace msharp
