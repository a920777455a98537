#include "msharp/lemma.hpp"

#include <cmath>
#include <string>

#include "detail/reduced.hpp"
#include "msharp/error.hpp"
#include "msharp/thresholds.hpp"

namespace msharp::lemma {

using detail::ext;
using detail::kSeriesSwitch;

namespace {

void require_open_unit(double x) {
  if (!(x > 0.0 && x < 1.0)) throw DomainError("x must lie in (0,1), got " + std::to_string(x));
}

void require_half_open_unit(double x) {
  if (!(x > 0.0 && x <= 1.0)) throw DomainError("x must lie in (0,1], got " + std::to_string(x));
}

void require_u(double u) {
  if (!(u >= 0.0 && u <= 1.0)) throw DomainError("u must lie in [0,1], got " + std::to_string(u));
}

void require_power(double p) {
  if (!(p >= 0.5) || !std::isfinite(p))
    throw DomainError("power p must be finite and >= 1/2, got " + std::to_string(p));
}

ext g1_ext(ext x) {
  if (x < kSeriesSwitch) return x * x * x * detail::horner(detail::kG1Table, x * x);
  return detail::asinh_ext(x) - x / std::sqrt(1.0L + x * x);
}

ext g2_ext(ext x, ext p) {
  const ext y = x * x;
  return (2.0L * p - 1.0L) * y * detail::asinh_ext(x) + y * x / std::sqrt(1.0L + y);
}

// Valid on [0,1]; ratio(0) = 1/(6p).
ext ratio_ext(ext x, ext p) {
  if (x < kSeriesSwitch) {
    const ext y = x * x;
    const ext num = detail::horner(detail::kG1Table, y);
    const ext den = (2.0L * p - 1.0L) * (1.0L + y * detail::asinh_ratio_m1_over_y(x)) +
                    1.0L / std::sqrt(1.0L + y);
    return num / den;
  }
  return g1_ext(x) / g2_ext(x, p);
}

ext h_ext(ext x) { return (1.0L + x * x) * (1.0L + detail::asinh_ratio_m1(x)); }

ext prefactor_ext(ext x, ext u, ext p) {
  const ext y = x * x;
  const ext m = detail::profile_ext(MeanKind::NeumanSandor, x);
  return x * ((2.0L * p - 1.0L) + m / std::sqrt(1.0L + y)) / (1.0L + u * y);
}

}  // namespace

double f(double x, double u, double p) {
  require_open_unit(x);
  require_u(u);
  require_power(p);
  return static_cast<double>(detail::log_gap_ext(MeanKind::NeumanSandor, x, u, p));
}

double f_scaled(double x, double u, double p) {
  require_open_unit(x);
  require_u(u);
  require_power(p);
  return static_cast<double>(detail::log_gap_over_y_ext(MeanKind::NeumanSandor, x, u, p));
}

double f_prime_prefactor(double x, double u, double p) {
  require_open_unit(x);
  require_u(u);
  require_power(p);
  return static_cast<double>(prefactor_ext(x, u, p));
}

double f_prime(double x, double u, double p) {
  require_open_unit(x);
  require_u(u);
  require_power(p);
  return static_cast<double>(prefactor_ext(x, u, p) * (ext(u) - ratio_ext(x, p)));
}

double g1(double x) {
  require_half_open_unit(x);
  return static_cast<double>(g1_ext(x));
}

double g2(double x, double p) {
  require_half_open_unit(x);
  require_power(p);
  return static_cast<double>(g2_ext(x, p));
}

double ratio(double x, double p) {
  require_half_open_unit(x);
  require_power(p);
  return static_cast<double>(ratio_ext(x, p));
}

double denom_D(double x, double p) {
  if (!(x >= 0.0 && x < 1.0)) throw DomainError("x must lie in [0,1), got " + std::to_string(x));
  require_power(p);
  const ext y = ext(x) * x;
  const ext pp = p;
  return static_cast<double>(2.0L * (2.0L * pp - 1.0L) * std::sqrt(1.0L + y) * h_ext(x) +
                             (2.0L * pp + 1.0L) * y + 2.0L * pp + 2.0L);
}

double h(double x) {
  if (!(x >= 0.0) || !std::isfinite(x)) throw DomainError("h needs finite x >= 0");
  return static_cast<double>(h_ext(x));
}

double h1(double x) {
  if (!(x >= 0.0) || !std::isfinite(x)) throw DomainError("h1 needs finite x >= 0");
  const ext xe = x;
  const ext y = xe * xe;
  if (xe < kSeriesSwitch) return static_cast<double>(y * xe * detail::horner(detail::kH1Table, y));
  const ext as = detail::asinh_ext(xe);
  return static_cast<double>(xe * std::sqrt(1.0L + y) - as + y * as);
}

double h2(double x) {
  if (!(x >= 0.0) || !std::isfinite(x)) throw DomainError("h2 needs finite x >= 0");
  const ext xe = x;
  return static_cast<double>(3.0L * xe / std::sqrt(1.0L + xe * xe) + 2.0L * detail::asinh_ext(xe));
}

SignRegime find_critical_x(double u, double p) {
  require_u(u);
  require_power(p);
  if (u >= u_high(p)) return {SignRegime::Kind::AlwaysPositive, 0.0};
  if (u <= u_low(p)) return {SignRegime::Kind::AlwaysNegative, 0.0};
  // ratio is strictly decreasing: ratio(0) = 1/(6p) > u > ratio(1) = u_low.
  double lo = 0.0;
  double hi = 1.0;
  while (hi - lo > 1e-14) {
    const double mid = 0.5 * (lo + hi);
    if (ratio_ext(mid, p) > u)
      lo = mid;
    else
      hi = mid;
  }
  return {SignRegime::Kind::DipThenRise, 0.5 * (lo + hi)};
}

}  // namespace msharp::lemma
