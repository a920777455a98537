#include "msharp/thresholds.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "detail/ext_math.hpp"
#include "msharp/error.hpp"

namespace msharp {

using detail::ext;

namespace {

void require_power(double p) {
  if (!(p >= 0.5) || !std::isfinite(p))
    throw DomainError("power p must be finite and >= 1/2, got " + std::to_string(p));
}

enum class Toward { Down, Up };

// Round an extended value to a double on the requested side.  A candidate
// within a few extended ulps of the value is stepped once more, since the
// extended value itself carries that much error.
double round_toward(ext v, Toward dir) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  const ext guard = 8.0L * std::numeric_limits<ext>::epsilon() * std::fabs(v);
  double d = static_cast<double>(v);
  if (dir == Toward::Down) {
    if (ext(d) > v) d = std::nextafter(d, -kInf);
    if (v - ext(d) < guard) d = std::nextafter(d, -kInf);
  } else {
    if (ext(d) < v) d = std::nextafter(d, kInf);
    if (ext(d) - v < guard) d = std::nextafter(d, kInf);
  }
  return d;
}

ext t_star_ext() { return std::log1p(std::sqrt(2.0L)); }

ext log_t_star_ext() { return std::log(t_star_ext()); }

ext u_zero_ext(double p) { return std::expm1(-log_t_star_ext() / ext(p)); }

}  // namespace

PowerWeight PowerWeight::from_weight(double p, double t) {
  require_power(p);
  if (!(t > 0.5 && t < 1.0)) throw DomainError("weight t must lie in (1/2,1), got " + std::to_string(t));
  return {p, t, weight_to_u(t)};
}

PowerWeight PowerWeight::from_u(double p, double u) {
  require_power(p);
  if (!(u > 0.0 && u < 1.0)) throw DomainError("u must lie in (0,1), got " + std::to_string(u));
  return {p, u_to_weight(u), u};
}

double t_star() { return static_cast<double>(t_star_ext()); }

double lower_weight_threshold(double p) {
  require_power(p);
  return round_toward(0.5L * (1.0L + std::sqrt(u_zero_ext(p))), Toward::Down);
}

double upper_weight_threshold(double p) {
  require_power(p);
  return round_toward(0.5L * (1.0L + 1.0L / std::sqrt(6.0L * ext(p))), Toward::Up);
}

double u_zero(double p) {
  require_power(p);
  return static_cast<double>(u_zero_ext(p));
}

double u_low(double p) {
  require_power(p);
  const ext s = std::sqrt(2.0L) * t_star_ext();
  return static_cast<double>((s - 1.0L) / (s * (2.0L * ext(p) - 1.0L) + 1.0L));
}

double u_high(double p) {
  require_power(p);
  return static_cast<double>(1.0L / (6.0L * ext(p)));
}

double h_p(double u, double p) {
  require_power(p);
  if (!(u > -1.0)) throw DomainError("h_p needs u > -1, got " + std::to_string(u));
  return static_cast<double>(ext(p) * std::log1p(ext(u)) + log_t_star_ext());
}

ThresholdPair theorem_thresholds(double p) {
  return {lower_weight_threshold(p), upper_weight_threshold(p)};
}

double weight_to_u(double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw DomainError("weight t must lie in [0,1], got " + std::to_string(t));
  return static_cast<double>(detail::weight_to_u_ext(t));
}

double u_to_weight(double u) {
  if (!(u >= 0.0 && u <= 1.0)) throw DomainError("u must lie in [0,1], got " + std::to_string(u));
  return static_cast<double>(0.5L * (1.0L + std::sqrt(ext(u))));
}

SeiffertConstants seiffert_constants() {
  constexpr ext pi = std::numbers::pi_v<ext>;
  const ext sqrt3 = std::sqrt(3.0L);
  const ext sqrt6 = std::sqrt(6.0L);
  return {
      round_toward(0.5L * (1.0L + std::sqrt(16.0L / (pi * pi) - 1.0L)), Toward::Down),
      round_toward((3.0L + sqrt6) / 6.0L, Toward::Up),
      round_toward(0.5L * (1.0L + std::sqrt(4.0L / pi - 1.0L)), Toward::Down),
      round_toward((3.0L + sqrt3) / 6.0L, Toward::Up),
  };
}

}  // namespace msharp
