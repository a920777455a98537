#include "msharp/means.hpp"

#include <cmath>
#include <string>

#include "detail/reduced.hpp"
#include "msharp/error.hpp"

namespace msharp {

using detail::ext;

namespace {

void require_weight(double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw DomainError("weight t must lie in [0,1], got " + std::to_string(t));
}

void require_power(double p) {
  if (!(p >= 0.5) || !std::isfinite(p)) throw DomainError("power p must be finite and >= 1/2, got " + std::to_string(p));
}

struct Reduced {
  ext arithmetic;
  ext x;
};

// One rounding pattern for the whole library: |a-b| and a+b in extended
// precision, then the quotient.
Reduced reduce(const PositivePair& pair) {
  const ext a = pair.a();
  const ext b = pair.b();
  const ext sum = a + b;
  return {sum / 2.0L, std::fabs(a - b) / sum};
}

}  // namespace

PositivePair::PositivePair(double a, double b) : a_(a), b_(b) {
  if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b))
    throw DomainError("pair arguments must be finite and positive");
}

Deviation::Deviation(double x) : x_(x) {
  if (!(x >= 0.0 && x < 1.0)) throw DomainError("deviation must lie in [0,1), got " + std::to_string(x));
}

std::string_view to_string(MeanKind kind) {
  switch (kind) {
    case MeanKind::Arithmetic: return "arithmetic";
    case MeanKind::ContraHarmonic: return "contra_harmonic";
    case MeanKind::RootMeanSquare: return "root_mean_square";
    case MeanKind::SecondSeiffert: return "second_seiffert";
    case MeanKind::NeumanSandor: return "neuman_sandor";
  }
  return "unknown";
}

std::optional<MeanKind> parse_mean_kind(std::string_view name) {
  for (MeanKind k : kAllMeanKinds)
    if (name == to_string(k)) return k;
  if (name == "a") return MeanKind::Arithmetic;
  if (name == "c") return MeanKind::ContraHarmonic;
  if (name == "s") return MeanKind::RootMeanSquare;
  if (name == "t") return MeanKind::SecondSeiffert;
  if (name == "m" || name == "ns") return MeanKind::NeumanSandor;
  return std::nullopt;
}

namespace detail {

ext profile_ext(MeanKind kind, ext x) {
  const ext y = x * x;
  switch (kind) {
    case MeanKind::Arithmetic: return 1.0L;
    case MeanKind::ContraHarmonic: return 1.0L + y;
    case MeanKind::RootMeanSquare: return std::sqrt(1.0L + y);
    case MeanKind::SecondSeiffert:
      if (x < kProfileSwitch) return 1.0L + y * (1.0L / 3.0L - y * (4.0L / 45.0L));
      return x / std::atan(x);
    case MeanKind::NeumanSandor:
      if (x < kProfileSwitch) return 1.0L + y * (1.0L / 6.0L - y * (17.0L / 360.0L));
      return x / asinh_ext(x);
  }
  return 1.0L;
}

ext log_profile_ext(MeanKind kind, ext x) {
  const ext y = x * x;
  switch (kind) {
    case MeanKind::Arithmetic: return 0.0L;
    case MeanKind::ContraHarmonic: return std::log1p(y);
    case MeanKind::RootMeanSquare: return 0.5L * std::log1p(y);
    case MeanKind::SecondSeiffert: return -std::log1p(atan_ratio_m1(x));
    case MeanKind::NeumanSandor: return -std::log1p(asinh_ratio_m1(x));
  }
  return 0.0L;
}

ext log_profile_over_y_ext(MeanKind kind, ext x) {
  const ext y = x * x;
  switch (kind) {
    case MeanKind::Arithmetic: return 0.0L;
    case MeanKind::ContraHarmonic: return log1p_ratio(y);
    case MeanKind::RootMeanSquare: return 0.5L * log1p_ratio(y);
    case MeanKind::SecondSeiffert: {
      const ext r = atan_ratio_m1_over_y(x);
      return -r * log1p_ratio(r * y);
    }
    case MeanKind::NeumanSandor: {
      const ext r = asinh_ratio_m1_over_y(x);
      return -r * log1p_ratio(r * y);
    }
  }
  return 0.0L;
}

ext log_gap_ext(MeanKind kind, ext x, ext u, ext p) {
  return p * std::log1p(u * x * x) - log_profile_ext(kind, x);
}

ext log_gap_over_y_ext(MeanKind kind, ext x, ext u, ext p) {
  return p * u * log1p_ratio(u * x * x) - log_profile_over_y_ext(kind, x);
}

}  // namespace detail

Deviation deviation(const PositivePair& pair) {
  return Deviation(static_cast<double>(reduce(pair).x));
}

double normalized_profile(MeanKind kind, Deviation x) {
  return static_cast<double>(detail::profile_ext(kind, x.value()));
}

double mean(MeanKind kind, const PositivePair& pair) {
  const Reduced r = reduce(pair);
  return static_cast<double>(r.arithmetic * detail::profile_ext(kind, r.x));
}

PositivePair weighted_pair(const PositivePair& pair, double t) {
  require_weight(t);
  const ext w = t;
  const ext a = pair.a();
  const ext b = pair.b();
  const ext a_new = w * a + (1.0L - w) * b;
  const ext b_new = w * b + (1.0L - w) * a;
  return PositivePair(static_cast<double>(a_new), static_cast<double>(b_new));
}

double q_mean(const PositivePair& pair, double t, double p) {
  require_weight(t);
  require_power(p);
  const Reduced r = reduce(pair);
  const ext u = detail::weight_to_u_ext(t);
  return static_cast<double>(r.arithmetic * std::exp(ext(p) * std::log1p(u * r.x * r.x)));
}

double log_q_over_mean(MeanKind kind, Deviation x, double t, double p) {
  require_weight(t);
  require_power(p);
  return static_cast<double>(detail::log_gap_ext(kind, x.value(), detail::weight_to_u_ext(t), p));
}

double log_q_over_mean_scaled(MeanKind kind, double x, double t, double p) {
  if (!(x > 0.0 && x < 1.0)) throw DomainError("scaled log ratio needs 0 < x < 1");
  require_weight(t);
  require_power(p);
  return static_cast<double>(detail::log_gap_over_y_ext(kind, x, detail::weight_to_u_ext(t), p));
}

}  // namespace msharp
