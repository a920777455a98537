#pragma once

// Two-argument means and the weighted power family
//
//   Q_{t,p}(a,b) = C(ta+(1-t)b, tb+(1-t)a)^p * A(a,b)^(1-p).
//
// Every mean here is symmetric and homogeneous of degree one, so it factors
// as A(a,b) * m(x) with the deviation x = |a-b|/(a+b) in [0,1).  All
// evaluation goes through that reduction.  Results are rounded once to
// double from an extended-precision intermediate.

#include <array>
#include <optional>
#include <string_view>

namespace msharp {

/// Unordered pair of positive reals.  a == b is allowed.
class PositivePair {
 public:
  PositivePair(double a, double b);

  double a() const { return a_; }
  double b() const { return b_; }

 private:
  double a_;
  double b_;
};

/// Reduced variable x = |a-b|/(a+b), 0 <= x < 1.
class Deviation {
 public:
  explicit Deviation(double x);

  double value() const { return x_; }

 private:
  double x_;
};

enum class MeanKind {
  Arithmetic,      // A = (a+b)/2
  ContraHarmonic,  // C = (a^2+b^2)/(a+b)
  RootMeanSquare,  // S = sqrt((a^2+b^2)/2)
  SecondSeiffert,  // T = (a-b) / (2 atan((a-b)/(a+b)))
  NeumanSandor,    // M = (a-b) / (2 asinh((a-b)/(a+b)))
};

inline constexpr std::array<MeanKind, 5> kAllMeanKinds = {
    MeanKind::Arithmetic, MeanKind::ContraHarmonic, MeanKind::RootMeanSquare,
    MeanKind::SecondSeiffert, MeanKind::NeumanSandor};

std::string_view to_string(MeanKind kind);

/// Accepts the full names above (snake_case) and the short tags
/// a, c, s, t, m / ns.
std::optional<MeanKind> parse_mean_kind(std::string_view name);

Deviation deviation(const PositivePair& pair);

/// m(x) with mean = A(a,b) * m(x):
///   A: 1, C: 1+x^2, S: sqrt(1+x^2), T: x/atan(x), M: x/asinh(x).
/// T and M use a truncated Maclaurin series below x = 2^-20; m(0) == 1.
double normalized_profile(MeanKind kind, Deviation x);

double mean(MeanKind kind, const PositivePair& pair);

/// (ta+(1-t)b, tb+(1-t)a) for t in [0,1].
PositivePair weighted_pair(const PositivePair& pair, double t);

/// Q_{t,p}(a,b) = A(a,b) (1 + u x^2)^p with u = (2t-1)^2, evaluated as
/// A * exp(p * log1p(u x^2)).  t in [0,1], p >= 1/2.
double q_mean(const PositivePair& pair, double t, double p);

/// ln(Q_{t,p} / mean_kind) in reduced form:
///   p log1p(u x^2) - ln m(x),  u = (2t-1)^2.
/// Both logarithms avoid cancellation for small x.
double log_q_over_mean(MeanKind kind, Deviation x, double t, double p);

/// log_q_over_mean divided by x^2, for 0 < x < 1.  Same sign as the
/// unscaled value but stays representable when x^2 underflows, which is
/// where the sharp upper bound fails first.
double log_q_over_mean_scaled(MeanKind kind, double x, double t, double p);

}  // namespace msharp
