#pragma once

// Analytic machinery behind the sign of
//
//   f_{u,p}(x) = p ln(1 + u x^2) - ln x + ln asinh x,   0 < x < 1,
//
// which equals ln(Q_{t,p}/M) at deviation x when u = (2t-1)^2.
// f' = prefactor * (u - g1/g2) with a positive prefactor, and g1/g2
// decreases from 1/(6p) at 0+ to u_low(p) at 1.

namespace msharp::lemma {

/// f_{u,p}(x) for 0 < x < 1, u in [0,1], p >= 1/2.
double f(double x, double u, double p);

/// f_{u,p}(x) / x^2.  Same sign as f, representable down to the smallest
/// subnormal x.
double f_scaled(double x, double u, double p);

/// f' in factored form: prefactor(x,u,p) * (u - ratio(x,p)).
double f_prime(double x, double u, double p);

/// x [(2p-1) + x/(sqrt(1+x^2) asinh x)] / (1 + u x^2) > 0.
double f_prime_prefactor(double x, double u, double p);

/// asinh x - x/sqrt(1+x^2), 0 < x <= 1.
double g1(double x);

/// (2p-1) x^2 asinh x + x^3/sqrt(1+x^2), 0 < x <= 1.
double g2(double x, double p);

/// g1/g2 for 0 < x <= 1; the removable 0/0 at the origin is resolved by
/// dividing both series by x^3.
double ratio(double x, double p);

/// D(x) with g1'/g2' = 1/D:
///   2(2p-1) sqrt(1+x^2) h(x) + (2p+1) x^2 + 2p + 2.   D(0) = 6p.
double denom_D(double x, double p);

/// (1+x^2) asinh(x) / x for x >= 0, h(0) = 1.
double h(double x);

/// x sqrt(1+x^2) - asinh x + x^2 asinh x  (x^2 h'(x)).
double h1(double x);

/// 3x/sqrt(1+x^2) + 2 asinh x  (h1'(x) / x).
double h2(double x);

/// Shape of f on (0,1) for given (u, p).
struct SignRegime {
  enum class Kind {
    AlwaysPositive,  // u >= 1/(6p): f increasing, f > 0
    AlwaysNegative,  // u <= u_low(p): f decreasing, f < 0
    DipThenRise,     // f decreasing on (0,x0), increasing on (x0,1)
  };

  Kind kind;
  double x0 = 0.0;  // only meaningful for DipThenRise
};

/// Classifies (u,p); in the middle regime x0 solves ratio(x0,p) = u,
/// located by bisection to a bracket of width <= 1e-14.
SignRegime find_critical_x(double u, double p);

}  // namespace msharp::lemma
