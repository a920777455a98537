#pragma once

// Sharp weights for Q_{t1,p} < M < Q_{t2,p} (all a != b, p >= 1/2):
//
//   t1 <= (1/2) [1 + sqrt((1/t*)^(1/p) - 1)],   t2 >= (1/2) [1 + 1/sqrt(6p)],
//
// with t* = ln(1 + sqrt 2), plus the u-scale quantities that organise the
// sign analysis of f_{u,p} (u = (2t-1)^2).
//
// The two weight thresholds are rounded to double toward the admissible
// side: lower_weight_threshold never exceeds the exact t1 bound and
// upper_weight_threshold is never below the exact t2 bound.  The same
// holds for the Seiffert-mean constants.  The returned doubles are
// therefore themselves admissible weights.

namespace msharp {

/// Parameter pair (p, t) of the Q family with the derived u = (2t-1)^2.
struct PowerWeight {
  double p;
  double t;
  double u;

  /// Requires p >= 1/2 and 1/2 < t < 1.
  static PowerWeight from_weight(double p, double t);
  /// Requires p >= 1/2 and 0 < u < 1.
  static PowerWeight from_u(double p, double u);
};

struct ThresholdPair {
  double t1_max;  // largest admissible lower weight
  double t2_min;  // smallest admissible upper weight
};

/// Sharp weights for the second Seiffert mean T between S and C of the
/// weighted pair.
struct SeiffertConstants {
  double alpha_max;   // S lower:  (1/2)(1 + sqrt(16/pi^2 - 1))
  double beta_min;    // S upper:  (3 + sqrt 6)/6
  double lambda_max;  // C lower:  (1/2)(1 + sqrt(4/pi - 1))
  double mu_min;      // C upper:  (3 + sqrt 3)/6
};

/// ln(1 + sqrt 2) = asinh(1).
double t_star();

double lower_weight_threshold(double p);
double upper_weight_threshold(double p);

/// (1/t*)^(1/p) - 1, the zero of h_p.
double u_zero(double p);
/// (sqrt2 t* - 1) / (sqrt2 (2p-1) t* + 1), the limit of g1/g2 at x = 1.
double u_low(double p);
/// 1/(6p), the limit of g1/g2 at x = 0.
double u_high(double p);

/// p ln(1+u) + ln t*, the limit of f_{u,p}(x) as x -> 1.  Requires u > -1.
double h_p(double u, double p);

ThresholdPair theorem_thresholds(double p);

/// (2t-1)^2 for t in [0,1].
double weight_to_u(double t);
/// (1 + sqrt u)/2 for u in [0,1]; inverse of weight_to_u on [1/2,1].
double u_to_weight(double u);

SeiffertConstants seiffert_constants();

}  // namespace msharp
