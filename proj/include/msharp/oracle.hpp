#pragma once

// Reference values for the accuracy tests.
//
// Evaluation runs in binary floating point with ~80 and ~55 significant
// decimal digits; the difference of the two runs is the error estimate.
// Only +, -, *, /, sqrt and frexp/ldexp come from the multiprecision
// backend.  ln, atanh, asinh, atan, exp and pi are computed here from their
// own series, with no code shared with the double-precision library path.

#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace msharp {

struct OracleValue {
  std::string expr;
  int digits = 0;
  std::string decimal;       // `digits` significant digits, scientific form
  double hi = 0.0;           // value ~= hi + lo
  double lo = 0.0;
  double error_bound = 0.0;  // absolute

  long double extended() const { return static_cast<long double>(hi) + lo; }
};

/// Registered ids and their arity:
///   t_star, ln_t_star, seiffert_{alpha,beta,lambda,mu}         ()
///   profile_<kind>, neuman_sandor_profile, ln, asinh, atan,
///   g1, h, h1, h2                                              (x)
///   mean_<kind>, deviation                                     (a, b)
///   q_mean                                                     (a, b, t, p)
///   f, f_over_x2, f_prime                                      (x, u, p)
///   g2, ratio, denom_D                                         (x, p)
///   u_zero, u_low, u_high, lower_weight_threshold,
///   upper_weight_threshold                                     (p)
///   h_p                                                        (u, p)
///   weight_to_u                                                (t)
/// <kind> is arithmetic, contra_harmonic, root_mean_square, second_seiffert
/// or neuman_sandor.  Throws std::invalid_argument for an unknown id, a
/// wrong number of inputs or digits outside [1, 40].
OracleValue oracle_eval(std::string_view expr_id, std::span<const double> inputs, int digits = 34);
OracleValue oracle_eval(std::string_view expr_id, std::initializer_list<double> inputs, int digits = 34);

std::vector<std::string> oracle_expressions();

/// Spacing of doubles in the binade of the reference value.
double ulp_at(const OracleValue& ref);

/// |computed - reference| in units of ulp_at(reference).
double ulp_error(double computed, const OracleValue& ref);

/// |computed - reference| as an absolute difference.
double abs_error(double computed, const OracleValue& ref);

}  // namespace msharp
