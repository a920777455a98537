#include "msharp/oracle.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <ios>
#include <limits>
#include <stdexcept>
#include <string>

namespace msharp {

namespace {

namespace mp = boost::multiprecision;

using Fine = mp::number<mp::cpp_bin_float<80>, mp::et_off>;
using Coarse = mp::number<mp::cpp_bin_float<55>, mp::et_off>;

template <class R>
struct Engine {
  static R eps() { return std::numeric_limits<R>::epsilon(); }

  static bool converged(const R& add, const R& sum) { return mp::abs(add) <= eps() * mp::abs(sum) / 16; }

  // atanh(z) = sum z^(2k+1)/(2k+1), |z| <= 1/3.
  static R atanh_series(const R& z) {
    if (z == 0) return R(0);
    const R z2 = z * z;
    R term = z;
    R sum = z;
    for (int k = 1; k < 2000; ++k) {
      term *= z2;
      const R add = term / (2 * k + 1);
      sum += add;
      if (converged(add, sum)) break;
    }
    return sum;
  }

  // sum_{k>=1} z^(2k)/(2k+1)
  static R atanh_tail(const R& z) {
    const R z2 = z * z;
    R term = 1;
    R sum = 0;
    for (int k = 1; k < 2000; ++k) {
      term *= z2;
      const R add = term / (2 * k + 1);
      sum += add;
      if (converged(add, sum)) break;
    }
    return sum;
  }

  // atan(z) = sum (-1)^n z^(2n+1)/(2n+1), |z| small.
  static R atan_series(const R& z) {
    const R z2 = z * z;
    R term = z;
    R sum = z;
    for (int n = 1; n < 4000; ++n) {
      term *= -z2;
      const R add = term / (2 * n + 1);
      sum += add;
      if (converged(add, sum)) break;
    }
    return sum;
  }

  static const R& ln2() {
    static const R v = 2 * atanh_series(R(1) / 3);
    return v;
  }

  static const R& pi() {
    static const R v = 16 * atan_series(R(1) / 5) - 4 * atan_series(R(1) / 239);
    return v;
  }

  static const R& sqrt_half() {
    static const R v = mp::sqrt(R(1) / 2);
    return v;
  }

  static R ln(const R& v) {
    if (v <= 0) throw std::invalid_argument("oracle ln of non-positive value");
    int e = 0;
    R m = mp::frexp(v, &e);
    if (m < sqrt_half()) {
      m *= 2;
      --e;
    }
    return R(e) * ln2() + 2 * atanh_series((m - 1) / (m + 1));
  }

  static R ln1p(const R& y) {
    if (mp::abs(y) < R(1) / 4) return 2 * atanh_series(y / (2 + y));
    return ln(1 + y);
  }

  static R exp(const R& v) {
    const R k = mp::round(v / ln2());
    R r = mp::ldexp(v - k * ln2(), -12);
    R term = 1;
    R sum = 1;
    for (int n = 1; n < 400; ++n) {
      term = term * r / n;
      sum += term;
      if (converged(term, sum)) break;
    }
    for (int i = 0; i < 12; ++i) sum *= sum;
    return mp::ldexp(sum, k.template convert_to<int>());
  }

  static R expm1(const R& v) {
    if (mp::abs(v) >= R(1) / 2) return exp(v) - 1;
    R term = v;
    R sum = v;
    for (int n = 2; n < 400; ++n) {
      term = term * v / n;
      sum += term;
      if (converged(term, sum)) break;
    }
    return sum;
  }

  // sqrt(1+x^2) - 1 without cancellation.
  static R hyp_m1(const R& x) { return x * x / (1 + mp::sqrt(1 + x * x)); }

  static R asinh(const R& x) {
    if (x < 0) return -asinh(-x);
    const R s = mp::sqrt(1 + x * x);
    if (x < R(1) / 10) return atanh_series(x / s);
    return ln(x + s);
  }

  // asinh(x)/x - 1 for x >= 0.  With c = 1/sqrt(1+x^2), z = x c:
  //   asinh(x)/x - 1 = (c - 1) + c * sum_{k>=1} z^(2k)/(2k+1).
  static R asinh_ratio_m1(const R& x) {
    if (x == 0) return R(0);
    if (x < R(1) / 10) {
      const R s = mp::sqrt(1 + x * x);
      const R c = 1 / s;
      const R c_m1 = -hyp_m1(x) / s;
      return c_m1 + c * atanh_tail(x * c);
    }
    return asinh(x) / x - 1;
  }

  static R atan(const R& x) {
    if (x < 0) return -atan(-x);
    if (x > 1) return pi() / 2 - atan(1 / x);
    R y = x;
    int halvings = 0;
    while (y > R(1) / 20) {
      y = y / (1 + mp::sqrt(1 + y * y));
      ++halvings;
    }
    return mp::ldexp(atan_series(y), halvings);
  }

  // atan(x)/x - 1 for x >= 0, from Euler's series
  //   atan(x) = x/(1+x^2) * sum_n a_n w^n,  w = x^2/(1+x^2),  a_n = a_{n-1} 2n/(2n+1).
  static R atan_ratio_m1(const R& x) {
    if (x == 0) return R(0);
    if (x < R(1) / 10) {
      const R x2 = x * x;
      const R w = x2 / (1 + x2);
      R a = 1;
      R wn = 1;
      R s = 0;
      for (int n = 1; n < 2000; ++n) {
        a = a * (2 * n) / (2 * n + 1);
        wn *= w;
        const R add = a * wn;
        s += add;
        if (converged(add, s)) break;
      }
      return (s - x2) / (1 + x2);
    }
    return atan(x) / x - 1;
  }

  static R t_star() { return ln(1 + mp::sqrt(R(2))); }

  static R profile(std::string_view kind, const R& x) {
    if (kind == "arithmetic") return R(1);
    if (kind == "contra_harmonic") return 1 + x * x;
    if (kind == "root_mean_square") return mp::sqrt(1 + x * x);
    if (kind == "second_seiffert") return 1 / (1 + atan_ratio_m1(x));
    if (kind == "neuman_sandor") return 1 / (1 + asinh_ratio_m1(x));
    throw std::invalid_argument("oracle: unknown mean kind " + std::string(kind));
  }

  static R f(const R& x, const R& u, const R& p) { return p * ln1p(u * x * x) + ln1p(asinh_ratio_m1(x)); }

  static R g1(const R& x) {
    if (x < R(1) / 10) {
      const R s = mp::sqrt(1 + x * x);
      return x * (asinh_ratio_m1(x) + hyp_m1(x) / s);
    }
    return asinh(x) - x / mp::sqrt(1 + x * x);
  }

  static R g2(const R& x, const R& p) {
    const R y = x * x;
    return (2 * p - 1) * y * asinh(x) + y * x / mp::sqrt(1 + y);
  }

  static R h(const R& x) { return (1 + x * x) * (1 + asinh_ratio_m1(x)); }

  static R u_zero(const R& p) { return expm1(-ln(t_star()) / p); }

  static R evaluate(std::string_view id, std::span<const double> in) {
    auto arg = [&](std::size_t i) { return R(in[i]); };
    if (id == "t_star") return t_star();
    if (id == "ln_t_star") return ln(t_star());
    if (id == "seiffert_alpha") return (1 + mp::sqrt(16 / (pi() * pi()) - 1)) / 2;
    if (id == "seiffert_beta") return (3 + mp::sqrt(R(6))) / 6;
    if (id == "seiffert_lambda") return (1 + mp::sqrt(4 / pi() - 1)) / 2;
    if (id == "seiffert_mu") return (3 + mp::sqrt(R(3))) / 6;
    if (id == "neuman_sandor_profile") return profile("neuman_sandor", arg(0));
    if (id.starts_with("profile_")) return profile(id.substr(8), arg(0));
    if (id == "ln") return ln(arg(0));
    if (id == "asinh") return asinh(arg(0));
    if (id == "atan") return atan(arg(0));
    if (id == "g1") return g1(arg(0));
    if (id == "h") return h(arg(0));
    if (id == "h1") {
      const R x = arg(0);
      const R s = asinh_ratio_m1(x);
      return x * (hyp_m1(x) - s + x * x * (1 + s));
    }
    if (id == "h2") {
      const R x = arg(0);
      return 3 * x / mp::sqrt(1 + x * x) + 2 * asinh(x);
    }
    if (id == "deviation") return mp::abs(arg(0) - arg(1)) / (arg(0) + arg(1));
    if (id.starts_with("mean_")) {
      const R a = arg(0);
      const R b = arg(1);
      return (a + b) / 2 * profile(id.substr(5), mp::abs(a - b) / (a + b));
    }
    if (id == "q_mean") {
      const R a = arg(0);
      const R b = arg(1);
      const R x = mp::abs(a - b) / (a + b);
      const R w = 2 * arg(2) - 1;
      return (a + b) / 2 * exp(arg(3) * ln1p(w * w * x * x));
    }
    if (id == "f") return f(arg(0), arg(1), arg(2));
    if (id == "f_over_x2") return f(arg(0), arg(1), arg(2)) / (arg(0) * arg(0));
    if (id == "f_prime") {
      const R x = arg(0);
      const R u = arg(1);
      const R p = arg(2);
      return 2 * p * u * x / (1 + u * x * x) - 1 / x + 1 / (mp::sqrt(1 + x * x) * asinh(x));
    }
    if (id == "g2") return g2(arg(0), arg(1));
    if (id == "ratio") return g1(arg(0)) / g2(arg(0), arg(1));
    if (id == "denom_D") {
      const R x = arg(0);
      const R p = arg(1);
      return 2 * (2 * p - 1) * mp::sqrt(1 + x * x) * h(x) + (2 * p + 1) * x * x + 2 * p + 2;
    }
    if (id == "u_zero") return u_zero(arg(0));
    if (id == "u_low") {
      const R s = mp::sqrt(R(2)) * t_star();
      return (s - 1) / (s * (2 * arg(0) - 1) + 1);
    }
    if (id == "u_high") return 1 / (6 * arg(0));
    if (id == "lower_weight_threshold") return (1 + mp::sqrt(u_zero(arg(0)))) / 2;
    if (id == "upper_weight_threshold") return (1 + 1 / mp::sqrt(6 * arg(0))) / 2;
    if (id == "h_p") return arg(1) * ln1p(arg(0)) + ln(t_star());
    if (id == "weight_to_u") {
      const R w = 2 * arg(0) - 1;
      return w * w;
    }
    throw std::invalid_argument("oracle: unknown expression " + std::string(id));
  }
};

struct Entry {
  const char* name;
  std::size_t arity;
};

constexpr Entry kRegistry[] = {
    {"t_star", 0},
    {"ln_t_star", 0},
    {"seiffert_alpha", 0},
    {"seiffert_beta", 0},
    {"seiffert_lambda", 0},
    {"seiffert_mu", 0},
    {"neuman_sandor_profile", 1},
    {"profile_arithmetic", 1},
    {"profile_contra_harmonic", 1},
    {"profile_root_mean_square", 1},
    {"profile_second_seiffert", 1},
    {"profile_neuman_sandor", 1},
    {"ln", 1},
    {"asinh", 1},
    {"atan", 1},
    {"g1", 1},
    {"h", 1},
    {"h1", 1},
    {"h2", 1},
    {"deviation", 2},
    {"mean_arithmetic", 2},
    {"mean_contra_harmonic", 2},
    {"mean_root_mean_square", 2},
    {"mean_second_seiffert", 2},
    {"mean_neuman_sandor", 2},
    {"q_mean", 4},
    {"f", 3},
    {"f_over_x2", 3},
    {"f_prime", 3},
    {"g2", 2},
    {"ratio", 2},
    {"denom_D", 2},
    {"u_zero", 1},
    {"u_low", 1},
    {"u_high", 1},
    {"lower_weight_threshold", 1},
    {"upper_weight_threshold", 1},
    {"h_p", 2},
    {"weight_to_u", 1},
};

const Entry& lookup(std::string_view id) {
  for (const Entry& e : kRegistry)
    if (id == e.name) return e;
  throw std::invalid_argument("oracle: unknown expression " + std::string(id));
}

}  // namespace

OracleValue oracle_eval(std::string_view expr_id, std::span<const double> inputs, int digits) {
  const Entry& entry = lookup(expr_id);
  if (inputs.size() != entry.arity)
    throw std::invalid_argument("oracle: " + std::string(expr_id) + " takes " + std::to_string(entry.arity) +
                                " inputs");
  if (digits < 1 || digits > 40) throw std::invalid_argument("oracle: digits must lie in [1, 40]");
  for (double v : inputs)
    if (!std::isfinite(v)) throw std::invalid_argument("oracle: inputs must be finite");

  const Fine fine = Engine<Fine>::evaluate(expr_id, inputs);
  const Coarse coarse = Engine<Coarse>::evaluate(expr_id, inputs);

  OracleValue out;
  out.expr = std::string(expr_id);
  out.digits = digits;
  out.decimal = fine.str(digits, std::ios_base::scientific);
  out.hi = fine.convert_to<double>();
  out.lo = Fine(fine - Fine(out.hi)).convert_to<double>();
  const Fine gap = mp::abs(Fine(coarse) - fine) + mp::abs(fine) * Fine("1e-78");
  out.error_bound = gap.convert_to<double>();
  return out;
}

OracleValue oracle_eval(std::string_view expr_id, std::initializer_list<double> inputs, int digits) {
  return oracle_eval(expr_id, std::span<const double>(inputs.begin(), inputs.size()), digits);
}

std::vector<std::string> oracle_expressions() {
  std::vector<std::string> names;
  for (const Entry& e : kRegistry) names.emplace_back(e.name);
  return names;
}

double ulp_at(const OracleValue& ref) {
  const double a = std::fabs(ref.hi);
  if (a == 0.0) return std::numeric_limits<double>::denorm_min();
  int e = std::ilogb(a);
  // hi rounded up onto a power of two while the exact value lies below it.
  if (std::ldexp(1.0, e) == a && ref.lo != 0.0 && std::signbit(ref.lo) != std::signbit(ref.hi)) --e;
  e = std::max(e, std::numeric_limits<double>::min_exponent - 1);
  return std::ldexp(1.0, e - (std::numeric_limits<double>::digits - 1));
}

double abs_error(double computed, const OracleValue& ref) {
  const long double d = (static_cast<long double>(computed) - ref.hi) - ref.lo;
  return static_cast<double>(std::fabs(d));
}

double ulp_error(double computed, const OracleValue& ref) {
  const long double d = (static_cast<long double>(computed) - ref.hi) - ref.lo;
  return static_cast<double>(std::fabs(d) / ulp_at(ref));
}

}  // namespace msharp
