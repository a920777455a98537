#pragma once

// Extended-precision scalar kernels shared by the main evaluation path.
//
// Public results are double; intermediates run in the x87 80-bit format so
// a single final rounding dominates the error budget.

#include <array>
#include <cmath>
#include <cstddef>
#include <limits>

namespace msharp::detail {

using ext = long double;

static_assert(std::numeric_limits<ext>::digits >= 64,
              "msharp needs a long double with at least a 64-bit significand");

/// Below this x the cancelling differences (asinh(x)/x - 1, g1, h1) are
/// taken from their Maclaurin series.  y = x^2 < 2^-8, so kSeriesTerms
/// terms reach far below the 2^-64 extended rounding unit.
inline constexpr ext kSeriesSwitch = 0.0625L;
inline constexpr std::size_t kSeriesTerms = 14;

/// Below this x the profiles x/asinh(x) and x/atan(x) are two-term series;
/// the next term is below x^6 < 2^-120.
inline constexpr ext kProfileSwitch = 0x1p-20L;

// binom(2n,n)/4^n
constexpr ext central_binomial_ratio(std::size_t n) {
  ext b = 1.0L;
  for (std::size_t k = 1; k <= n; ++k) b = b * ext(2 * k - 1) / ext(2 * k);
  return b;
}

// asinh(x) = sum_n A_n x^(2n+1),  A_n = (-1)^n binom(2n,n) / (4^n (2n+1)).
constexpr ext asinh_coefficient(std::size_t n) {
  const ext sign = (n % 2 == 0) ? 1.0L : -1.0L;
  return sign * central_binomial_ratio(n) / ext(2 * n + 1);
}

template <std::size_t N, class Fn>
constexpr std::array<ext, N> make_table(Fn fn) {
  std::array<ext, N> t{};
  for (std::size_t i = 0; i < N; ++i) t[i] = fn(i);
  return t;
}

// (asinh(x)/x - 1) / x^2 = sum_{k>=0} A_{k+1} y^k
inline constexpr auto kAsinhRatioTable =
    make_table<kSeriesTerms>([](std::size_t k) { return asinh_coefficient(k + 1); });

// (atan(x)/x - 1) / x^2 = sum_{k>=0} (-1)^(k+1) y^k / (2k+3)
inline constexpr auto kAtanRatioTable = make_table<kSeriesTerms>([](std::size_t k) {
  return ((k % 2 == 0) ? -1.0L : 1.0L) / ext(2 * k + 3);
});

// g1(x)/x^3 = sum_{k>=0} c_{k+1} y^k,
// c_n = (-1)^(n+1) binom(2n,n)/4^n * 2n/(2n+1).
inline constexpr auto kG1Table = make_table<kSeriesTerms>([](std::size_t k) {
  const std::size_t n = k + 1;
  const ext sign = (n % 2 == 1) ? 1.0L : -1.0L;
  return sign * central_binomial_ratio(n) * ext(2 * n) / ext(2 * n + 1);
});

// binom(1/2, k)
constexpr ext half_binomial(std::size_t k) {
  ext b = 1.0L;
  for (std::size_t j = 1; j <= k; ++j) b = b * (1.5L - ext(j)) / ext(j);
  return b;
}

// h1(x)/x^3 = sum_{k>=0} e_{k+1} y^k,  e_n = binom(1/2,n) - A_n + A_{n-1}.
inline constexpr auto kH1Table = make_table<kSeriesTerms>([](std::size_t k) {
  const std::size_t n = k + 1;
  return half_binomial(n) - asinh_coefficient(n) + asinh_coefficient(n - 1);
});

template <std::size_t N>
inline ext horner(const std::array<ext, N>& c, ext y) {
  ext acc = c[N - 1];
  for (std::size_t i = N - 1; i-- > 0;) acc = acc * y + c[i];
  return acc;
}

/// asinh for x >= 0 as log1p(x + x^2/(1 + sqrt(1+x^2))).
inline ext asinh_ext(ext x) {
  const ext x2 = x * x;
  return std::log1p(x + x2 / (1.0L + std::sqrt(1.0L + x2)));
}

/// (asinh(x)/x - 1) / x^2 for x > 0.
inline ext asinh_ratio_m1_over_y(ext x) {
  if (x < kSeriesSwitch) return horner(kAsinhRatioTable, x * x);
  return (asinh_ext(x) / x - 1.0L) / (x * x);
}

/// asinh(x)/x - 1 for x >= 0.
inline ext asinh_ratio_m1(ext x) {
  if (x < kSeriesSwitch) return x * x * horner(kAsinhRatioTable, x * x);
  return asinh_ext(x) / x - 1.0L;
}

inline ext atan_ratio_m1_over_y(ext x) {
  if (x < kSeriesSwitch) return horner(kAtanRatioTable, x * x);
  return (std::atan(x) / x - 1.0L) / (x * x);
}

inline ext atan_ratio_m1(ext x) {
  if (x < kSeriesSwitch) return x * x * horner(kAtanRatioTable, x * x);
  return std::atan(x) / x - 1.0L;
}

/// log1p(y)/y, continuous at y = 0.
inline ext log1p_ratio(ext y) {
  if (std::fabs(y) < 0x1p-24L) return 1.0L - y * (0.5L - y * (1.0L / 3.0L - 0.25L * y));
  return std::log1p(y) / y;
}

/// (2t-1)^2; 2t-1 is exact in double for t in [1/2,1], and the square is
/// carried in extended precision.
inline ext weight_to_u_ext(double t) {
  const ext w = 2.0L * ext(t) - 1.0L;
  return w * w;
}

}  // namespace msharp::detail
