#include "msharp/certifier.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <tuple>

#include "msharp/error.hpp"
#include "msharp/thresholds.hpp"

namespace msharp {

namespace {

constexpr double kSeriesEdge = 0.0625;  // x <= 2^-4, so y = x^2 <= 2^-8
constexpr int kTerms = 14;

void require_power(double p) {
  if (!(p >= 0.5) || !std::isfinite(p)) throw DomainError("power p must be finite and >= 1/2");
}

void require_u(double u) {
  if (!(u >= 0.0 && u <= 1.0)) throw DomainError("u must lie in [0,1]");
}

// binom(2n,n)/4^n, exact in double for n <= 28.
double central_binomial_ratio(int n) {
  std::uint64_t b = 1;
  for (int k = 1; k <= n; ++k) b = b * std::uint64_t(n + k) / std::uint64_t(k);
  return std::ldexp(static_cast<double>(b), -2 * n);
}

using Coefficients = std::array<Interval, kTerms>;

// (asinh(x)/x - 1)/y = sum_k A_{k+1} y^k,  A_n = (-1)^n binom(2n,n)/(4^n (2n+1)).
const Coefficients& asinh_ratio_coefficients() {
  static const Coefficients c = [] {
    Coefficients t;
    for (int k = 0; k < kTerms; ++k) {
      const int n = k + 1;
      const double s = (n % 2 == 0) ? 1.0 : -1.0;
      t[k] = Interval(s * central_binomial_ratio(n)) / Interval(2.0 * n + 1.0);
    }
    return t;
  }();
  return c;
}

// g1(x)/x^3 = sum_k c_{k+1} y^k,  c_n = (-1)^(n+1) binom(2n,n)/4^n * 2n/(2n+1).
const Coefficients& g1_coefficients() {
  static const Coefficients c = [] {
    Coefficients t;
    for (int k = 0; k < kTerms; ++k) {
      const int n = k + 1;
      const double s = (n % 2 == 1) ? 1.0 : -1.0;
      t[k] = Interval(s * central_binomial_ratio(n) * (2.0 * n)) / Interval(2.0 * n + 1.0);
    }
    return t;
  }();
  return c;
}

// log1p(z)/z = sum_k (-1)^k z^k / (k+1).
const Coefficients& log1p_ratio_coefficients() {
  static const Coefficients c = [] {
    Coefficients t;
    for (int k = 0; k < kTerms; ++k) t[k] = Interval((k % 2 == 0) ? 1.0 : -1.0) / Interval(k + 1.0);
    return t;
  }();
  return c;
}

Interval horner(const Coefficients& c, const Interval& y) {
  Interval acc = c[kTerms - 1];
  for (int i = kTerms - 1; i-- > 0;) acc = acc * y + c[i];
  return acc;
}

Interval power(const Interval& a, int n) {
  Interval r(1.0);
  for (int i = 0; i < n; ++i) r = r * a;
  return r;
}

// Both asinh series have |coefficient| <= 1, so the truncation error after
// kTerms terms is at most y^kTerms / (1 - y) for 0 <= y < 1.
Interval with_geometric_tail(const Interval& partial, const Interval& y) {
  const Interval yh(y.hi());
  const double r = (power(yh, kTerms) / (1.0 - yh)).hi();
  return partial + Interval(-r, r);
}

Interval asinh_ratio_series(const Interval& y) {
  return with_geometric_tail(horner(asinh_ratio_coefficients(), y), y);
}

Interval g1_series(const Interval& y) { return with_geometric_tail(horner(g1_coefficients(), y), y); }

// log1p(z)/z for |z| <= 1/4.  Remainder |z|^N / ((N+1)(1-|z|)).
Interval log1p_ratio_series(const Interval& z) {
  const double m = z.magnitude();
  if (m > 0.25) throw DomainError("log1p ratio series needs |z| <= 1/4");
  const Interval mz(m);
  const double r = (power(mz, kTerms) / ((kTerms + 1.0) * (1.0 - mz))).hi();
  return horner(log1p_ratio_coefficients(), z) + Interval(-r, r);
}

Interval ratio_series(const Interval& x, double p) {
  const Interval y = sqr(x);
  const Interval den = Interval(2.0 * p - 1.0) * (1.0 + y * asinh_ratio_series(y)) + 1.0 / sqrt(1.0 + y);
  return g1_series(y) / den;
}

Interval ratio_direct(const Interval& x, double p) {
  const Interval s = asinh(x);
  const Interval y = sqr(x);
  const Interval q = sqrt(1.0 + y);
  const Interval g1 = s - x / q;
  const Interval g2 = Interval(2.0 * p - 1.0) * y * s + y * x / q;
  return g1 / g2;
}

// asinh(x)/x is decreasing, so its image over x is spanned by the endpoint
// values.
Interval asinh_ratio_direct(const Interval& x) {
  const Interval at_hi = asinh(Interval(x.hi())) / Interval(x.hi());
  const Interval at_lo = asinh(Interval(x.lo())) / Interval(x.lo());
  return Interval(at_hi.lo(), at_lo.hi());
}

bool has_sign(const Interval& e, Sign s) { return s == Sign::Positive ? e.positive() : e.negative(); }

bool has_opposite_sign(const Interval& e, Sign s) {
  return s == Sign::Positive ? e.hi() <= 0.0 : e.lo() >= 0.0;
}

using CellEnclosure = std::function<Interval(double lo, double hi)>;

struct Frame {
  double lo;
  double hi;
  int depth;
};

CertifyResult bisect(const CellEnclosure& enclose, Certificate proto, int max_depth, std::size_t budget) {
  std::vector<Frame> stack{{proto.x_lo, proto.x_hi, 0}};
  std::size_t nodes = 0;
  double min_bound = std::numeric_limits<double>::infinity();
  int deepest = 0;
  while (!stack.empty()) {
    const Frame f = stack.back();
    stack.pop_back();
    if (++nodes > budget) return Unknown{"node budget exhausted", f.lo, f.hi, false, nodes};
    const Interval e = enclose(f.lo, f.hi);
    if (has_sign(e, proto.sign)) {
      const double bound = e.mignitude();
      proto.cells.push_back({f.lo, f.hi, f.depth, bound});
      min_bound = std::min(min_bound, bound);
      deepest = std::max(deepest, f.depth);
      continue;
    }
    if (has_opposite_sign(e, proto.sign))
      return Unknown{"enclosure has the opposite sign", f.lo, f.hi, true, nodes};
    if (f.depth >= max_depth) return Unknown{"maximum depth reached", f.lo, f.hi, false, nodes};
    const double mid = f.lo + 0.5 * (f.hi - f.lo);
    if (!(mid > f.lo && mid < f.hi)) return Unknown{"cell cannot be split further", f.lo, f.hi, false, nodes};
    stack.push_back({mid, f.hi, f.depth + 1});
    stack.push_back({f.lo, mid, f.depth + 1});
  }
  proto.subintervals = proto.cells.size();
  proto.max_depth = deepest;
  proto.min_bound = min_bound;
  return proto;
}

CellEnclosure region_enclosure(double u, double p) {
  return [u, p](double lo, double hi) { return f_enclosure(Interval(lo, hi), u, p); };
}

CellEnclosure endpoint_enclosure(double u, double p) {
  return [u, p](double lo, double hi) { return Interval(u) - ratio_enclosure(Interval(lo, hi), p); };
}

bool cells_tile(const Certificate& c) {
  if (c.cells.empty() || c.cells.size() != c.subintervals) return false;
  if (c.cells.front().lo != c.x_lo || c.cells.back().hi != c.x_hi) return false;
  for (std::size_t i = 0; i + 1 < c.cells.size(); ++i)
    if (c.cells[i].hi != c.cells[i + 1].lo) return false;
  return true;
}

}  // namespace

const char* to_string(Sign s) { return s == Sign::Positive ? "positive" : "negative"; }

const char* to_string(Certificate::Kind k) {
  switch (k) {
    case Certificate::Kind::Region: return "region";
    case Certificate::Kind::EndpointZero: return "endpoint_zero";
    case Certificate::Kind::Tail: return "tail";
  }
  return "unknown";
}

Interval ratio_enclosure(const Interval& x, double p) {
  require_power(p);
  if (!(x.lo() >= 0.0 && x.hi() <= 1.0)) throw DomainError("ratio enclosure needs x within [0,1]");
  if (x.hi() <= kSeriesEdge) return ratio_series(x, p);
  if (x.lo() < kSeriesEdge)
    return hull(ratio_series(Interval(x.lo(), kSeriesEdge), p), ratio_direct(Interval(kSeriesEdge, x.hi()), p));
  return ratio_direct(x, p);
}

Interval f_enclosure(const Interval& x, double u, double p) {
  require_u(u);
  require_power(p);
  if (!(x.lo() > 0.0 && x.hi() <= 1.0)) throw DomainError("f enclosure needs x within (0,1]");
  if (x.hi() <= kSeriesEdge) {
    // f/y = p u L(u y) + P(y) L(y P(y)),  L(z) = log1p(z)/z,  P = (asinh(x)/x - 1)/y.
    const Interval y = sqr(x);
    const Interval uy = Interval(u) * y;
    const Interval pr = asinh_ratio_series(y);
    const Interval scaled = Interval(p) * Interval(u) * log1p_ratio_series(uy) + pr * log1p_ratio_series(y * pr);
    return scaled * y;
  }
  return Interval(p) * ln1p(Interval(u) * sqr(x)) + ln(asinh_ratio_direct(x));
}

Interval h_p_enclosure(double u, double p) {
  require_power(p);
  if (!(u > -1.0)) throw DomainError("h_p needs u > -1");
  return Interval(p) * ln1p(Interval(u)) + ln(asinh(Interval(1.0)));
}

CertifyResult certify_sign(double u, double p, double x_lo, double x_hi, Sign sign, int max_depth,
                           std::size_t node_budget) {
  require_u(u);
  require_power(p);
  if (!(x_lo > 0.0 && x_lo < x_hi && x_hi < 1.0)) throw DomainError("certify_sign needs 0 < x_lo < x_hi < 1");
  if (max_depth < 0) throw DomainError("max_depth must be non-negative");
  Certificate proto;
  proto.kind = Certificate::Kind::Region;
  proto.u = u;
  proto.p = p;
  proto.x_lo = x_lo;
  proto.x_hi = x_hi;
  proto.sign = sign;
  return bisect(region_enclosure(u, p), std::move(proto), max_depth, node_budget);
}

CertifyResult certify_endpoint_zero(double u, double p, Sign sign, double epsilon, int max_depth) {
  require_u(u);
  require_power(p);
  if (!(epsilon > 0.0 && epsilon <= kSeriesEdge)) throw DomainError("epsilon must lie in (0, 2^-4]");
  if (std::fabs(u - 1.0 / (6.0 * p)) < 1e-6) throw DomainError("u is within 1e-6 of 1/(6p); leading term degenerate");
  Certificate proto;
  proto.kind = Certificate::Kind::EndpointZero;
  proto.u = u;
  proto.p = p;
  proto.x_lo = 0.0;
  proto.x_hi = epsilon;
  proto.sign = sign;
  return bisect(endpoint_enclosure(u, p), std::move(proto), max_depth, kDefaultNodeBudget);
}

CertifyResult certify_tail(double u, double p, Sign sign, double x_lo) {
  require_u(u);
  require_power(p);
  if (!(x_lo > 0.0 && x_lo < 1.0)) throw DomainError("tail needs 0 < x_lo < 1");
  const Interval slope = Interval(u) - ratio_enclosure(Interval(x_lo, 1.0), p);
  Interval anchor;
  bool holds = false;
  if (slope.positive()) {
    // f increasing: f < h_p(u) on the tail, and f > f(x_lo).
    if (sign == Sign::Negative) {
      anchor = h_p_enclosure(u, p);
      holds = anchor.hi() <= 0.0;
    } else {
      anchor = f_enclosure(Interval(x_lo), u, p);
      holds = anchor.positive();
    }
  } else if (slope.negative()) {
    if (sign == Sign::Negative) {
      anchor = f_enclosure(Interval(x_lo), u, p);
      holds = anchor.negative();
    } else {
      anchor = h_p_enclosure(u, p);
      holds = anchor.lo() >= 0.0;
    }
  } else {
    return Unknown{"u - g1/g2 is not of one sign on the tail", x_lo, 1.0, false, 1};
  }
  if (!holds) return Unknown{"tail anchor does not have the claimed sign", x_lo, 1.0, false, 1};
  Certificate c;
  c.kind = Certificate::Kind::Tail;
  c.u = u;
  c.p = p;
  c.x_lo = x_lo;
  c.x_hi = 1.0;
  c.sign = sign;
  c.subintervals = 1;
  c.max_depth = 0;
  c.min_bound = std::min(slope.mignitude(), anchor.mignitude());
  c.cells.push_back({x_lo, 1.0, 0, c.min_bound});
  return c;
}

bool replay(const Certificate& c) {
  try {
    if (c.kind == Certificate::Kind::Tail) {
      const CertifyResult r = certify_tail(c.u, c.p, c.sign, c.x_lo);
      return certified(r) && c.x_hi == 1.0;
    }
    if (!cells_tile(c)) return false;
    const CellEnclosure enclose =
        c.kind == Certificate::Kind::Region ? region_enclosure(c.u, c.p) : endpoint_enclosure(c.u, c.p);
    return std::all_of(c.cells.begin(), c.cells.end(),
                       [&](const CertificateCell& cell) { return has_sign(enclose(cell.lo, cell.hi), c.sign); });
  } catch (const DomainError&) {
    return false;
  }
}

bool TheoremCertification::complete() const {
  auto all_certified = [](const std::vector<NamedResult>& v) {
    return std::all_of(v.begin(), v.end(), [](const NamedResult& r) { return certified(r.result); });
  };
  return all_certified(certificates) && all_certified(tails) &&
         std::all_of(limits.begin(), limits.end(), [](const LimitCheck& l) { return l.holds; });
}

std::size_t TheoremCertification::certificate_count() const {
  return static_cast<std::size_t>(std::count_if(certificates.begin(), certificates.end(),
                                                [](const NamedResult& r) { return certified(r.result); }));
}

TheoremCertification certify_theorem(double p, double delta, int max_depth) {
  require_power(p);
  if (!(delta > 0.0) || !std::isfinite(delta)) throw DomainError("delta must be positive");
  TheoremCertification out;
  out.p = p;
  out.delta = delta;
  out.u_negative = u_zero(p) - delta;
  out.u_positive = u_high(p) + delta;
  out.epsilon = kTheoremEpsilon;
  out.x_right = kTheoremRight;
  if (out.u_negative < 0.0) throw DomainError("delta exceeds u_zero(p); no admissible negative u");
  if (out.u_positive > 1.0) throw DomainError("u_high(p) + delta exceeds 1");

  auto guarded = [](auto&& fn) -> CertifyResult {
    try {
      return fn();
    } catch (const DomainError& e) {
      return Unknown{e.what(), 0.0, 0.0, false, 0};
    }
  };

  for (const auto& [sign, u, tag] : {std::tuple{Sign::Negative, out.u_negative, "negative"},
                                     std::tuple{Sign::Positive, out.u_positive, "positive"}}) {
    const std::string name = tag;
    out.certificates.push_back(
        {name + "/endpoint", guarded([&] { return certify_endpoint_zero(u, p, sign, out.epsilon); })});
    out.certificates.push_back(
        {name + "/region", guarded([&] { return certify_sign(u, p, out.epsilon, out.x_right, sign, max_depth); })});
    out.tails.push_back({name + "/tail", guarded([&] { return certify_tail(u, p, sign, out.x_right); })});
    LimitCheck limit;
    limit.u = u;
    limit.expected = sign;
    limit.value = h_p_enclosure(u, p);
    limit.holds = has_sign(limit.value, sign);
    out.limits.push_back(limit);
  }
  return out;
}

}  // namespace msharp
