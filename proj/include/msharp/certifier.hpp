#pragma once

// Rigorous sign certification for f_{u,p} by interval branch-and-bound.
//
// A Certificate is only produced when every cell of a midpoint bisection
// has an enclosure of the claimed strict sign.  Anything short of that is
// an Unknown, never a certificate.  Cells are explored depth-first, left
// child first, so a run is fully determined by its inputs and can be
// replayed from the recorded cells.

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "msharp/interval.hpp"

namespace msharp {

enum class Sign { Negative, Positive };

const char* to_string(Sign s);

/// Enclosure of f_{u,p} over x with 0 < x.lo, x.hi <= 1.  Cells with
/// x.hi < 2^-4 use series with remainder bounds for f/x^2 and multiply back,
/// so the sign survives even when f is far below the rounding unit of 1.
Interval f_enclosure(const Interval& x, double u, double p);

/// Enclosure of g1/g2 over x, 0 <= x.lo, x.hi <= 1.  Series form below 2^-4.
Interval ratio_enclosure(const Interval& x, double p);

/// p ln(1+u) + ln(asinh 1), the limit of f at x = 1.
Interval h_p_enclosure(double u, double p);

struct CertificateCell {
  double lo;
  double hi;
  int depth;
  double bound;  // distance of the cell enclosure from zero
};

struct Certificate {
  enum class Kind {
    Region,        // sign of f on [x_lo, x_hi]
    EndpointZero,  // sign of u - g1/g2 on (0, x_hi], hence of f
    Tail,          // monotone run of f on [x_lo, 1) anchored at one end
  };

  Kind kind = Kind::Region;
  double u = 0.0;
  double p = 0.0;
  double x_lo = 0.0;
  double x_hi = 0.0;
  Sign sign = Sign::Positive;
  std::size_t subintervals = 0;
  int max_depth = 0;
  double min_bound = 0.0;  // smallest cell bound
  std::vector<CertificateCell> cells;
};

const char* to_string(Certificate::Kind k);

struct Unknown {
  std::string reason;
  double x_lo = 0.0;  // failing subinterval
  double x_hi = 0.0;
  bool refuted = false;  // an enclosure had the opposite strict sign
  std::size_t nodes = 0;
};

using CertifyResult = std::variant<Certificate, Unknown>;

inline bool certified(const CertifyResult& r) { return std::holds_alternative<Certificate>(r); }

/// Node budget shared by the bisection searches.
inline constexpr std::size_t kDefaultNodeBudget = std::size_t{1} << 22;

/// Certify sign(f_{u,p}) == sign on [x_lo, x_hi] with 0 < x_lo < x_hi < 1.
CertifyResult certify_sign(double u, double p, double x_lo, double x_hi, Sign sign, int max_depth,
                           std::size_t node_budget = kDefaultNodeBudget);

/// Certify the sign of f on (0, epsilon] from a fixed sign of u - g1/g2
/// and f(0+) = 0.  epsilon <= 2^-4.  Throws DomainError when
/// |u - 1/(6p)| < 1e-6.
CertifyResult certify_endpoint_zero(double u, double p, Sign sign, double epsilon, int max_depth = 40);

/// Certify the sign of f on [x_lo, 1) from a fixed sign of u - g1/g2 on
/// [x_lo, 1] plus the value at the appropriate end: h_p(u) at x = 1 or
/// f(x_lo) at the left end.
CertifyResult certify_tail(double u, double p, Sign sign, double x_lo);

/// Re-evaluates every recorded cell.  True when the certificate still
/// establishes its claim and its cells tile the region.
bool replay(const Certificate& c);

struct LimitCheck {
  double u = 0.0;
  Sign expected = Sign::Positive;
  Interval value;
  bool holds = false;
};

struct NamedResult {
  std::string name;
  CertifyResult result;
};

/// Both directions of the theorem at fixed p, a margin delta from the
/// sharp u values:
///   f < 0 for u = u_zero(p) - delta,  f > 0 for u = u_high(p) + delta,
/// each on (0, eps] and [eps, 1 - 1e-6], with the tail (1 - 1e-6, 1)
/// closed by a monotonicity argument and the x -> 1 limits checked via h_p.
struct TheoremCertification {
  double p = 0.0;
  double delta = 0.0;
  double u_negative = 0.0;
  double u_positive = 0.0;
  double epsilon = 0.0;
  double x_right = 0.0;
  std::vector<NamedResult> certificates;  // endpoint and region, per sign
  std::vector<NamedResult> tails;
  std::vector<LimitCheck> limits;

  bool complete() const;
  std::size_t certificate_count() const;
};

inline constexpr double kTheoremEpsilon = 1e-4;
inline constexpr double kTheoremRight = 1.0 - 1e-6;

TheoremCertification certify_theorem(double p, double delta, int max_depth = 60);

}  // namespace msharp
