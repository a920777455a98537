#include <cmath>
#include <random>

#include "doctest.h"
#include "msharp/certifier.hpp"
#include "msharp/error.hpp"
#include "msharp/lemma.hpp"
#include "msharp/oracle.hpp"
#include "msharp/thresholds.hpp"

using namespace msharp;

TEST_CASE("region certificates") {
  // f > 0 throughout for u above 1/(6p)
  const CertifyResult pos = certify_sign(0.2, 1.0, 0.01, 0.99, Sign::Positive, 40);
  REQUIRE(certified(pos));
  const Certificate& c = std::get<Certificate>(pos);
  CHECK(c.kind == Certificate::Kind::Region);
  CHECK(c.cells.size() == c.subintervals);
  CHECK(c.min_bound > 0.0);
  CHECK(replay(c));

  const CertifyResult neg = certify_sign(0.1, 1.0, 0.01, 0.99, Sign::Negative, 40);
  REQUIRE(certified(neg));
  CHECK(replay(std::get<Certificate>(neg)));

  // wrong sign claimed: refuted, never certified
  const CertifyResult bad = certify_sign(0.2, 1.0, 0.01, 0.99, Sign::Negative, 40);
  REQUIRE_FALSE(certified(bad));
  CHECK(std::get<Unknown>(bad).refuted);
}

TEST_CASE("middle regime") {
  // u = 0.12 < u_zero(1): f dips and rises but stays negative up to x = 1
  CHECK(certified(certify_sign(0.12, 1.0, 0.01, 0.999, Sign::Negative, 40)));
  // u = 0.15 in (u_zero, 1/6): f changes sign inside (0,1)
  const CertifyResult pos = certify_sign(0.15, 1.0, 0.01, 0.999, Sign::Positive, 30);
  const CertifyResult neg = certify_sign(0.15, 1.0, 0.01, 0.999, Sign::Negative, 30);
  CHECK_FALSE(certified(pos));
  CHECK_FALSE(certified(neg));
}

TEST_CASE("endpoint certificates") {
  const CertifyResult pos = certify_endpoint_zero(1.0 / 6.0 + 1e-3, 1.0, Sign::Positive, 1e-4);
  REQUIRE(certified(pos));
  CHECK(std::get<Certificate>(pos).kind == Certificate::Kind::EndpointZero);
  CHECK(replay(std::get<Certificate>(pos)));
  CHECK(certified(certify_endpoint_zero(0.13, 1.0, Sign::Negative, 1e-4)));
  CHECK_FALSE(certified(certify_endpoint_zero(0.13, 1.0, Sign::Positive, 1e-4)));
  CHECK_THROWS_AS(certify_endpoint_zero(1.0 / 6.0, 1.0, Sign::Positive, 1e-4), DomainError);
  CHECK_THROWS_AS(certify_endpoint_zero(0.2, 1.0, Sign::Positive, 0.5), DomainError);
}

TEST_CASE("tail certificates") {
  CHECK(certified(certify_tail(0.2, 1.0, Sign::Positive, kTheoremRight)));
  CHECK(certified(certify_tail(u_zero(1.0) - 1e-3, 1.0, Sign::Negative, kTheoremRight)));
  CHECK_FALSE(certified(certify_tail(u_zero(1.0) + 1e-3, 1.0, Sign::Negative, kTheoremRight)));
}

TEST_CASE("theorem certification") {
  for (double p : {0.5, 1.0, 2.0}) {
    CAPTURE(p);
    const TheoremCertification t = certify_theorem(p, 1e-3);
    CHECK(t.complete());
    CHECK(t.certificate_count() == 4);
    CHECK(t.tails.size() == 2);
    CHECK(t.limits.size() == 2);
    for (const NamedResult& r : t.certificates) {
      CAPTURE(r.name);
      REQUIRE(certified(r.result));
      CHECK(replay(std::get<Certificate>(r.result)));
    }
  }
  CHECK_THROWS_AS(certify_theorem(1.0, 0.2), DomainError);
}

TEST_CASE("enclosure width") {
  const Interval point = f_enclosure(Interval(0.5), 0.2, 1.0);
  CHECK(point.width() <= 1e-13 + 8 * std::ldexp(1.0, -52) * std::fabs(point.mid()));
  CHECK(f_enclosure(Interval(0.5, 0.500001), 0.2, 1.0).width() <= 1e-5);
  // narrower cells give nested or tighter enclosures
  const Interval wide = f_enclosure(Interval(0.3, 0.4), 0.2, 1.0);
  const Interval narrow = f_enclosure(Interval(0.3, 0.35), 0.2, 1.0);
  CHECK(narrow.width() <= wide.width());
}

TEST_CASE("enclosures contain the oracle value") {
  std::mt19937_64 gen(99);
  std::uniform_real_distribution<double> ux(0.0, 1.0), uu(0.0, 0.5), up(0.5, 5.0);
  for (int i = 0; i < 400; ++i) {
    const double x = i % 2 ? ux(gen) : std::pow(10.0, -12.0 * ux(gen));
    if (x <= 0.0 || x >= 1.0) continue;
    const double u = uu(gen), p = up(gen);
    const double w = x * 1e-3;
    const Interval cell(x, std::min(x + w, 0.9999));
    const Interval e = f_enclosure(cell, u, p);
    for (double s : {cell.lo(), cell.hi()}) {
      const OracleValue ref = oracle_eval("f", {s, u, p});
      CAPTURE(s);
      CHECK(e.lo() <= ref.extended());
      CHECK(ref.extended() <= e.hi());
    }
    const Interval r = ratio_enclosure(cell, p);
    const OracleValue rr = oracle_eval("ratio", {cell.lo(), p});
    CHECK(r.contains(rr.hi));
  }
}
