#include <cmath>

#include "doctest.h"
#include "msharp/error.hpp"
#include "msharp/lemma.hpp"
#include "msharp/thresholds.hpp"
#include "support.hpp"

using namespace msharp;
using namespace msharp::lemma;
using msharp::testing::rel;
using msharp::testing::ulps;

TEST_CASE("f values") {
  CHECK(rel(f(0.5, 0.2, 1.0), 0.01048962365140226344203087) < 1e-14);
  // at the exact u_zero the limit x -> 1 vanishes; the double u_zero sits just off it
  CHECK(rel(f(1 - 1e-12, u_zero(1.0), 1.0), -3.954149514502449515156974e-14) < 1e-6);
  CHECK(std::fabs(f(1e-9, 0.2, 1.0)) < 1e-18);
  CHECK(f(0.999999, 0.0, 1.0) < 0.0);
  for (double x : {1e-300, 1e-150, 1e-20, 1e-8})
    CHECK(rel(f_scaled(x, 0.2, 1.0), 0.2 - 1.0 / 6.0) < 1e-10);
}

TEST_CASE("f_prime factored form") {
  for (double p : {0.5, 1.0, 4.0})
    for (double u : {0.05, 0.12, 0.3})
      for (double x = 0.05; x < 0.99; x += 0.0625) {
        CAPTURE(p);
        CAPTURE(u);
        CAPTURE(x);
        CHECK(f_prime_prefactor(x, u, p) > 0.0);
        const double fp = f_prime(x, u, p);
        const double pre = f_prime_prefactor(x, u, p), r = ratio(x, p);
        CHECK(std::fabs(fp - pre * (u - r)) <= 1e-14 * pre * std::max(u, r));
        const double step = 1e-5;
        const double fd = (f(x + step, u, p) - f(x - step, u, p)) / (2 * step);
        if (std::fabs(fp) > 1e-4) CHECK(rel(fd, fp) < 1e-6);
      }
}

TEST_CASE("g1, g2, ratio") {
  CHECK(ulps(g1(1.0), 0.174266805832995500831765) <= 4.0);
  CHECK(ulps(ratio(1.0, 1.0), 0.1097066160344173696673635) <= 4.0);
  CHECK(ulps(ratio(1.0, 0.5), u_low(0.5)) <= 4.0);
  CHECK(ratio(1e-10, 1.0) == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
  CHECK(ratio(1e-300, 2.0) == doctest::Approx(1.0 / 12.0).epsilon(1e-15));
  CHECK(g1(1e-3) > 0.0);
  CHECK(g2(0.5, 0.5) == doctest::Approx(0.125 / std::sqrt(1.25)).epsilon(1e-15));
  // continuity across the series switch
  const double s = 0x1p-4;
  CHECK(rel(ratio(std::nextafter(s, 0.0), 1.0), ratio(s, 1.0)) < 1e-15);
  CHECK(rel(g1(std::nextafter(s, 0.0)), g1(s)) < 1e-14);
}

TEST_CASE("h family") {
  CHECK(h(0.0) == 1.0);
  CHECK(ulps(h(0.5), 1.203029562649008618744397) <= 4.0);
  CHECK(ulps(h(1.0), 1.762747174039086050465219) <= 4.0);
  CHECK(h1(0.5) > 0.0);
  CHECK(h2(0.5) > 0.0);
  CHECK(h1(1e-5) > 0.0);
  CHECK(denom_D(0.0, 1.0) == doctest::Approx(6.0));
  // 2*0*... + 2*0.25 + 1 + 2 = 3.5 at p = 1/2, x = 1/2
  CHECK(denom_D(0.5, 0.5) == doctest::Approx(3.5).epsilon(1e-15));
}

TEST_CASE("critical point") {
  const SignRegime r = find_critical_x(0.12, 1.0);
  REQUIRE(r.kind == SignRegime::Kind::DipThenRise);
  CHECK(std::fabs(r.x0 - 0.8575189224047135337826365) < 1e-13);
  CHECK(std::fabs(ratio(r.x0, 1.0) - 0.12) < 1e-13);
  CHECK(find_critical_x(1.0 / 6.0, 1.0).kind == SignRegime::Kind::AlwaysPositive);
  CHECK(find_critical_x(0.5, 1.0).kind == SignRegime::Kind::AlwaysPositive);
  CHECK(find_critical_x(u_low(1.0), 1.0).kind == SignRegime::Kind::AlwaysNegative);
  CHECK(find_critical_x(0.01, 1.0).kind == SignRegime::Kind::AlwaysNegative);
  // f dips below zero to the left of x0 and rises after it
  CHECK(f(r.x0, 0.12, 1.0) < 0.0);
  CHECK(f_prime(r.x0 * 0.9, 0.12, 1.0) < 0.0);
  CHECK(f_prime(std::min(r.x0 * 1.1, 0.999), 0.12, 1.0) > 0.0);
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(f(0.0, 0.2, 1.0), DomainError);
  CHECK_THROWS_AS(f(1.0, 0.2, 1.0), DomainError);
  CHECK_THROWS_AS(f(0.5, 1.5, 1.0), DomainError);
  CHECK_THROWS_AS(f(0.5, 0.2, 0.3), DomainError);
  CHECK_THROWS_AS(ratio(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(g1(1.5), DomainError);
  CHECK_THROWS_AS(h(-1.0), DomainError);
  CHECK_THROWS_AS(find_critical_x(-0.1, 1.0), DomainError);
}
