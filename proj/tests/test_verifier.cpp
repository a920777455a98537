#include <cmath>

#include "doctest.h"
#include "msharp/error.hpp"
#include "msharp/lemma.hpp"
#include "msharp/thresholds.hpp"
#include "msharp/verifier.hpp"

using namespace msharp;

namespace {

SampleConfig small_config() {
  SampleConfig c;
  c.n_uniform = 3000;
  c.n_log_low = 1000;
  c.n_log_high = 1000;
  return c;
}

}  // namespace

TEST_CASE("sampling is deterministic and in range") {
  const SampleConfig c = small_config();
  const auto a = sample_deviations(c);
  const auto b = sample_deviations(c);
  CHECK(a == b);
  CHECK(a.size() == c.total());
  for (double x : a) {
    CHECK(x > 0.0);
    CHECK(x < 1.0);
  }
  SampleConfig bad = c;
  bad.threads = 0;
  CHECK_THROWS_AS(bad.validate(), DomainError);
}

TEST_CASE("sharp weights pass, perturbed weights fail") {
  const SampleConfig c = small_config();
  for (double p : {0.5, 1.0, 2.0}) {
    CAPTURE(p);
    const InequalityCheck ok = check_double_inequality(p, lower_weight_threshold(p), upper_weight_threshold(p), c);
    CHECK(ok.pass);
    CHECK(ok.violations == 0);
    CHECK(ok.worst_lower < 0.0);
    CHECK(ok.worst_upper > 0.0);
    CHECK_FALSE(ok.counterexample.has_value());

    const InequalityCheck low = check_double_inequality(p, lower_weight_threshold(p) + 1e-3, 0.99, c);
    CHECK_FALSE(low.pass);
    REQUIRE(low.counterexample.has_value());
    CHECK(low.counterexample->side == Side::Lower);
    CHECK(reverify(*low.counterexample));

    const InequalityCheck up = check_double_inequality(p, 0.51, upper_weight_threshold(p) - 1e-3, c);
    CHECK_FALSE(up.pass);
    REQUIRE(up.counterexample.has_value());
    CHECK(up.counterexample->side == Side::Upper);
    CHECK(reverify(*up.counterexample));
  }
}

TEST_CASE("threads do not change the result") {
  SampleConfig c = small_config();
  const InequalityCheck one = check_double_inequality(1.0, 0.69, 0.7, c);
  c.threads = 4;
  const InequalityCheck four = check_double_inequality(1.0, 0.69, 0.7, c);
  CHECK(one.violations == four.violations);
  CHECK(one.worst_lower == four.worst_lower);
  CHECK(one.worst_upper == four.worst_upper);
  REQUIRE(one.counterexample.has_value());
  REQUIRE(four.counterexample.has_value());
  CHECK(one.counterexample->x == four.counterexample->x);
}

TEST_CASE("falsifiers") {
  // lower: just past t1 fails near x = 1; at t1 nothing is found
  const auto l = falsify_lower(1.0, 0.69);
  REQUIRE(l.has_value());
  CHECK(l->x > 0.9);
  CHECK(l->margin <= 0.0);
  CHECK(reverify(*l));
  CHECK_FALSE(falsify_lower(1.0, 0.6834).has_value());
  CHECK_FALSE(falsify_lower(1.0, lower_weight_threshold(1.0)).has_value());
  // upper: just below t2 fails near x = 0
  const auto u = falsify_upper(1.0, 0.70);
  REQUIRE(u.has_value());
  CHECK(u->log_ratio_scaled <= 0.0);
  CHECK(reverify(*u));
  CHECK_FALSE(falsify_upper(1.0, upper_weight_threshold(1.0)).has_value());
}

TEST_CASE("reverify rejects tampered reports") {
  auto r = falsify_lower(2.0, 0.64);
  REQUIRE(r.has_value());
  CHECK(reverify(*r));
  r->lhs = std::nextafter(r->lhs, 0.0);
  CHECK_FALSE(reverify(*r));
}

TEST_CASE("lemma suite") {
  const LemmaReport rep = run_lemma_suite(small_config());
  for (const PropertyResult& p : rep.properties) {
    CAPTURE(p.name);
    CHECK(p.pass);
    CHECK(p.checks > 0);
  }
  CHECK(rep.pass());
  CHECK(rep.find("h_convex") != nullptr);
  CHECK(rep.find("nonexistent") == nullptr);
}

TEST_CASE("lemma suite detects a broken h") {
  // h tabulated at 1/64 spacing and joined by chords of sqrt: concave pieces
  LemmaHooks hooks;
  hooks.h = [](double x) {
    const double k = std::floor(x * 64.0) / 64.0;
    const double frac = x * 64.0 - std::floor(x * 64.0);
    return lemma::h(k) + (lemma::h(k + 1.0 / 64.0) - lemma::h(k)) * std::sqrt(frac);
  };
  const LemmaReport rep = run_lemma_suite(small_config(), hooks);
  const PropertyResult* convex = rep.find("h_convex");
  REQUIRE(convex != nullptr);
  CHECK_FALSE(convex->pass);
  CHECK(convex->worst_margin < 0.0);
  CHECK_FALSE(rep.pass());
}

TEST_CASE("Seiffert corpus") {
  const SeiffertReport rep = check_seiffert_corpus(small_config());
  CHECK(rep.s_family.pass);
  CHECK(rep.c_family.pass);
  CHECK(rep.probes.size() == 8);
  CHECK(rep.probes_passed() == 8);
  CHECK(rep.pass());
}
