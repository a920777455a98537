#include <cmath>
#include <random>

#include "doctest.h"
#include "msharp/error.hpp"
#include "msharp/means.hpp"
#include "support.hpp"

using namespace msharp;
using msharp::testing::rel;
using msharp::testing::ulps;

TEST_CASE("deviation") {
  CHECK(deviation(PositivePair(3, 1)).value() == 0.5);
  CHECK(deviation(PositivePair(7, 7)).value() == 0.0);
  // (1+1e-15 rounded, 1): reference from a 50-digit evaluation
  CHECK(ulps(deviation(PositivePair(1 + 1e-15, 1)).value(), 5.551115123125779620630247e-16) <= 2.0);
}

TEST_CASE("deviation round trip for dyadic x") {
  for (int k = 1; k < 52; k += 3) {
    const double x = std::ldexp(1.0, -k);
    for (double a : {1.0, 3.0, 0x1p-30, 0x1p30})
      CHECK(deviation(PositivePair(a * (1 + x), a * (1 - x))).value() == x);
  }
}

TEST_CASE("domain checks") {
  CHECK_THROWS_AS(PositivePair(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(PositivePair(-1.0, 1.0), DomainError);
  CHECK_THROWS_AS(PositivePair(INFINITY, 1.0), DomainError);
  CHECK_THROWS_AS(Deviation(1.0), DomainError);
  CHECK_THROWS_AS(Deviation(-0.1), DomainError);
  CHECK_THROWS_AS(weighted_pair(PositivePair(3, 1), 1.5), DomainError);
  CHECK_THROWS_AS(q_mean(PositivePair(3, 1), 0.75, 0.4), DomainError);
  CHECK_THROWS_AS(log_q_over_mean_scaled(MeanKind::NeumanSandor, 0.0, 0.75, 1.0), DomainError);
}

TEST_CASE("kind names") {
  for (MeanKind k : kAllMeanKinds) CHECK(parse_mean_kind(to_string(k)) == k);
  CHECK(parse_mean_kind("ns") == MeanKind::NeumanSandor);
  CHECK(parse_mean_kind("m") == MeanKind::NeumanSandor);
  CHECK(parse_mean_kind("c") == MeanKind::ContraHarmonic);
  CHECK_FALSE(parse_mean_kind("geometric").has_value());
}

TEST_CASE("normalized profiles") {
  CHECK(normalized_profile(MeanKind::NeumanSandor, Deviation(0)) == 1.0);
  CHECK(normalized_profile(MeanKind::SecondSeiffert, Deviation(0)) == 1.0);
  CHECK(normalized_profile(MeanKind::ContraHarmonic, Deviation(0.5)) == 1.25);

  struct Ref {
    double x, m, t;
  };
  // 50-digit references, on both sides of the 2^-20 and 2^-4 switches.
  const Ref refs[] = {
      {1e-07, 1.000000000000001666666667, 1.000000000000003333333333},
      {9.527429938316345e-07, 1.000000000000151286535383, 1.000000000000302573070765},
      {9.546056389808655e-07, 1.000000000000151878654329, 1.000000000000303757308658},
      {0.06243896484375, 1.000649054413167777889963, 1.001298193149280869602371},
      {0.06256103515625, 1.000651591932243786177271, 1.001303268848323322966067},
      {0.3, 1.014634247092303605859314, 1.029312082215951458991839},
      {0.5, 1.039043460617513768800661, 1.078405216145804992320636},
      {0.9, 1.112667560423483170063055, 1.228140628933435839527052},
      {0.999999999999, 1.134592657106286655274037, 1.273239544734700026310532},
  };
  for (const Ref& r : refs) {
    CAPTURE(r.x);
    CHECK(ulps(normalized_profile(MeanKind::NeumanSandor, Deviation(r.x)), r.m) <= 2.0);
    if (r.t != 0) CHECK(ulps(normalized_profile(MeanKind::SecondSeiffert, Deviation(r.x)), r.t) <= 2.0);
  }
}

TEST_CASE("means at (3,1)") {
  const PositivePair p(3, 1);
  CHECK(mean(MeanKind::ContraHarmonic, p) == 2.5);
  CHECK(mean(MeanKind::Arithmetic, p) == 2.0);
  CHECK(ulps(mean(MeanKind::RootMeanSquare, p), std::sqrt(5.0)) <= 1.0);
  CHECK(ulps(mean(MeanKind::NeumanSandor, p), 2.078086921235027537601323) <= 2.0);
  CHECK(mean(MeanKind::NeumanSandor, PositivePair(4.5, 4.5)) == 4.5);
}

TEST_CASE("weighted pair") {
  const PositivePair p(3, 1);
  CHECK(weighted_pair(p, 1).a() == 3);
  CHECK(weighted_pair(p, 1).b() == 1);
  CHECK(weighted_pair(p, 0.5).a() == 2);
  CHECK(weighted_pair(p, 0.5).b() == 2);
  CHECK(weighted_pair(p, 0.75).a() == 2.5);
  CHECK(weighted_pair(p, 0.75).b() == 1.5);
}

TEST_CASE("q_mean") {
  const PositivePair p(3, 1);
  CHECK(q_mean(p, 1, 1) == 2.5);
  CHECK(q_mean(p, 0.5, 7.0) == 2.0);
  CHECK(ulps(q_mean(p, 0.75, 0.5), 2.061552812808830274910705) <= 2.0);
  // u is symmetric in t <-> 1-t
  CHECK(q_mean(p, 0.25, 2.0) == q_mean(p, 0.75, 2.0));
}

TEST_CASE("symmetry and power-of-two homogeneity are bit exact") {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> d(1e-3, 1e3);
  for (int i = 0; i < 2000; ++i) {
    const double a = d(gen), b = d(gen);
    for (MeanKind k : kAllMeanKinds) {
      const double m = mean(k, PositivePair(a, b));
      CHECK(m == mean(k, PositivePair(b, a)));
      CHECK(mean(k, PositivePair(0x1p-40 * a, 0x1p-40 * b)) == 0x1p-40 * m);
      CHECK(mean(k, PositivePair(0x1p40 * a, 0x1p40 * b)) == 0x1p40 * m);
    }
  }
}

TEST_CASE("ordering A < M < T < S < C") {
  std::mt19937_64 gen(12);
  std::uniform_real_distribution<double> d(1e-3, 1e3);
  for (int i = 0; i < 2000; ++i) {
    const PositivePair p(d(gen), d(gen));
    if (deviation(p).value() < 1e-4) continue;
    const double a = mean(MeanKind::Arithmetic, p), m = mean(MeanKind::NeumanSandor, p),
                 t = mean(MeanKind::SecondSeiffert, p), s = mean(MeanKind::RootMeanSquare, p),
                 c = mean(MeanKind::ContraHarmonic, p);
    CHECK(a < m);
    CHECK(m < t);
    CHECK(t < s);
    CHECK(s < c);
    CHECK(std::min(p.a(), p.b()) < a);
    CHECK(c < std::max(p.a(), p.b()));
  }
}

TEST_CASE("Q identities with S and C of the weighted pair") {
  std::mt19937_64 gen(13);
  std::uniform_real_distribution<double> d(1e-3, 1e3), w(0, 1);
  for (int i = 0; i < 2000; ++i) {
    const PositivePair p(d(gen), d(gen));
    const double t = w(gen);
    const PositivePair wp = weighted_pair(p, t);
    CHECK(ulps(q_mean(p, t, 0.5), mean(MeanKind::RootMeanSquare, wp)) <= 4.0);
    CHECK(ulps(q_mean(p, t, 1.0), mean(MeanKind::ContraHarmonic, wp)) <= 4.0);
  }
}

TEST_CASE("log ratio forms agree") {
  for (double x : {1e-3, 0.1, 0.5, 0.9})
    for (MeanKind k : kAllMeanKinds) {
      const double full = log_q_over_mean(k, Deviation(x), 0.7, 1.5);
      const double scaled = log_q_over_mean_scaled(k, x, 0.7, 1.5);
      CHECK(rel(scaled * x * x, full) < 1e-14);
    }
  // sign still resolved where x^2 underflows
  CHECK(log_q_over_mean_scaled(MeanKind::NeumanSandor, 1e-300, 0.71, 1.0) > 0.0);
  CHECK(log_q_over_mean_scaled(MeanKind::NeumanSandor, 1e-300, 0.70, 1.0) < 0.0);
}
