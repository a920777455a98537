#include "msharp/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <thread>
#include <tuple>

#include "msharp/error.hpp"
#include "msharp/lemma.hpp"
#include "msharp/thresholds.hpp"

namespace msharp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_power(double p) {
  if (!(p >= 0.5) || !std::isfinite(p)) throw DomainError("power p must be finite and >= 1/2");
}

void require_open_weight(double t) {
  if (!(t > 0.5 && t < 1.0)) throw DomainError("weight t must lie in (1/2,1), got " + std::to_string(t));
}

std::vector<double> log_grid(double lo, double hi, std::size_t n) {
  std::vector<double> v(n);
  const double a = std::log10(lo);
  const double b = std::log10(hi);
  for (std::size_t i = 0; i < n; ++i) v[i] = n == 1 ? lo : std::pow(10.0, a + (b - a) * double(i) / double(n - 1));
  if (n > 1) v.back() = hi;
  return v;
}

std::vector<double> linear_grid(double lo, double hi, std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = n == 1 ? lo : lo + (hi - lo) * double(i) / double(n - 1);
  return v;
}

// Spacing of doubles at |v|.
double ulp_of(double v) {
  const double a = std::fabs(v);
  if (a == 0.0) return std::numeric_limits<double>::denorm_min();
  return std::nextafter(a, kInf) - a;
}

double ulps_apart(double a, double b) { return std::fabs(a - b) / ulp_of(b); }

bool violates(Side side, double scaled) { return side == Side::Lower ? scaled >= 0.0 : scaled <= 0.0; }

CounterexampleReport make_report(Side side, MeanKind target, double x, double p, double t) {
  CounterexampleReport r;
  r.side = side;
  r.target = target;
  r.x = x;
  r.p = p;
  r.t = t;
  const PositivePair pair(1.0 + x, 1.0 - x);
  const double q = q_mean(pair, t, p);
  const double m = mean(target, pair);
  r.lhs = side == Side::Lower ? q : m;
  r.rhs = side == Side::Lower ? m : q;
  r.margin = r.rhs - r.lhs;
  r.log_ratio = log_q_over_mean(target, Deviation(x), t, p);
  r.log_ratio_scaled = log_q_over_mean_scaled(target, x, t, p);
  return r;
}

// Orders violations by size: |ln(Q/mean)| first, the scaled value second.
auto severity(const CounterexampleReport& r) {
  return std::make_tuple(std::fabs(r.log_ratio), std::fabs(r.log_ratio_scaled));
}

void keep_worst(std::optional<CounterexampleReport>& best, const CounterexampleReport& cand) {
  if (!best || severity(cand) > severity(*best)) best = cand;
}

struct ChunkResult {
  double worst_lower = -kInf;
  double worst_upper = kInf;
  std::size_t violations = 0;
  std::optional<CounterexampleReport> worst;
};

ChunkResult scan_chunk(const std::vector<double>& xs, std::size_t begin, std::size_t end, MeanKind target, double p,
                       double t_lower, double t_upper) {
  ChunkResult c;
  for (std::size_t i = begin; i < end; ++i) {
    const double x = xs[i];
    const double lo = log_q_over_mean_scaled(target, x, t_lower, p);
    const double hi = log_q_over_mean_scaled(target, x, t_upper, p);
    c.worst_lower = std::max(c.worst_lower, lo);
    c.worst_upper = std::min(c.worst_upper, hi);
    if (violates(Side::Lower, lo)) {
      ++c.violations;
      keep_worst(c.worst, make_report(Side::Lower, target, x, p, t_lower));
    }
    if (violates(Side::Upper, hi)) {
      ++c.violations;
      keep_worst(c.worst, make_report(Side::Upper, target, x, p, t_upper));
    }
  }
  return c;
}

std::optional<CounterexampleReport> falsify(Side side, MeanKind target, double p, double t,
                                            const std::vector<double>& schedule) {
  require_power(p);
  require_open_weight(t);
  std::optional<CounterexampleReport> best;
  for (double x : schedule)
    if (violates(side, log_q_over_mean_scaled(target, x, t, p))) keep_worst(best, make_report(side, target, x, p, t));
  return best;
}

const std::vector<double>& lower_schedule() {
  static const std::vector<double> s = [] {
    std::vector<double> v;
    for (int k = 1; k <= 40; ++k) v.push_back(1.0 - std::ldexp(1.0, -k));
    return v;
  }();
  return s;
}

const std::vector<double>& upper_schedule() {
  static const std::vector<double> s = log_grid(0.999, 1e-8, 401);
  return s;
}

// Accumulates the smallest slack of one property.
class Tracker {
 public:
  Tracker(std::string name, bool strict) : strict_(strict) { r_.name = std::move(name); }

  void add(double margin, double at) {
    ++r_.checks;
    if (r_.checks == 1 || margin < r_.worst_margin || std::isnan(margin)) {
      r_.worst_margin = margin;
      r_.worst_at = at;
    }
  }

  PropertyResult done() {
    const double m = r_.worst_margin;
    r_.pass = r_.checks > 0 && !std::isnan(m) && (strict_ ? m > 0.0 : m >= 0.0);
    return r_;
  }

 private:
  PropertyResult r_;
  bool strict_;
};

double central_difference(const std::function<double(double)>& fn, double x, double h) {
  return (fn(x + h) - fn(x - h)) / (2.0 * h);
}

void h_properties(LemmaReport& rep, const LemmaHooks& hooks) {
  const std::function<double(double)> h = hooks.h ? hooks.h : [](double x) { return lemma::h(x); };
  const std::vector<double> logs = log_grid(1e-4, 10.0, 400);
  const std::vector<double> lins = linear_grid(1e-3, 10.0, 1000);

  Tracker inc("h_increasing", true);
  for (const auto* g : {&logs, &lins})
    for (std::size_t i = 0; i + 1 < g->size(); ++i) inc.add(h((*g)[i + 1]) - h((*g)[i]), (*g)[i]);
  rep.properties.push_back(inc.done());

  // Central second differences at step 1e-4 about each grid point, and the
  // second differences of the uniform grid itself, which also see kinks
  // falling between grid points.
  Tracker convex("h_convex", false);
  for (const auto* g : {&logs, &lins})
    for (double x : *g) {
      const double s = std::min(1e-4, 0.5 * x);
      convex.add(h(x + s) - 2.0 * h(x) + h(x - s) + 1e-12, x);
    }
  for (std::size_t i = 1; i + 1 < lins.size(); ++i)
    convex.add(h(lins[i + 1]) - 2.0 * h(lins[i]) + h(lins[i - 1]) + 1e-12, lins[i]);
  rep.properties.push_back(convex.done());

  const std::vector<double> wide = log_grid(1e-6, 10.0, 400);
  Tracker h1("h1_positive", true);
  Tracker h2("h2_positive", true);
  for (const auto* g : {&wide, &lins})
    for (double x : *g) {
      h1.add(lemma::h1(x), x);
      h2.add(lemma::h2(x), x);
    }
  rep.properties.push_back(h1.done());
  rep.properties.push_back(h2.done());
}

void ratio_properties(LemmaReport& rep) {
  Tracker dec("ratio_decreasing", true);
  Tracker zero("ratio_limit_zero", false);
  Tracker one("ratio_limit_one", false);
  constexpr std::size_t n = 10000;
  for (double p : kLemmaPowers) {
    double prev = lemma::ratio(1.0 / n, p);
    for (std::size_t i = 2; i <= n; ++i) {
      const double x = double(i) / n;
      const double r = lemma::ratio(x, p);
      dec.add(prev - r, x);
      prev = r;
    }
    zero.add(1e-12 - std::fabs(lemma::ratio(1e-9, p) - u_high(p)), p);
    one.add(4.0 - ulps_apart(lemma::ratio(1.0, p), u_low(p)), p);
  }
  rep.properties.push_back(dec.done());
  rep.properties.push_back(zero.done());
  rep.properties.push_back(one.done());

  Tracker pos("denom_D_positive", true);
  Tracker inc("denom_D_increasing", true);
  Tracker ident("denom_D_identity", false);
  for (double p : kLemmaPowers) {
    double prev = lemma::denom_D(0.0, p);
    pos.add(prev, 0.0);
    for (std::size_t i = 1; i < 1000; ++i) {
      const double x = double(i) / 1000.0;
      const double d = lemma::denom_D(x, p);
      pos.add(d, x);
      inc.add(d - prev, x);
      prev = d;
    }
    for (double x : {0.1, 0.5, 0.9}) {
      const double d1 = central_difference([](double v) { return lemma::g1(v); }, x, 1e-6);
      const double d2 = central_difference([p](double v) { return lemma::g2(v, p); }, x, 1e-6);
      ident.add(1e-8 - std::fabs(d1 / d2 * lemma::denom_D(x, p) - 1.0), x);
    }
  }
  rep.properties.push_back(pos.done());
  rep.properties.push_back(inc.done());
  rep.properties.push_back(ident.done());
}

void derivative_properties(LemmaReport& rep) {
  Tracker fd("f_prime_matches_difference", false);
  for (double p : kLemmaPowers)
    for (double u : {0.0, 0.05, 0.1, 0.15, 0.2, 0.3, 0.5, 1.0})
      for (int i = 1; i < 20; ++i) {
        const double x = 0.05 * i;
        const double exact = lemma::f_prime(x, u, p);
        if (std::fabs(exact) < 1e-4) continue;
        const double approx = central_difference([u, p](double v) { return lemma::f(v, u, p); }, x, 1e-6);
        fd.add(1e-6 - std::fabs(approx - exact) / std::fabs(exact), x);
      }
  rep.properties.push_back(fd.done());

  const std::vector<double> xs = log_grid(1e-3, 0.999, 400);
  Tracker up("f_prime_positive_above_u_high", true);
  Tracker down("f_prime_negative_below_u_low", true);
  for (double p : kLemmaPowers) {
    const double u_up = u_high(p) + 0.01;
    const double u_dn = u_low(p) - 0.01;
    for (double x : xs) {
      up.add(lemma::f_prime(x, u_up, p), x);
      if (u_dn >= 0.0) down.add(-lemma::f_prime(x, u_dn, p), x);
    }
  }
  rep.properties.push_back(up.done());
  rep.properties.push_back(down.done());

  Tracker root("critical_point_root", false);
  Tracker shape("critical_point_shape", true);
  for (double p : kLemmaPowers) {
    const double u = 0.5 * (u_low(p) + u_high(p));
    const lemma::SignRegime reg = lemma::find_critical_x(u, p);
    if (reg.kind != lemma::SignRegime::Kind::DipThenRise) {
      shape.add(-1.0, p);
      continue;
    }
    root.add(1e-12 - std::fabs(lemma::f_prime(reg.x0, u, p)), reg.x0);
    shape.add(std::min(-lemma::f_prime(0.5 * reg.x0, u, p), lemma::f_prime(0.5 * (1.0 + reg.x0), u, p)), reg.x0);
  }
  rep.properties.push_back(root.done());
  rep.properties.push_back(shape.done());
}

void threshold_properties(LemmaReport& rep, const std::vector<double>& xs) {
  Tracker sandwich("u_sandwich", true);
  Tracker signs("h_p_signs", true);
  Tracker zero("h_p_zero_at_u_zero", false);
  Tracker fsign("f_sign_characterization", true);
  constexpr double kDelta = 1e-3;
  for (double p : kLemmaPowers) {
    const double lo = u_low(p);
    const double z = u_zero(p);
    const double hi = u_high(p);
    sandwich.add(std::min(z - lo, hi - z), p);
    signs.add(std::min(h_p(hi, p), -h_p(lo, p)), p);
    zero.add(1e-15 - std::fabs(h_p(z, p)), p);
    for (double x : xs)
      fsign.add(std::min(lemma::f_scaled(x, hi + kDelta, p), -lemma::f_scaled(x, z - kDelta, p)), x);
  }
  rep.properties.push_back(sandwich.done());
  rep.properties.push_back(signs.done());
  rep.properties.push_back(zero.done());
  rep.properties.push_back(fsign.done());
}

void reduction_property(LemmaReport& rep) {
  Tracker ident("reduction_identity", false);
  const std::vector<double> xs = linear_grid(0.01, 0.99, 50);
  const std::vector<double> us = linear_grid(0.0, 1.0, 20);
  constexpr double kPowers[] = {0.5, 0.75, 1.0, 1.5, 2.0, 3.0, 5.0, 10.0, 20.0, 100.0};
  for (double x : xs)
    for (double u : us)
      for (double p : kPowers) {
        const double t = u_to_weight(u);
        const PositivePair pair(1.0 + x, 1.0 - x);
        const double direct = std::log(q_mean(pair, t, p) / mean(MeanKind::NeumanSandor, pair));
        ident.add(1e-13 - std::fabs(lemma::f(x, weight_to_u(t), p) - direct), x);
      }
  rep.properties.push_back(ident.done());
}

void mean_properties(LemmaReport& rep, const SampleConfig& cfg, const std::vector<double>& xs) {
  std::mt19937_64 gen(cfg.seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> weight(0.0, 1.0);

  Tracker sym("mean_symmetry", false);
  Tracker hom("mean_homogeneity", false);
  Tracker bounds("mean_between_arguments", true);
  Tracker order("mean_ordering", true);
  Tracker order_small("mean_ordering_reduced", true);
  Tracker q_rms("q_identity_root_mean_square", false);
  Tracker q_ch("q_identity_contra_harmonic", false);
  Tracker q_mono("q_increasing_in_t", true);

  for (int i = 0; i < 10000; ++i) {
    const double a = 0.5 + 1000.0 * unit(gen);
    const double b = 0.5 + 1000.0 * unit(gen);
    const PositivePair pair(a, b);
    const PositivePair swapped(b, a);
    const double x = deviation(pair).value();
    for (MeanKind k : kAllMeanKinds) {
      const double m = mean(k, pair);
      sym.add(m == mean(k, swapped) ? 0.0 : -1.0, x);
      for (double lambda : {0x1p-40, 1.0, 0x1p40}) {
        const double scaled = mean(k, PositivePair(lambda * a, lambda * b));
        hom.add(-ulps_apart(scaled, lambda * m), x);
      }
      if (a != b && x >= 1e-4) bounds.add(std::min(m - std::min(a, b), std::max(a, b) - m), x);
    }
    if (x >= 1e-4) {
      double prev = 0.0;
      for (MeanKind k : {MeanKind::Arithmetic, MeanKind::NeumanSandor, MeanKind::SecondSeiffert,
                         MeanKind::RootMeanSquare, MeanKind::ContraHarmonic}) {
        const double m = mean(k, pair);
        if (k != MeanKind::Arithmetic) order.add(m - prev, x);
        prev = m;
      }
    }
    const double t = weight(gen);
    const PositivePair w = weighted_pair(pair, t);
    q_rms.add(4.0 - ulps_apart(q_mean(pair, t, 0.5), mean(MeanKind::RootMeanSquare, w)), x);
    q_ch.add(4.0 - ulps_apart(q_mean(pair, t, 1.0), mean(MeanKind::ContraHarmonic, w)), x);
  }

  // Below x ~ 1e-4 the means agree to every double digit; the ordering is
  // then compared on ln m(x)/x^2, which stays resolved down to 1e-300.
  for (double x : xs) {
    double prev = -kInf;
    for (MeanKind k : {MeanKind::Arithmetic, MeanKind::NeumanSandor, MeanKind::SecondSeiffert,
                       MeanKind::RootMeanSquare, MeanKind::ContraHarmonic}) {
      const double lm = -log_q_over_mean_scaled(k, x, 0.5, 1.0);
      if (k != MeanKind::Arithmetic) order_small.add(lm - prev, x);
      prev = lm;
    }
  }

  const std::vector<double> ts = linear_grid(0.501, 0.999, 499);
  for (double x : linear_grid(0.1, 0.99, 30))
    for (double p : kLemmaPowers) {
      const PositivePair pair(1.0 + x, 1.0 - x);
      double prev = q_mean(pair, ts.front(), p);
      for (std::size_t i = 1; i < ts.size(); ++i) {
        const double q = q_mean(pair, ts[i], p);
        q_mono.add(q - prev, ts[i]);
        prev = q;
      }
    }

  for (Tracker* t : {&sym, &hom, &bounds, &order, &order_small, &q_rms, &q_ch, &q_mono})
    rep.properties.push_back(t->done());
}

}  // namespace

void SampleConfig::validate() const {
  if (n_uniform == 0 || n_log_low == 0 || n_log_high == 0) throw DomainError("sample counts must be >= 1");
  if (threads == 0) throw DomainError("thread count must be >= 1");
}

std::vector<double> sample_deviations(const SampleConfig& cfg) {
  cfg.validate();
  std::vector<double> xs;
  xs.reserve(cfg.total());
  std::mt19937_64 gen(cfg.seed);
  for (std::size_t i = 0; i < cfg.n_uniform; ++i) xs.push_back((double(gen() >> 11) + 0.5) * 0x1p-53);
  for (double x : log_grid(1e-300, 0.5, cfg.n_log_low)) xs.push_back(x);
  for (double s : linear_grid(1.0, 40.0, cfg.n_log_high)) xs.push_back(1.0 - std::exp2(-s));
  return xs;
}

const char* to_string(Side s) { return s == Side::Lower ? "lower" : "upper"; }

bool reverify(const CounterexampleReport& r) {
  try {
    const CounterexampleReport again = make_report(r.side, r.target, r.x, r.p, r.t);
    const bool same = again.lhs == r.lhs && again.rhs == r.rhs && again.margin == r.margin &&
                      again.log_ratio == r.log_ratio && again.log_ratio_scaled == r.log_ratio_scaled;
    return same && violates(r.side, r.log_ratio_scaled);
  } catch (const DomainError&) {
    return false;
  }
}

InequalityCheck check_double_inequality(double p, double t_lower, double t_upper, const SampleConfig& cfg,
                                        MeanKind target) {
  require_power(p);
  require_open_weight(t_lower);
  require_open_weight(t_upper);
  const std::vector<double> xs = sample_deviations(cfg);

  const std::size_t chunks = std::min<std::size_t>(cfg.threads, xs.size());
  std::vector<ChunkResult> parts(chunks);
  auto run = [&](std::size_t c) {
    const std::size_t begin = xs.size() * c / chunks;
    const std::size_t end = xs.size() * (c + 1) / chunks;
    parts[c] = scan_chunk(xs, begin, end, target, p, t_lower, t_upper);
  };
  if (chunks == 1) {
    run(0);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t c = 0; c < chunks; ++c) pool.emplace_back(run, c);
  }

  InequalityCheck out;
  out.target = target;
  out.p = p;
  out.t_lower = t_lower;
  out.t_upper = t_upper;
  out.samples = xs.size();
  out.worst_lower = -kInf;
  out.worst_upper = kInf;
  for (const ChunkResult& c : parts) {
    out.worst_lower = std::max(out.worst_lower, c.worst_lower);
    out.worst_upper = std::min(out.worst_upper, c.worst_upper);
    out.violations += c.violations;
    if (c.worst) keep_worst(out.counterexample, *c.worst);
  }
  out.pass = out.violations == 0;
  return out;
}

std::optional<CounterexampleReport> falsify_lower(double p, double t, MeanKind target) {
  return falsify(Side::Lower, target, p, t, lower_schedule());
}

std::optional<CounterexampleReport> falsify_upper(double p, double t, MeanKind target) {
  return falsify(Side::Upper, target, p, t, upper_schedule());
}

bool LemmaReport::pass() const {
  return !properties.empty() &&
         std::all_of(properties.begin(), properties.end(), [](const PropertyResult& r) { return r.pass; });
}

const PropertyResult* LemmaReport::find(const std::string& name) const {
  for (const PropertyResult& r : properties)
    if (r.name == name) return &r;
  return nullptr;
}

LemmaReport run_lemma_suite(const SampleConfig& cfg, const LemmaHooks& hooks) {
  const std::vector<double> xs = sample_deviations(cfg);
  LemmaReport rep;
  h_properties(rep, hooks);
  ratio_properties(rep);
  derivative_properties(rep);
  threshold_properties(rep, xs);
  reduction_property(rep);
  mean_properties(rep, cfg, xs);
  return rep;
}

bool SeiffertReport::pass() const { return s_family.pass && c_family.pass && probes_passed() == probes.size(); }

std::size_t SeiffertReport::probes_passed() const {
  return static_cast<std::size_t>(
      std::count_if(probes.begin(), probes.end(), [](const SeiffertProbe& p) { return p.pass; }));
}

SeiffertReport check_seiffert_corpus(const SampleConfig& cfg) {
  const SeiffertConstants k = seiffert_constants();
  SeiffertReport rep;
  rep.s_family = check_double_inequality(0.5, k.alpha_max, k.beta_min, cfg, MeanKind::SecondSeiffert);
  rep.c_family = check_double_inequality(1.0, k.lambda_max, k.mu_min, cfg, MeanKind::SecondSeiffert);

  struct Spec {
    const char* name;
    Side side;
    MeanKind family;
    double sharp;
  };
  const Spec specs[] = {
      {"alpha_max", Side::Lower, MeanKind::RootMeanSquare, k.alpha_max},
      {"beta_min", Side::Upper, MeanKind::RootMeanSquare, k.beta_min},
      {"lambda_max", Side::Lower, MeanKind::ContraHarmonic, k.lambda_max},
      {"mu_min", Side::Upper, MeanKind::ContraHarmonic, k.mu_min},
  };
  constexpr double kStep = 1e-3;
  for (const Spec& s : specs) {
    const double p = s.family == MeanKind::RootMeanSquare ? 0.5 : 1.0;
    // Raising a lower weight or lowering an upper weight crosses the sharp value.
    const double outward = s.side == Side::Lower ? kStep : -kStep;
    for (bool forbidden : {true, false}) {
      SeiffertProbe probe;
      probe.name = std::string(s.name) + (forbidden ? "/forbidden" : "/allowed");
      probe.side = s.side;
      probe.family = s.family;
      probe.t = s.sharp + (forbidden ? outward : -outward);
      probe.forbidden = forbidden;
      probe.expected_violation = forbidden;
      probe.counterexample = s.side == Side::Lower ? falsify_lower(p, probe.t, MeanKind::SecondSeiffert)
                                                   : falsify_upper(p, probe.t, MeanKind::SecondSeiffert);
      probe.pass = probe.counterexample.has_value() == probe.expected_violation &&
                   (!probe.counterexample || reverify(*probe.counterexample));
      rep.probes.push_back(probe);
    }
  }
  return rep;
}

}  // namespace msharp
