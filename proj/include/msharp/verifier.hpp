#pragma once

// Sampling verification of Q_{t1,p} < M < Q_{t2,p}, counterexample search
// just past the sharp weights, and the property suite for the lemma
// functions and means.
//
// Every comparison is made through the sign of ln(Q/mean), scaled by 1/x^2
// so that the sign is still resolved where Q/mean - 1 is far below the
// double rounding unit.  A "not found" result only means the fixed search
// schedule was exhausted; rigorous statements belong to the certifier.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "msharp/means.hpp"

namespace msharp {

struct SampleConfig {
  std::size_t n_uniform = 60000;
  std::size_t n_log_low = 20000;   // log-spaced over [1e-300, 0.5]
  std::size_t n_log_high = 20000;  // x = 1 - 2^-s, s evenly spaced over [1, 40]
  std::uint64_t seed = 0x5eed2013;
  unsigned threads = 1;

  std::size_t total() const { return n_uniform + n_log_low + n_log_high; }
  /// Throws DomainError when a count or the thread count is zero.
  void validate() const;
};

/// Deterministic sample of deviations in (0,1): uniform draws from a
/// seeded mt19937_64, then the low and high log grids.
std::vector<double> sample_deviations(const SampleConfig& cfg);

enum class Side { Lower, Upper };

const char* to_string(Side s);

/// A point where Q_{t,p} fails to lie on the required side of the target
/// mean.  lhs and rhs are the means of the pair (1+x, 1-x) arranged so
/// that the claim reads lhs < rhs; margin = rhs - lhs.  Near x = 0 the two
/// means can agree to every double digit, so the decisive quantity is
/// log_ratio_scaled = ln(Q/mean)/x^2, which has the violating sign.
struct CounterexampleReport {
  Side side = Side::Lower;
  MeanKind target = MeanKind::NeumanSandor;
  double x = 0.0;
  double p = 0.0;
  double t = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  double log_ratio = 0.0;
  double log_ratio_scaled = 0.0;
};

/// Recomputes the report from (side, target, x, p, t).  True when every
/// stored value is reproduced bit-exactly and the violation still holds.
bool reverify(const CounterexampleReport& r);

struct InequalityCheck {
  bool pass = false;
  MeanKind target = MeanKind::NeumanSandor;
  double p = 0.0;
  double t_lower = 0.0;
  double t_upper = 0.0;
  std::size_t samples = 0;
  double worst_lower = 0.0;  // max over samples of ln(Q_lower/mean)/x^2, must be < 0
  double worst_upper = 0.0;  // min over samples of ln(Q_upper/mean)/x^2, must be > 0
  std::size_t violations = 0;
  std::optional<CounterexampleReport> counterexample;  // the largest violation
};

/// Checks Q_{t_lower,p} < mean < Q_{t_upper,p} at every sampled deviation.
/// p >= 1/2, t_lower and t_upper in (1/2, 1).
InequalityCheck check_double_inequality(double p, double t_lower, double t_upper, const SampleConfig& cfg,
                                        MeanKind target = MeanKind::NeumanSandor);

/// Searches x = 1 - 2^-k, k = 1..40, for Q_{t,p} >= target.  Reports the
/// largest violation.
std::optional<CounterexampleReport> falsify_lower(double p, double t, MeanKind target = MeanKind::NeumanSandor);

/// Searches log-spaced x from 0.999 down to 1e-8 for Q_{t,p} <= target.
/// Reports the largest violation.
std::optional<CounterexampleReport> falsify_upper(double p, double t, MeanKind target = MeanKind::NeumanSandor);

/// One named property of the lemma suite.  worst_margin is the smallest
/// slack observed; negative means the property failed.
struct PropertyResult {
  std::string name;
  bool pass = false;
  double worst_margin = 0.0;
  double worst_at = 0.0;
  std::size_t checks = 0;
};

struct LemmaReport {
  std::vector<PropertyResult> properties;

  bool pass() const;
  const PropertyResult* find(const std::string& name) const;
};

/// Replacement hooks for harness self-tests.
struct LemmaHooks {
  std::function<double(double)> h;  // defaults to lemma::h
};

inline constexpr double kLemmaPowers[] = {0.5, 0.75, 1.0, 2.0, 5.0, 10.0};

LemmaReport run_lemma_suite(const SampleConfig& cfg, const LemmaHooks& hooks = {});

/// One sharpness probe of the Seiffert corpus: a constant moved by 1e-3.
struct SeiffertProbe {
  std::string name;
  Side side = Side::Lower;
  MeanKind family = MeanKind::RootMeanSquare;  // S (p = 1/2) or C (p = 1)
  double t = 0.0;
  bool forbidden = false;  // moved past the sharp value
  bool expected_violation = false;
  std::optional<CounterexampleReport> counterexample;
  bool pass = false;
};

struct SeiffertReport {
  InequalityCheck s_family;  // S(t a) < T < S(t b) at alpha_max, beta_min
  InequalityCheck c_family;  // C(t a) < T < C(t b) at lambda_max, mu_min
  std::vector<SeiffertProbe> probes;

  bool pass() const;
  std::size_t probes_passed() const;
};

SeiffertReport check_seiffert_corpus(const SampleConfig& cfg);

}  // namespace msharp
