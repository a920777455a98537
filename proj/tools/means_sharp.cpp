// means-sharp: evaluate the means, tabulate the sharp weights, and run the
// verifier and certifier from the command line.
//
// Exit codes: 0 pass / certified / nothing found, 1 counterexample or
// Unknown, 2 usage error.

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "msharp/certifier.hpp"
#include "msharp/error.hpp"
#include "msharp/serialize.hpp"
#include "msharp/lemma.hpp"
#include "msharp/means.hpp"
#include "msharp/thresholds.hpp"
#include "msharp/verifier.hpp"

using namespace msharp;
using Json = nlohmann::ordered_json;

namespace {

constexpr int kExitFound = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Shortest decimal that parses back to the same double.
std::string shortest(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string digits17(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot open output file: " + path);
  out << text;
  if (!out.flush()) throw UsageError("cannot write output file: " + path);
}

// CSV goes to the file with a <file>.manifest.json sidecar, or to stdout.
void emit_csv(const std::string& output, const std::string& csv, RunManifest manifest) {
  if (output.empty()) {
    std::cout << csv;
    return;
  }
  manifest.outputs = {output, output + ".manifest.json"};
  write_text(output, csv);
  write_text(output + ".manifest.json", make_document(manifest, Json::object()).dump(2) + "\n");
}

void emit_json(const std::string& output, const Json& body, RunManifest manifest) {
  if (!output.empty()) manifest.outputs = {output};
  const std::string text = make_document(manifest, body).dump(2) + "\n";
  if (output.empty())
    std::cout << text;
  else
    write_text(output, text);
}

void add_sample_options(CLI::App* sub, SampleConfig& cfg) {
  sub->add_option("--seed", cfg.seed, "Sampling seed");
  sub->add_option("--n-uniform", cfg.n_uniform, "Uniform samples in (0,1)")->check(CLI::PositiveNumber);
  sub->add_option("--n-log-low", cfg.n_log_low, "Log-spaced samples over [1e-300, 0.5]")->check(CLI::PositiveNumber);
  sub->add_option("--n-log-high", cfg.n_log_high, "Samples x = 1 - 2^-s, s in [1, 40]")->check(CLI::PositiveNumber);
  sub->add_option("--threads", cfg.threads, "Worker threads")->check(CLI::PositiveNumber);
}

Json config_json(const SampleConfig& cfg) {
  return Json{{"n_uniform", cfg.n_uniform},
              {"n_log_low", cfg.n_log_low},
              {"n_log_high", cfg.n_log_high},
              {"threads", cfg.threads}};
}

std::vector<double> profile_grid(std::size_t n) {
  // Half log-spaced over [1e-6, 1e-2), half linear over [1e-2, 1 - 1e-6].
  const std::size_t n_log = n / 2;
  const std::size_t n_lin = n - n_log;
  std::vector<double> xs;
  for (std::size_t i = 0; i < n_log; ++i) xs.push_back(std::pow(10.0, -6.0 + 4.0 * double(i) / double(n_log)));
  for (std::size_t i = 0; i < n_lin; ++i)
    xs.push_back(n_lin == 1 ? 1e-2 : 1e-2 + (1.0 - 1e-6 - 1e-2) * double(i) / double(n_lin - 1));
  return xs;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Neuman-Sandor mean bounds by the power contra-harmonic family Q_{t,p}"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(library_version()));

  // eval
  auto* eval = app.add_subcommand("eval", "Evaluate a mean or Q_{t,p} at (a, b)");
  std::string kind_name;
  bool use_q = false;
  double eval_t = 1.0;
  double eval_p = 1.0;
  std::vector<double> ab;
  auto* mean_opt = eval->add_option("--mean", kind_name, "a, c, s, t, m/ns or a full snake_case name");
  auto* q_flag = eval->add_flag("--q", use_q, "Evaluate Q_{t,p}");
  eval->add_option("--t", eval_t, "Weight t in [0,1] for --q");
  eval->add_option("--p", eval_p, "Power p >= 1/2 for --q");
  eval->add_option("ab", ab, "The pair a b")->expected(2)->required();
  mean_opt->excludes(q_flag);

  // thresholds
  auto* thr = app.add_subcommand("thresholds", "Tabulate the sharp weights over a p range");
  double p_min = 0.5;
  double p_max = 10.0;
  std::size_t thr_n = 20;
  std::string thr_format = "csv";
  std::string thr_output;
  thr->add_option("--p-min", p_min, "Smallest p (>= 1/2)");
  thr->add_option("--p-max", p_max, "Largest p");
  thr->add_option("--n", thr_n, "Number of rows")->check(CLI::PositiveNumber);
  thr->add_option("--format", thr_format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  thr->add_option("--output", thr_output, "Output file (default stdout)");

  // verify
  auto* ver = app.add_subcommand("verify", "Sample Q_{t1,p} < M < Q_{t2,p}");
  double ver_p = 1.0;
  std::optional<double> ver_t1;
  std::optional<double> ver_t2;
  SampleConfig ver_cfg;
  std::string ver_output;
  ver->add_option("--p", ver_p, "Power p >= 1/2");
  ver->add_option("--t1", ver_t1, "Lower weight (default t1_max(p) - 1e-6)");
  ver->add_option("--t2", ver_t2, "Upper weight (default t2_min(p) + 1e-6)");
  ver->add_option("--output", ver_output, "Output file (default stdout)");
  add_sample_options(ver, ver_cfg);

  // falsify
  auto* fal = app.add_subcommand("falsify", "Search for a counterexample at one weight");
  double fal_p = 1.0;
  double fal_t = 0.0;
  std::string fal_side = "lower";
  fal->add_option("--p", fal_p, "Power p >= 1/2");
  fal->add_option("--t", fal_t, "Weight t in (1/2,1)")->required();
  fal->add_option("--side", fal_side, "lower or upper")->check(CLI::IsMember({"lower", "upper"}));

  // certify
  auto* cer = app.add_subcommand("certify", "Interval certification of both bounds at fixed p");
  double cer_p = 1.0;
  double cer_delta = 1e-3;
  int cer_depth = 60;
  std::string cer_output;
  cer->add_option("--p", cer_p, "Power p >= 1/2");
  cer->add_option("--delta", cer_delta, "Margin from the sharp u values");
  cer->add_option("--depth", cer_depth, "Maximum bisection depth")->check(CLI::NonNegativeNumber);
  cer->add_option("--output", cer_output, "Output file (default stdout)");

  // profile
  auto* pro = app.add_subcommand("profile", "CSV of m_M, (1 + u x^2)^p and f over x");
  double pro_p = 1.0;
  std::vector<double> pro_t;
  std::size_t pro_n = 200;
  std::string pro_output;
  pro->add_option("--p", pro_p, "Power p >= 1/2");
  pro->add_option("--t", pro_t, "Weights (default t1_max(p) and t2_min(p))");
  pro->add_option("--n", pro_n, "Grid size (>= 2)");
  pro->add_option("--output", pro_output, "Output file (default stdout)");

  // lemmas / seiffert
  auto* lem = app.add_subcommand("lemmas", "Run the lemma property suite");
  SampleConfig lem_cfg;
  add_sample_options(lem, lem_cfg);
  auto* sei = app.add_subcommand("seiffert", "Check the second Seiffert mean corpus");
  SampleConfig sei_cfg;
  add_sample_options(sei, sei_cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    RunManifest manifest;
    manifest.command = app.get_subcommands().front()->get_name();

    if (eval->parsed()) {
      const PositivePair pair(ab[0], ab[1]);
      double v = 0.0;
      if (use_q) {
        manifest.params = {{"q", true}, {"t", eval_t}, {"p", eval_p}};
        v = q_mean(pair, eval_t, eval_p);
      } else {
        if (kind_name.empty()) throw UsageError("eval needs --mean KIND or --q");
        const auto kind = parse_mean_kind(kind_name);
        if (!kind) throw UsageError("unknown mean kind: " + kind_name);
        v = mean(*kind, pair);
      }
      std::cout << digits17(v) << "\n";
      return 0;
    }

    if (thr->parsed()) {
      if (!(p_min >= 0.5) || !(p_max >= p_min)) throw UsageError("need 1/2 <= p-min <= p-max");
      manifest.params = {{"p_min", p_min}, {"p_max", p_max}, {"n", thr_n}, {"format", thr_format}};
      std::vector<double> ps;
      for (std::size_t i = 0; i < thr_n; ++i)
        ps.push_back(thr_n == 1 ? p_min : p_min + (p_max - p_min) * double(i) / double(thr_n - 1));
      if (thr_format == "csv") {
        std::string csv = "p,t1_max,t2_min,u_zero,u_low,u_high\n";
        for (double p : ps)
          csv += shortest(p) + "," + shortest(lower_weight_threshold(p)) + "," + shortest(upper_weight_threshold(p)) +
                 "," + shortest(u_zero(p)) + "," + shortest(u_low(p)) + "," + shortest(u_high(p)) + "\n";
        emit_csv(thr_output, csv, manifest);
      } else {
        Json rows = Json::array();
        for (double p : ps)
          rows.push_back(Json{{"p", p},
                              {"t1_max", lower_weight_threshold(p)},
                              {"t2_min", upper_weight_threshold(p)},
                              {"u_zero", u_zero(p)},
                              {"u_low", u_low(p)},
                              {"u_high", u_high(p)}});
        emit_json(thr_output, Json{{"rows", rows}}, manifest);
      }
      return 0;
    }

    if (ver->parsed()) {
      const double t1 = ver_t1.value_or(lower_weight_threshold(ver_p) - 1e-6);
      const double t2 = ver_t2.value_or(upper_weight_threshold(ver_p) + 1e-6);
      manifest.params = {{"p", ver_p}, {"t1", t1}, {"t2", t2}, {"samples", config_json(ver_cfg)}};
      manifest.seed = ver_cfg.seed;
      const InequalityCheck check = check_double_inequality(ver_p, t1, t2, ver_cfg);
      emit_json(ver_output, Json{{"result", check}}, manifest);
      return check.pass ? 0 : kExitFound;
    }

    if (fal->parsed()) {
      manifest.params = {{"p", fal_p}, {"t", fal_t}, {"side", fal_side}};
      const auto found = fal_side == "lower" ? falsify_lower(fal_p, fal_t) : falsify_upper(fal_p, fal_t);
      Json body{{"found", found.has_value()}};
      body["counterexample"] = found ? Json(*found) : Json(nullptr);
      emit_json("", body, manifest);
      return found ? kExitFound : 0;
    }

    if (cer->parsed()) {
      manifest.params = {{"p", cer_p}, {"delta", cer_delta}, {"depth", cer_depth}};
      const TheoremCertification cert = certify_theorem(cer_p, cer_delta, cer_depth);
      emit_json(cer_output, Json{{"result", cert}}, manifest);
      return cert.complete() ? 0 : kExitFound;
    }

    if (pro->parsed()) {
      if (pro_n < 2) throw UsageError("profile needs --n >= 2");
      if (pro_t.empty()) pro_t = {lower_weight_threshold(pro_p), upper_weight_threshold(pro_p)};
      Json ts = Json::array();
      for (double t : pro_t) ts.push_back(t);
      manifest.params = {{"p", pro_p}, {"t", ts}, {"n", pro_n}};
      std::string csv = "x,m_M";
      for (double t : pro_t) csv += ",q(t=" + shortest(t) + ")";
      for (double t : pro_t) csv += ",f(t=" + shortest(t) + ")";
      csv += "\n";
      for (double x : profile_grid(pro_n)) {
        csv += shortest(x) + "," + shortest(normalized_profile(MeanKind::NeumanSandor, Deviation(x)));
        for (double t : pro_t) csv += "," + shortest(std::exp(pro_p * std::log1p(weight_to_u(t) * x * x)));
        for (double t : pro_t) csv += "," + shortest(lemma::f(x, weight_to_u(t), pro_p));
        csv += "\n";
      }
      emit_csv(pro_output, csv, manifest);
      return 0;
    }

    if (lem->parsed()) {
      manifest.params = {{"samples", config_json(lem_cfg)}};
      manifest.seed = lem_cfg.seed;
      const LemmaReport rep = run_lemma_suite(lem_cfg);
      emit_json("", Json{{"result", rep}}, manifest);
      return rep.pass() ? 0 : kExitFound;
    }

    if (sei->parsed()) {
      manifest.params = {{"samples", config_json(sei_cfg)}};
      manifest.seed = sei_cfg.seed;
      const SeiffertReport rep = check_seiffert_corpus(sei_cfg);
      emit_json("", Json{{"result", rep}}, manifest);
      return rep.pass() ? 0 : kExitFound;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
