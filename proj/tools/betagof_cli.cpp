// Command-line front end.  Talks to the library through the C API only; all
// terminal output is assembled in memory and written through a single writer,
// and nothing written to stdout depends on the worker thread count.

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "betagof.h"

namespace {

using ordered_json = nlohmann::ordered_json;

// Exit codes: 0 ok, 1 error, 2 gated rejection.
constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitGateReject = 2;

struct CliError {
  std::string message;
};

[[noreturn]] void fail(const std::string& message) { throw CliError{message}; }

void check(bg_status status) {
  if (status != BG_OK) fail(bg_last_error());
}

struct SampleHandle {
  bg_sample* ptr = nullptr;
  ~SampleHandle() { bg_sample_free(ptr); }
};

struct ResultHandle {
  bg_test_result* ptr = nullptr;
  ~ResultHandle() { bg_test_result_free(ptr); }
};

struct EigenHandle {
  bg_eigen_result* ptr = nullptr;
  ~EigenHandle() { bg_eigen_free(ptr); }
};

struct PowerHandle {
  bg_power_result* ptr = nullptr;
  ~PowerHandle() { bg_power_free(ptr); }
};

std::string fmt(const char* format, ...) {
  va_list args;
  va_start(args, format);
  char buf[256];
  std::vsnprintf(buf, sizeof(buf), format, args);
  va_end(args);
  return buf;
}

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::fwrite(text.data(), 1, text.size(), stdout);
    return;
  }
  std::ofstream os(out_path, std::ios::binary);
  if (!os) fail("cannot open output file: " + out_path);
  os.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!os) fail("cannot write output file: " + out_path);
}

// One observation per line, or a single-column CSV whose first row may be a
// non-numeric header.  Values are validated to [0,1].
std::vector<double> read_data_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) fail("cannot open data file: " + path);
  std::vector<double> values;
  std::string line;
  std::size_t lineno = 0;
  bool saw_content = false;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t b = line.find_first_not_of(" \t");
    if (b == std::string::npos) continue;
    std::size_t e = line.find_last_not_of(" \t,");
    std::string token = line.substr(b, e - b + 1);
    if (token.empty()) continue;

    char* end = nullptr;
    double v = std::strtod(token.c_str(), &end);
    if (end != token.c_str() + token.size()) {
      if (!saw_content) {  // optional single header row
        saw_content = true;
        continue;
      }
      fail(fmt("%s:%zu: not a number: ", path.c_str(), lineno) + token);
    }
    saw_content = true;
    if (!(v >= 0.0 && v <= 1.0))
      fail(fmt("%s:%zu: value %g outside [0,1]", path.c_str(), lineno, v));
    values.push_back(v);
  }
  return values;
}

const std::vector<std::string>& battery_names() {
  static const std::vector<std::string> names = {"tn", "rf:0.25", "rf:2",
                                                 "rf:5", "ks",    "cm", "ad"};
  return names;
}

// Expands "all" and drops duplicates, keeping first-use order.
std::vector<std::string> resolve_statistics(const std::vector<std::string>& raw) {
  std::vector<std::string> out;
  auto add = [&out](const std::string& name) {
    for (const auto& have : out)
      if (have == name) return;
    out.push_back(name);
  };
  for (const auto& entry : raw) {
    std::string lower;
    for (char c : entry) lower.push_back(static_cast<char>(std::tolower(c)));
    if (lower == "all") {
      for (const auto& name : battery_names()) add(name);
    } else {
      add(lower);
    }
  }
  if (out.empty()) out.push_back("tn");
  return out;
}

struct TestOptions {
  std::string data_name;
  std::string file_path;
  std::vector<std::string> stats;
  std::string estimator = "mle";
  int B = 500;
  double level = 0.05;
  std::uint64_t seed = 0;
  int threads = 0;
  std::string format = "text";
  std::string out_path;
  std::string qq_path;
  double winsorize = -1.0;
  bool gate = false;
  bool dry_run = false;
  bool keep_bootstrap = false;
};

struct LoadedData {
  std::string source;
  std::vector<double> values;
};

LoadedData load_test_data(const TestOptions& opt) {
  LoadedData data;
  if (!opt.data_name.empty()) {
    SampleHandle s;
    check(bg_sample_builtin(opt.data_name.c_str(), &s.ptr));
    data.source = opt.data_name;
    const double* v = bg_sample_values(s.ptr);
    data.values.assign(v, v + bg_sample_size(s.ptr));
  } else {
    data.source = opt.file_path;
    data.values = read_data_file(opt.file_path);
  }
  if (data.values.empty()) fail("no observations in " + data.source);
  if (opt.winsorize > 0.0) {
    double lo = opt.winsorize, hi = 1.0 - opt.winsorize;
    for (double& v : data.values) v = std::min(std::max(v, lo), hi);
  }
  return data;
}

void write_qq_csv(const std::string& path, const std::vector<double>& xs,
                  double alpha, double beta) {
  std::vector<double> sorted = xs;
  std::sort(sorted.begin(), sorted.end());
  std::string out = "p,theoretical,empirical\n";
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    double p = (static_cast<double>(i) + 0.5) / static_cast<double>(sorted.size());
    double q = 0.0;
    check(bg_beta_quantile(p, alpha, beta, &q));
    out += fmt("%.10g,%.10g,%.10g\n", p, q, sorted[i]);
  }
  write_output(out, path);
}

ordered_json fit_to_json(const bg_fit_params& fit, bool with_solver_info) {
  ordered_json j;
  j["alpha"] = fit.alpha;
  j["beta"] = fit.beta;
  if (with_solver_info) {
    j["iterations"] = fit.iterations;
    j["residual"] = fit.residual;
  }
  return j;
}

int cmd_test(const TestOptions& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  LoadedData data = load_test_data(opt);
  const std::vector<std::string> stats = resolve_statistics(opt.stats);
  const bool use_moments = opt.estimator == "moments";

  double lo = data.values[0], hi = data.values[0];
  for (double v : data.values) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }

  if (opt.dry_run) {
    ordered_json plan;
    plan["command"] = "test";
    plan["input"] = {{"source", data.source},
                     {"n", data.values.size()},
                     {"min", lo},
                     {"max", hi}};
    plan["statistics"] = stats;
    plan["estimator"] = opt.estimator;
    plan["B"] = opt.B;
    plan["level"] = opt.level;
    plan["seed"] = opt.seed;
    plan["format"] = opt.format;
    plan["gate"] = opt.gate;
    write_output(plan.dump(2) + "\n", opt.out_path);
    return kExitOk;
  }

  SampleHandle sample;
  check(bg_sample_create(data.values.data(), data.values.size(), &sample.ptr));

  // The report carries both estimators' fits; only a failure of the selected
  // one is fatal.
  bg_fit_params fit_mle{}, fit_mom{};
  bg_status st_mle = bg_fit(sample.ptr, 0, &fit_mle);
  std::string err_mle = st_mle == BG_OK ? "" : bg_last_error();
  bg_status st_mom = bg_fit(sample.ptr, 1, &fit_mom);
  std::string err_mom = st_mom == BG_OK ? "" : bg_last_error();
  if (use_moments && st_mom != BG_OK) fail(err_mom);
  if (!use_moments && st_mle != BG_OK) fail(err_mle);
  const bg_fit_params& used = use_moments ? fit_mom : fit_mle;

  if (!opt.qq_path.empty())
    write_qq_csv(opt.qq_path, data.values, used.alpha, used.beta);

  std::vector<const char*> kinds;
  for (const auto& s : stats) kinds.push_back(s.c_str());
  bg_test_spec spec{};
  spec.use_moments = use_moments ? 1 : 0;
  spec.replications = opt.B;
  spec.level = opt.level;
  spec.seed = opt.seed;
  spec.threads = opt.threads;
  spec.keep_bootstrap = opt.keep_bootstrap ? 1 : 0;

  ResultHandle result;
  check(bg_run_battery(sample.ptr, kinds.data(), kinds.size(), &spec,
                       &result.ptr));

  std::vector<bg_test_outcome> outcomes(bg_test_result_count(result.ptr));
  bool any_reject = false;
  int redraws = 0;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    check(bg_test_result_outcome(result.ptr, i, &outcomes[i]));
    any_reject = any_reject || outcomes[i].reject != 0;
    redraws = outcomes[i].redraws;  // shared across the battery
  }

  const double runtime =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();

  std::string out;
  if (opt.format == "json") {
    ordered_json doc;
    doc["tool"] = "betagof";
    doc["version"] = bg_version();
    doc["command"] = "test";
    doc["input"] = {{"source", data.source},
                    {"n", data.values.size()},
                    {"min", lo},
                    {"max", hi}};
    doc["estimator"] = opt.estimator;
    doc["fits"] = ordered_json::object();
    doc["fits"]["mle"] =
        st_mle == BG_OK ? fit_to_json(fit_mle, true) : ordered_json(nullptr);
    doc["fits"]["moments"] =
        st_mom == BG_OK ? fit_to_json(fit_mom, false) : ordered_json(nullptr);
    doc["settings"] = {
        {"B", opt.B}, {"level", opt.level}, {"seed", opt.seed}};
    doc["tests"] = ordered_json::array();
    for (const auto& oc : outcomes) {
      ordered_json row;
      row["statistic"] = oc.statistic;
      row["value"] = oc.statistic_value;
      row["critical_value"] = oc.critical_value;
      row["p_value"] = oc.p_value;
      row["reject"] = oc.reject != 0;
      doc["tests"].push_back(row);
    }
    doc["redraws"] = redraws;
    doc["runtime_seconds"] = runtime;
    out = doc.dump(2) + "\n";
  } else if (opt.format == "csv") {
    out = "statistic,n,estimator,B,level,value,critical_value,p_value,reject\n";
    for (const auto& oc : outcomes)
      out += fmt("%s,%zu,%s,%d,%g,%.10g,%.10g,%.10g,%d\n", oc.statistic,
                 data.values.size(), opt.estimator.c_str(), opt.B, opt.level,
                 oc.statistic_value, oc.critical_value, oc.p_value, oc.reject);
  } else {
    out += fmt("betagof %s\n", bg_version());
    out += fmt("data: %s (n = %zu, min = %g, max = %g)\n", data.source.c_str(),
               data.values.size(), lo, hi);
    if (st_mle == BG_OK)
      out += fmt("fit mle:     alpha = %.6g, beta = %.6g  (%d iterations, residual %.2e)\n",
                 fit_mle.alpha, fit_mle.beta, fit_mle.iterations,
                 fit_mle.residual);
    else
      out += "fit mle:     unavailable (" + err_mle + ")\n";
    if (st_mom == BG_OK)
      out += fmt("fit moments: alpha = %.6g, beta = %.6g\n", fit_mom.alpha,
                 fit_mom.beta);
    else
      out += "fit moments: unavailable (" + err_mom + ")\n";
    out += fmt("estimator: %s   B = %d   level = %g   seed = %llu\n",
               opt.estimator.c_str(), opt.B, opt.level,
               static_cast<unsigned long long>(opt.seed));
    out += fmt("%-9s %12s %12s %10s  %s\n", "statistic", "value", "critical",
               "p-value", "decision");
    for (const auto& oc : outcomes)
      out += fmt("%-9s %12.6g %12.6g %10.4g  %s\n", oc.statistic,
                 oc.statistic_value, oc.critical_value, oc.p_value,
                 oc.reject ? "reject" : "retain");
    if (redraws > 0) out += fmt("redraws: %d\n", redraws);
    out += fmt("runtime: %.3f s\n", runtime);
  }
  write_output(out, opt.out_path);

  return opt.gate && any_reject ? kExitGateReject : kExitOk;
}

struct PowerOptions {
  std::string config_path;
  std::string format = "csv";
  std::string out_path;
  int threads = -1;  // -1: honor the config file
  bool dry_run = false;
  bool progress = false;
};

void print_progress(int done, int total, void*) {
  std::fprintf(stderr, "\r%d / %d replications", done, total);
  if (done == total) std::fputc('\n', stderr);
  std::fflush(stderr);
}

int cmd_power(const PowerOptions& opt) {
  std::ifstream is(opt.config_path);
  if (!is) fail("cannot open config file: " + opt.config_path);
  std::stringstream buffer;
  buffer << is.rdbuf();
  std::string config = buffer.str();

  if (opt.threads >= 0) {
    // CLI override wins over the config file.
    ordered_json doc;
    try {
      doc = ordered_json::parse(config);
    } catch (const nlohmann::json::parse_error& e) {
      fail(std::string("power config: ") + e.what());
    }
    if (!doc.is_object()) fail("power config: top level must be an object");
    doc["threads"] = opt.threads;
    config = doc.dump();
  }

  if (opt.dry_run) {
    char* plan = nullptr;
    check(bg_power_plan(config.c_str(), &plan));
    std::string text = plan;
    bg_string_free(plan);
    write_output(text + "\n", opt.out_path);
    return kExitOk;
  }

  PowerHandle result;
  check(bg_power_run(config.c_str(), opt.progress ? print_progress : nullptr,
                     nullptr, &result.ptr));
  std::string out = opt.format == "json"
                        ? std::string(bg_power_json(result.ptr)) + "\n"
                        : std::string(bg_power_csv(result.ptr));
  write_output(out, opt.out_path);
  return kExitOk;
}

struct EigenOptions {
  double alpha = 1.0;
  double beta = 1.0;
  int m = 64;
  int order = 32;
  int k = 10;
  int threads = 0;
  std::string format = "text";
  std::string out_path;
};

int cmd_eigen(const EigenOptions& opt) {
  EigenHandle res;
  check(bg_eigen(opt.alpha, opt.beta, opt.m, opt.order, opt.threads, &res.ptr));
  const double* values = bg_eigen_values(res.ptr);
  const std::size_t count = bg_eigen_count(res.ptr);
  const std::size_t k =
      opt.k <= 0 ? count : std::min<std::size_t>(count, opt.k);

  std::string out;
  if (opt.format == "json") {
    ordered_json doc;
    doc["alpha"] = opt.alpha;
    doc["beta"] = opt.beta;
    doc["m"] = opt.m;
    doc["eigenvalues"] = std::vector<double>(values, values + k);
    doc["trace"] = bg_eigen_trace(res.ptr);
    doc["min_eigenvalue_raw"] = bg_eigen_min_raw(res.ptr);
    doc["clipped"] = bg_eigen_clipped(res.ptr);
    out = doc.dump(2) + "\n";
  } else {
    out += fmt("limit-operator eigenvalues for Beta(%g, %g), grid m = %d\n",
               opt.alpha, opt.beta, opt.m);
    double partial = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      partial += values[i];
      out += fmt("lambda_%-3zu %14.10f\n", i + 1, values[i]);
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < count; ++i) sum += values[i];
    out += fmt("sum of first %zu: %.10f   sum of all %zu: %.10f\n", k, partial,
               count, sum);
    out += fmt("trace estimate:  %.10f\n", bg_eigen_trace(res.ptr));
    out += fmt("psd check: smallest raw eigenvalue %.3e, %d clipped to 0\n",
               bg_eigen_min_raw(res.ptr), bg_eigen_clipped(res.ptr));
  }
  write_output(out, opt.out_path);
  return kExitOk;
}

struct SimulateOptions {
  std::string spec;
  std::size_t n = 100;
  std::uint64_t seed = 1;
  std::string out_path;
};

int cmd_simulate(const SimulateOptions& opt) {
  SampleHandle sample;
  check(bg_sample_simulate(opt.spec.c_str(), opt.n, opt.seed, &sample.ptr));
  const double* v = bg_sample_values(sample.ptr);
  std::string out;
  for (std::size_t i = 0; i < bg_sample_size(sample.ptr); ++i)
    out += fmt("%.17g\n", v[i]);
  write_output(out, opt.out_path);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Goodness-of-fit testing for the beta family: a weighted L2 statistic "
      "with parametric-bootstrap calibration, reference tests, limit-operator "
      "eigenvalues, and a Monte Carlo power-study harness."};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("betagof ") + bg_version());

  TestOptions topt;
  CLI::App* test = app.add_subcommand(
      "test", "Bootstrap goodness-of-fit tests on a dataset");
  auto* data_opt = test->add_option("--data", topt.data_name,
                                    "Embedded dataset: may2007 or may2008");
  auto* file_opt =
      test->add_option("--file", topt.file_path,
                       "Data file: one value per line, or single-column CSV "
                       "with optional header");
  data_opt->excludes(file_opt);
  file_opt->excludes(data_opt);
  test->add_option("--stat", topt.stats,
                   "Statistic: tn, rf:A, ks, cm, ad, or all (repeatable; "
                   "default tn)");
  test->add_option("--estimator", topt.estimator, "Estimator (default mle)")
      ->check(CLI::IsMember({"mle", "moments"}));
  test->add_option("--B", topt.B, "Bootstrap replications (default 500)")
      ->check(CLI::Range(2, 10000000));
  test->add_option("--level", topt.level, "Nominal size (default 0.05)")
      ->check(CLI::Range(1e-6, 0.999999));
  test->add_option("--seed", topt.seed, "RNG seed (default 0)");
  test->add_option("--threads", topt.threads,
                   "Worker threads; 0 = all cores (default 0)")
      ->check(CLI::Range(0, 4096));
  test->add_option("--format", topt.format, "Output format (default text)")
      ->check(CLI::IsMember({"text", "json", "csv"}));
  test->add_option("--out", topt.out_path, "Write output here, not stdout");
  test->add_option("--qq", topt.qq_path,
                   "Write QQ coordinate pairs (p,theoretical,empirical) as "
                   "CSV to this file");
  test->add_option("--winsorize", topt.winsorize,
                   "Clamp data into [eps, 1-eps] before fitting; boundary "
                   "values otherwise make the MLE fail")
      ->check(CLI::Range(1e-12, 0.499));
  test->add_flag("--gate", topt.gate,
                 "Exit 2 when any requested test rejects (scripting aid)");
  test->add_flag("--dry-run", topt.dry_run,
                 "Print the resolved plan without computing");
  test->add_flag("--keep-bootstrap", topt.keep_bootstrap,
                 "Retain bootstrap statistic values in memory");

  PowerOptions popt;
  CLI::App* power = app.add_subcommand(
      "power", "Monte Carlo power study from a JSON config");
  power->add_option("--config", popt.config_path, "JSON config file")
      ->required();
  power->add_option("--format", popt.format, "Output format (default csv)")
      ->check(CLI::IsMember({"csv", "json"}));
  power->add_option("--out", popt.out_path, "Write output here, not stdout");
  power->add_option("--threads", popt.threads,
                    "Worker threads; 0 = all cores (overrides the config)")
      ->check(CLI::Range(0, 4096));
  power->add_flag("--dry-run", popt.dry_run,
                  "Print the resolved plan without computing");
  power->add_flag("--progress", popt.progress,
                  "Report progress on stderr while running");

  EigenOptions eopt;
  CLI::App* eigen = app.add_subcommand(
      "eigen", "Eigenvalues of the limit covariance operator");
  eigen->add_option("--alpha", eopt.alpha, "Shape alpha")->required();
  eigen->add_option("--beta", eopt.beta, "Shape beta")->required();
  eigen->add_option("--m", eopt.m, "Quadrature grid size (default 64)")
      ->check(CLI::Range(4, 4096));
  eigen->add_option("--order", eopt.order,
                    "Gauss-Legendre order per kernel panel (default 32)")
      ->check(CLI::Range(8, 256));
  eigen->add_option("--k", eopt.k, "How many eigenvalues to print; 0 = all")
      ->check(CLI::Range(0, 4096));
  eigen->add_option("--threads", eopt.threads,
                    "Worker threads; 0 = all cores (default 0)")
      ->check(CLI::Range(0, 4096));
  eigen->add_option("--format", eopt.format, "Output format (default text)")
      ->check(CLI::IsMember({"text", "json"}));
  eigen->add_option("--out", eopt.out_path, "Write output here, not stdout");

  SimulateOptions sopt;
  CLI::App* simulate = app.add_subcommand(
      "simulate", "Draw a sample from a distribution spec");
  simulate
      ->add_option("spec", sopt.spec,
                   "Distribution spec, e.g. B(2,2), TN(0.5,0.25), "
                   "BN(0.25,0.5,0.5,0.25,0.25), LT(3,2), C(1)oGO(2,1)")
      ->required();
  simulate->add_option("--n", sopt.n, "Sample size (default 100)")
      ->check(CLI::Range(std::size_t{1}, std::size_t{100000000}));
  simulate->add_option("--seed", sopt.seed, "RNG seed (default 1)");
  simulate->add_option("--out", sopt.out_path, "Write output here, not stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitError;
  }

  try {
    if (test->parsed()) {
      if (topt.data_name.empty() && topt.file_path.empty())
        fail("test needs a data source: pass --data or --file");
      return cmd_test(topt);
    }
    if (power->parsed()) return cmd_power(popt);
    if (eigen->parsed()) return cmd_eigen(eopt);
    if (simulate->parsed()) return cmd_simulate(sopt);
  } catch (const CliError& e) {
    std::fprintf(stderr, "error: %s\n", e.message.c_str());
    return kExitError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitError;
  }
  return kExitError;
}
