// C surface over the core library.  Every entry point traps exceptions,
// stores the message in a thread-local buffer, and returns a status code.

#include "betagof.h"

#include <cstdio>
#include <cstring>
#include <exception>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "alternatives.hpp"
#include "asymptotics.hpp"
#include "beta_model.hpp"
#include "bootstrap.hpp"
#include "datasets.hpp"
#include "errors.hpp"
#include "gof_stats.hpp"
#include "power_study.hpp"

namespace {

thread_local std::string t_error;

template <class F>
bg_status guarded(F&& body) {
  try {
    body();
    return BG_OK;
  } catch (const betagof::ParseError& e) {
    t_error = e.what();
    return BG_ERR_PARSE;
  } catch (const betagof::NonInteriorData& e) {
    t_error = e.what();
    return BG_ERR_NONINTERIOR;
  } catch (const betagof::DegenerateSample& e) {
    t_error = e.what();
    return BG_ERR_DEGENERATE;
  } catch (const betagof::DegenerateTransform& e) {
    t_error = e.what();
    return BG_ERR_DEGENERATE;
  } catch (const betagof::NoConvergence& e) {
    t_error = e.what();
    return BG_ERR_NOCONV;
  } catch (const std::domain_error& e) {
    t_error = e.what();
    return BG_ERR_DOMAIN;
  } catch (const std::invalid_argument& e) {
    t_error = e.what();
    return BG_ERR_INVALID;
  } catch (const std::out_of_range& e) {
    t_error = e.what();
    return BG_ERR_INVALID;
  } catch (const std::exception& e) {
    t_error = e.what();
    return BG_ERR_INTERNAL;
  } catch (...) {
    t_error = "unknown error";
    return BG_ERR_INTERNAL;
  }
}

void require(bool ok, const char* message) {
  if (!ok) throw std::invalid_argument(message);
}

betagof::BetaParams make_params(double alpha, double beta) {
  if (!(alpha > 0.0) || !(beta > 0.0))
    throw std::domain_error("shape parameters must be positive");
  return betagof::BetaParams{alpha, beta};
}

char* copy_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

const std::vector<betagof::Statistic>& full_battery() {
  static const std::vector<betagof::Statistic> battery = {
      {betagof::StatKind::Tn, 0.0}, {betagof::StatKind::RF, 0.25},
      {betagof::StatKind::RF, 2.0}, {betagof::StatKind::RF, 5.0},
      {betagof::StatKind::KS, 0.0}, {betagof::StatKind::CM, 0.0},
      {betagof::StatKind::AD, 0.0}};
  return battery;
}

using ordered_json = nlohmann::ordered_json;

// Parses and validates the power study configuration.  Unknown keys are
// rejected so typos do not silently fall back to defaults.
betagof::PowerConfig parse_power_config(const char* config_json) {
  require(config_json != nullptr, "power config: null text");
  ordered_json doc;
  try {
    doc = ordered_json::parse(config_json);
  } catch (const nlohmann::json::parse_error& e) {
    throw betagof::ParseError(std::string("power config: ") + e.what(),
                              e.byte);
  }
  require(doc.is_object(), "power config: top level must be an object");

  static const char* known[] = {"alternatives", "statistics", "n",
                                "mc_reps",      "B",          "level",
                                "estimator",    "seed",       "threads"};
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    bool ok = false;
    for (const char* k : known) ok = ok || it.key() == k;
    require(ok, ("power config: unknown key \"" + it.key() + "\"").c_str());
  }

  betagof::PowerConfig cfg;
  require(doc.contains("alternatives") && doc["alternatives"].is_array() &&
              !doc["alternatives"].empty(),
          "power config: \"alternatives\" must be a non-empty array");
  for (const auto& entry : doc["alternatives"]) {
    require(entry.is_string(), "power config: alternatives must be strings");
    cfg.alternatives.push_back(
        betagof::parse_alternative(entry.get<std::string>()));
  }

  if (doc.contains("statistics")) {
    require(doc["statistics"].is_array() && !doc["statistics"].empty(),
            "power config: \"statistics\" must be a non-empty array");
    for (const auto& entry : doc["statistics"]) {
      require(entry.is_string(), "power config: statistics must be strings");
      cfg.statistics.push_back(
          betagof::parse_statistic(entry.get<std::string>()));
    }
  } else {
    cfg.statistics = full_battery();
  }

  if (doc.contains("n")) {
    require(doc["n"].is_number_unsigned() && doc["n"].get<std::uint64_t>() > 0,
            "power config: \"n\" must be a positive integer");
    cfg.n = doc["n"].get<std::size_t>();
  }
  if (doc.contains("mc_reps")) {
    require(doc["mc_reps"].is_number_integer() && doc["mc_reps"].get<int>() > 0,
            "power config: \"mc_reps\" must be a positive integer");
    cfg.mc_reps = doc["mc_reps"].get<int>();
  }
  if (doc.contains("B")) {
    require(doc["B"].is_number_integer() && doc["B"].get<int>() > 1,
            "power config: \"B\" must be an integer >= 2");
    cfg.B = doc["B"].get<int>();
  }
  if (doc.contains("level")) {
    require(doc["level"].is_number(),
            "power config: \"level\" must be a number");
    cfg.level = doc["level"].get<double>();
    require(cfg.level > 0.0 && cfg.level < 1.0,
            "power config: \"level\" must lie strictly between 0 and 1");
  }
  if (doc.contains("estimator")) {
    require(doc["estimator"].is_string(),
            "power config: \"estimator\" must be \"mle\" or \"moments\"");
    const std::string est = doc["estimator"].get<std::string>();
    if (est == "mle") {
      cfg.estimator = betagof::EstimationMethod::MaximumLikelihood;
    } else if (est == "moments") {
      cfg.estimator = betagof::EstimationMethod::Moments;
    } else {
      require(false, "power config: \"estimator\" must be \"mle\" or \"moments\"");
    }
  }
  if (doc.contains("seed")) {
    require(doc["seed"].is_number_unsigned(),
            "power config: \"seed\" must be a non-negative integer");
    cfg.master_seed = doc["seed"].get<std::uint64_t>();
  }
  if (doc.contains("threads")) {
    require(doc["threads"].is_number_integer() &&
                doc["threads"].get<int>() >= 0,
            "power config: \"threads\" must be a non-negative integer");
    cfg.threads = doc["threads"].get<int>();
  }
  return cfg;
}

ordered_json config_echo(const betagof::PowerConfig& cfg) {
  ordered_json out;
  out["alternatives"] = ordered_json::array();
  for (const auto& a : cfg.alternatives) out["alternatives"].push_back(a.text);
  out["statistics"] = ordered_json::array();
  for (const auto& s : cfg.statistics) out["statistics"].push_back(s.name());
  out["n"] = cfg.n;
  out["mc_reps"] = cfg.mc_reps;
  out["B"] = cfg.B;
  out["level"] = cfg.level;
  out["estimator"] = cfg.estimator == betagof::EstimationMethod::Moments
                         ? "moments"
                         : "mle";
  out["seed"] = cfg.master_seed;
  // thread count deliberately not echoed: output must not depend on it
  return out;
}

}  // namespace

struct bg_sample {
  std::vector<double> values;
};

struct bg_test_result {
  std::vector<betagof::TestOutcome> outcomes;
};

struct bg_eigen_result {
  betagof::EigenResult res;
};

struct bg_power_result {
  betagof::PowerTable table;
  std::string csv;
  std::string json;
};

extern "C" {

const char* bg_version(void) { return "0.1.0"; }

const char* bg_last_error(void) { return t_error.c_str(); }

bg_status bg_sample_create(const double* values, size_t n, bg_sample** out) {
  return guarded([&] {
    require(out != nullptr, "bg_sample_create: null output pointer");
    require(values != nullptr || n == 0, "bg_sample_create: null values");
    auto s = new bg_sample;
    s->values.assign(values, values + n);
    *out = s;
  });
}

bg_status bg_sample_builtin(const char* name, bg_sample** out) {
  return guarded([&] {
    require(out != nullptr, "bg_sample_builtin: null output pointer");
    require(name != nullptr, "bg_sample_builtin: null name");
    const std::vector<double>* data = betagof::dataset_by_name(name);
    require(data != nullptr,
            "bg_sample_builtin: unknown dataset; available: may2007, may2008");
    *out = new bg_sample{*data};
  });
}

bg_status bg_sample_simulate(const char* spec, size_t n, uint64_t seed,
                             bg_sample** out) {
  return guarded([&] {
    require(out != nullptr, "bg_sample_simulate: null output pointer");
    require(spec != nullptr, "bg_sample_simulate: null spec");
    require(n > 0, "bg_sample_simulate: n must be positive");
    betagof::AlternativeSpec alt = betagof::parse_alternative(spec);
    *out = new bg_sample{betagof::sample_alternative(alt, n, seed)};
  });
}

size_t bg_sample_size(const bg_sample* s) { return s ? s->values.size() : 0; }

const double* bg_sample_values(const bg_sample* s) {
  return s ? s->values.data() : nullptr;
}

void bg_sample_free(bg_sample* s) { delete s; }

bg_status bg_fit(const bg_sample* s, int use_moments, bg_fit_params* out) {
  return guarded([&] {
    require(s != nullptr, "bg_fit: null sample");
    require(out != nullptr, "bg_fit: null output pointer");
    if (use_moments) {
      betagof::BetaParams p = betagof::moment_fit(s->values);
      *out = bg_fit_params{p.alpha, p.beta, 0.0, 0};
    } else {
      betagof::FitResult r = betagof::mle_fit(s->values);
      *out = bg_fit_params{r.params.alpha, r.params.beta, r.residual,
                           r.iterations};
    }
  });
}

bg_status bg_statistic(const bg_sample* s, const char* kind, double alpha,
                       double beta, double* out) {
  return guarded([&] {
    require(s != nullptr, "bg_statistic: null sample");
    require(kind != nullptr, "bg_statistic: null kind");
    require(out != nullptr, "bg_statistic: null output pointer");
    betagof::Statistic st = betagof::parse_statistic(kind);
    *out = betagof::evaluate_statistic(st, s->values, make_params(alpha, beta));
  });
}

bg_status bg_statistic_tn_quadrature(const bg_sample* s, double alpha,
                                     double beta, double* out) {
  return guarded([&] {
    require(s != nullptr, "bg_statistic_tn_quadrature: null sample");
    require(out != nullptr, "bg_statistic_tn_quadrature: null output pointer");
    *out = betagof::t_statistic_quadrature(s->values, make_params(alpha, beta));
  });
}

bg_status bg_run_battery(const bg_sample* s, const char* const* kinds,
                         size_t n_kinds, const bg_test_spec* spec,
                         bg_test_result** out) {
  return guarded([&] {
    require(s != nullptr, "bg_run_battery: null sample");
    require(kinds != nullptr && n_kinds > 0, "bg_run_battery: no statistics");
    require(spec != nullptr, "bg_run_battery: null spec");
    require(out != nullptr, "bg_run_battery: null output pointer");

    std::vector<betagof::Statistic> sts;
    sts.reserve(n_kinds);
    for (size_t i = 0; i < n_kinds; ++i) {
      require(kinds[i] != nullptr, "bg_run_battery: null statistic name");
      sts.push_back(betagof::parse_statistic(kinds[i]));
    }
    auto estimator = spec->use_moments
                         ? betagof::EstimationMethod::Moments
                         : betagof::EstimationMethod::MaximumLikelihood;
    auto outcomes = betagof::run_battery(
        s->values, sts, estimator, spec->replications, spec->level, spec->seed,
        spec->threads, spec->keep_bootstrap != 0);
    *out = new bg_test_result{std::move(outcomes)};
  });
}

size_t bg_test_result_count(const bg_test_result* r) {
  return r ? r->outcomes.size() : 0;
}

bg_status bg_test_result_outcome(const bg_test_result* r, size_t index,
                                 bg_test_outcome* out) {
  return guarded([&] {
    require(r != nullptr, "bg_test_result_outcome: null result");
    require(out != nullptr, "bg_test_result_outcome: null output pointer");
    require(index < r->outcomes.size(),
            "bg_test_result_outcome: index out of range");
    const betagof::TestOutcome& oc = r->outcomes[index];
    bg_test_outcome res{};
    const std::string name = oc.statistic.name();
    std::snprintf(res.statistic, sizeof(res.statistic), "%s", name.c_str());
    res.statistic_value = oc.statistic_value;
    res.critical_value = oc.critical_value;
    res.p_value = oc.p_value;
    res.reject = oc.reject ? 1 : 0;
    res.fitted_alpha = oc.fitted.alpha;
    res.fitted_beta = oc.fitted.beta;
    res.redraws = oc.redraws;
    *out = res;
  });
}

bg_status bg_test_result_bootstrap(const bg_test_result* r, size_t index,
                                   const double** values, size_t* count) {
  return guarded([&] {
    require(r != nullptr, "bg_test_result_bootstrap: null result");
    require(values != nullptr && count != nullptr,
            "bg_test_result_bootstrap: null output pointer");
    require(index < r->outcomes.size(),
            "bg_test_result_bootstrap: index out of range");
    const auto& boot = r->outcomes[index].bootstrap_values;
    *values = boot.empty() ? nullptr : boot.data();
    *count = boot.size();
  });
}

void bg_test_result_free(bg_test_result* r) { delete r; }

bg_status bg_kernel(double alpha, double beta, double s, double t, int order,
                    double* out) {
  return guarded([&] {
    require(out != nullptr, "bg_kernel: null output pointer");
    auto ctx = betagof::make_kernel_context(make_params(alpha, beta), order);
    *out = betagof::kernel(s, t, ctx);
  });
}

bg_status bg_kernel_centring(double alpha, double beta, double s, int order,
                             double* out) {
  return guarded([&] {
    require(out != nullptr, "bg_kernel_centring: null output pointer");
    auto ctx = betagof::make_kernel_context(make_params(alpha, beta), order);
    *out = betagof::kernel_centring(s, ctx);
  });
}

bg_status bg_eigen(double alpha, double beta, int m, int order, int threads,
                   bg_eigen_result** out) {
  return guarded([&] {
    require(out != nullptr, "bg_eigen: null output pointer");
    auto ctx = betagof::make_kernel_context(make_params(alpha, beta), order);
    *out = new bg_eigen_result{
        betagof::nystrom_eigenvalues(ctx, m, threads)};
  });
}

size_t bg_eigen_count(const bg_eigen_result* r) {
  return r ? r->res.eigenvalues.size() : 0;
}

const double* bg_eigen_values(const bg_eigen_result* r) {
  return r ? r->res.eigenvalues.data() : nullptr;
}

double bg_eigen_trace(const bg_eigen_result* r) { return r ? r->res.trace : 0; }

double bg_eigen_min_raw(const bg_eigen_result* r) {
  return r ? r->res.min_raw : 0;
}

int bg_eigen_clipped(const bg_eigen_result* r) {
  return r ? r->res.clipped : 0;
}

void bg_eigen_free(bg_eigen_result* r) { delete r; }

bg_status bg_delta_discrepancy(const char* alt_spec, double alpha, double beta,
                               double* out) {
  return guarded([&] {
    require(alt_spec != nullptr, "bg_delta_discrepancy: null spec");
    require(out != nullptr, "bg_delta_discrepancy: null output pointer");
    betagof::AlternativeSpec alt = betagof::parse_alternative(alt_spec);
    *out = betagof::delta_discrepancy(alt, make_params(alpha, beta));
  });
}

bg_status bg_pseudo_true(const char* alt_spec, double* alpha, double* beta,
                         double* residual) {
  return guarded([&] {
    require(alt_spec != nullptr, "bg_pseudo_true: null spec");
    require(alpha != nullptr && beta != nullptr,
            "bg_pseudo_true: null output pointer");
    betagof::AlternativeSpec alt = betagof::parse_alternative(alt_spec);
    betagof::FitResult r = betagof::pseudo_true_params(alt);
    *alpha = r.params.alpha;
    *beta = r.params.beta;
    if (residual) *residual = r.residual;
  });
}

bg_status bg_power_run(const char* config_json, bg_progress_fn progress,
                       void* user, bg_power_result** out) {
  return guarded([&] {
    require(out != nullptr, "bg_power_run: null output pointer");
    betagof::PowerConfig cfg = parse_power_config(config_json);

    betagof::ProgressFn cb;
    if (progress != nullptr)
      cb = [progress, user](int done, int total) { progress(done, total, user); };
    betagof::PowerTable table = betagof::run_power_study(cfg, cb);

    auto result = new bg_power_result;
    result->csv = betagof::power_table_csv(table);

    ordered_json doc;
    doc["config"] = config_echo(table.config);
    doc["cells"] = ordered_json::array();
    for (const auto& cell : table.cells) {
      ordered_json row;
      row["alternative"] = cell.alternative;
      row["statistic"] = cell.statistic;
      row["count"] = cell.count;
      row["rate"] = cell.rate;
      row["se"] = cell.se;
      doc["cells"].push_back(row);
    }
    doc["redraws"] = table.redraws;
    result->json = doc.dump(2);
    result->table = std::move(table);
    *out = result;
  });
}

bg_status bg_power_plan(const char* config_json, char** out_json) {
  return guarded([&] {
    require(out_json != nullptr, "bg_power_plan: null output pointer");
    betagof::PowerConfig cfg = parse_power_config(config_json);
    ordered_json doc;
    doc["config"] = config_echo(cfg);
    doc["cells"] = cfg.alternatives.size() * cfg.statistics.size();
    doc["total_mc_reps"] =
        static_cast<std::uint64_t>(cfg.alternatives.size()) *
        static_cast<std::uint64_t>(cfg.mc_reps);
    doc["fits_per_rep"] = 1 + cfg.B;
    *out_json = copy_string(doc.dump(2));
  });
}

const char* bg_power_csv(const bg_power_result* r) {
  return r ? r->csv.c_str() : nullptr;
}

const char* bg_power_json(const bg_power_result* r) {
  return r ? r->json.c_str() : nullptr;
}

void bg_power_free(bg_power_result* r) { delete r; }

void bg_string_free(char* s) { delete[] s; }

bg_status bg_beta_cdf(double t, double alpha, double beta, double* out) {
  return guarded([&] {
    require(out != nullptr, "bg_beta_cdf: null output pointer");
    *out = betagof::beta_cdf(t, make_params(alpha, beta));
  });
}

bg_status bg_beta_quantile(double q, double alpha, double beta, double* out) {
  return guarded([&] {
    require(out != nullptr, "bg_beta_quantile: null output pointer");
    *out = betagof::beta_quantile(q, make_params(alpha, beta));
  });
}

}  // extern "C"
