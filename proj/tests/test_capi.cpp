#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include <json.hpp>

#include "betagof.h"

#include "bootstrap.hpp"
#include "datasets.hpp"
#include "power_study.hpp"

namespace {

bg_sample* make_sample(const std::vector<double>& xs) {
  bg_sample* s = nullptr;
  REQUIRE(bg_sample_create(xs.data(), xs.size(), &s) == BG_OK);
  REQUIRE(s != nullptr);
  return s;
}

}  // namespace

TEST_SUITE("capi") {

TEST_CASE("version and sample round trip") {
  CHECK(std::string(bg_version()) == "0.1.0");
  const std::vector<double> xs{0.25, 0.6, 0.85};
  bg_sample* s = make_sample(xs);
  CHECK(bg_sample_size(s) == 3);
  const double* v = bg_sample_values(s);
  REQUIRE(v != nullptr);
  for (std::size_t i = 0; i < xs.size(); ++i) CHECK(v[i] == xs[i]);
  bg_sample_free(s);
  CHECK(bg_sample_size(nullptr) == 0);
  CHECK(bg_sample_create(nullptr, 3, nullptr) == BG_ERR_INVALID);
}

TEST_CASE("builtin datasets resolve by name") {
  bg_sample* s = nullptr;
  REQUIRE(bg_sample_builtin("may2007", &s) == BG_OK);
  CHECK(bg_sample_size(s) == betagof::dataset_may2007().size());
  CHECK(bg_sample_values(s)[0] == 0.40);
  bg_sample_free(s);

  CHECK(bg_sample_builtin("nope", &s) == BG_ERR_INVALID);
  CHECK(std::string(bg_last_error()).find("unknown dataset") !=
        std::string::npos);
}

TEST_CASE("simulation matches the core sampler and flags bad specs") {
  bg_sample* s = nullptr;
  REQUIRE(bg_sample_simulate("B(2,5)", 64, 11, &s) == BG_OK);
  const auto direct =
      betagof::sample_alternative(betagof::parse_alternative("B(2,5)"), 64, 11);
  REQUIRE(bg_sample_size(s) == direct.size());
  for (std::size_t i = 0; i < direct.size(); ++i) {
    CHECK(bg_sample_values(s)[i] == direct[i]);
  }
  bg_sample_free(s);

  CHECK(bg_sample_simulate("BN(0.25)", 10, 1, &s) == BG_ERR_PARSE);
  CHECK(std::string(bg_last_error()).find("5") != std::string::npos);
}

TEST_CASE("fitting maps error kinds onto status codes") {
  bg_sample* may = nullptr;
  REQUIRE(bg_sample_builtin("may2007", &may) == BG_OK);
  bg_fit_params fp{};
  REQUIRE(bg_fit(may, 0, &fp) == BG_OK);
  CHECK(std::abs(fp.alpha - 6.35616286345749) <= 1e-8);
  CHECK(std::abs(fp.beta - 1.9706021490465) <= 1e-8);
  CHECK(fp.residual <= 1e-10);
  CHECK(fp.iterations > 0);
  REQUIRE(bg_fit(may, 1, &fp) == BG_OK);
  CHECK(std::abs(fp.alpha - 5.68715662815341) <= 1e-8);
  CHECK(std::abs(fp.beta - 1.74546797019211) <= 1e-8);
  bg_sample_free(may);

  const std::vector<double> flat{0.4, 0.4, 0.4};
  bg_sample* s = make_sample(flat);
  CHECK(bg_fit(s, 0, &fp) == BG_ERR_DEGENERATE);
  bg_sample_free(s);

  const std::vector<double> boundary{0.0, 0.5, 0.9};
  s = make_sample(boundary);
  CHECK(bg_fit(s, 0, &fp) == BG_ERR_NONINTERIOR);
  CHECK(std::string(bg_last_error()).find("winsoriz") != std::string::npos);
  bg_sample_free(s);
}

TEST_CASE("statistic evaluation and the quadrature cross-check") {
  const std::vector<double> xs{0.25, 0.6, 0.85};
  bg_sample* s = make_sample(xs);
  double closed = 0.0, direct = 0.0;
  REQUIRE(bg_statistic(s, "tn", 1.7, 2.4, &closed) == BG_OK);
  CHECK(std::abs(closed - 0.60242746149671622502) <= 1e-12);
  REQUIRE(bg_statistic_tn_quadrature(s, 1.7, 2.4, &direct) == BG_OK);
  CHECK(std::abs(direct - closed) <= 1e-8);

  CHECK(bg_statistic(s, "zzz", 1.7, 2.4, &closed) == BG_ERR_PARSE);
  CHECK(bg_statistic(s, "tn", -1.0, 2.4, &closed) == BG_ERR_DOMAIN);
  bg_sample_free(s);
}

TEST_CASE("battery through the C surface equals the core battery") {
  bg_sample* may = nullptr;
  REQUIRE(bg_sample_builtin("may2008", &may) == BG_OK);
  const char* kinds[] = {"tn", "rf:0.25", "ks"};
  bg_test_spec spec{};
  spec.use_moments = 0;
  spec.replications = 40;
  spec.level = 0.1;
  spec.seed = 5;
  spec.threads = 1;
  spec.keep_bootstrap = 1;
  bg_test_result* res = nullptr;
  REQUIRE(bg_run_battery(may, kinds, 3, &spec, &res) == BG_OK);
  REQUIRE(bg_test_result_count(res) == 3);

  const auto core = betagof::run_battery(
      betagof::dataset_may2008(),
      {betagof::parse_statistic("tn"), betagof::parse_statistic("rf:0.25"),
       betagof::parse_statistic("ks")},
      betagof::EstimationMethod::MaximumLikelihood, 40, 0.1, 5, 1, true);

  for (std::size_t i = 0; i < 3; ++i) {
    bg_test_outcome oc{};
    REQUIRE(bg_test_result_outcome(res, i, &oc) == BG_OK);
    CHECK(std::string(oc.statistic) == core[i].statistic.name());
    CHECK(oc.statistic_value == core[i].statistic_value);
    CHECK(oc.critical_value == core[i].critical_value);
    CHECK(oc.p_value == core[i].p_value);
    CHECK(oc.reject == (core[i].reject ? 1 : 0));
    CHECK(oc.fitted_alpha == core[i].fitted.alpha);
    CHECK(oc.redraws == core[i].redraws);

    const double* boot = nullptr;
    size_t count = 0;
    REQUIRE(bg_test_result_bootstrap(res, i, &boot, &count) == BG_OK);
    REQUIRE(count == 40);
    for (size_t j = 0; j < count; ++j) {
      CHECK(boot[j] == core[i].bootstrap_values[j]);
    }
  }
  bg_test_outcome oc{};
  CHECK(bg_test_result_outcome(res, 9, &oc) == BG_ERR_INVALID);
  bg_test_result_free(res);
  bg_sample_free(may);
}

TEST_CASE("kernel, eigenvalues, discrepancy, pseudo-true") {
  double k = 0.0;
  REQUIRE(bg_kernel(2.0, 2.0, 0.3, 0.6, 32, &k) == BG_OK);
  CHECK(std::abs(k - 0.026457165987772) <= 1e-9);
  double c = 1.0;
  REQUIRE(bg_kernel_centring(2.0, 2.0, 0.4, 32, &c) == BG_OK);
  CHECK(std::abs(c) <= 1e-9);

  bg_eigen_result* e = nullptr;
  REQUIRE(bg_eigen(2.0, 2.0, 16, 16, 1, &e) == BG_OK);
  REQUIRE(bg_eigen_count(e) == 16);
  const double* vals = bg_eigen_values(e);
  for (size_t i = 1; i < 16; ++i) CHECK(vals[i] <= vals[i - 1]);
  CHECK(bg_eigen_trace(e) > 0.0);
  CHECK(bg_eigen_min_raw(e) >= -1e-8);
  CHECK(bg_eigen_clipped(e) >= 0);
  bg_eigen_free(e);

  double d = 1.0;
  REQUIRE(bg_delta_discrepancy("B(2.5,1.5)", 2.5, 1.5, &d) == BG_OK);
  CHECK(std::abs(d) <= 1e-10);
  CHECK(bg_delta_discrepancy("B(2.5,1.5)", -1.0, 1.5, &d) == BG_ERR_DOMAIN);

  double a = 0.0, b = 0.0, r = 1.0;
  REQUIRE(bg_pseudo_true("LT(3,2)", &a, &b, &r) == BG_OK);
  CHECK(std::abs(a - 6.903970177384) <= 1e-5);
  CHECK(std::abs(b - 0.728387405083) <= 1e-5);
  CHECK(r <= 1e-8);
}

TEST_CASE("power run validates config and matches the core table") {
  const char* cfg_text =
      "{\"alternatives\":[\"B(2,2)\"],\"statistics\":[\"tn\",\"ks\"],"
      "\"n\":20,\"mc_reps\":10,\"B\":20,\"level\":0.1,\"seed\":3}";
  bg_power_result* res = nullptr;
  REQUIRE(bg_power_run(cfg_text, nullptr, nullptr, &res) == BG_OK);

  betagof::PowerConfig cfg;
  cfg.alternatives = {betagof::parse_alternative("B(2,2)")};
  cfg.statistics = {betagof::parse_statistic("tn"),
                    betagof::parse_statistic("ks")};
  cfg.n = 20;
  cfg.mc_reps = 10;
  cfg.B = 20;
  cfg.level = 0.1;
  cfg.master_seed = 3;
  const betagof::PowerTable core = betagof::run_power_study(cfg);
  CHECK(std::string(bg_power_csv(res)) == betagof::power_table_csv(core));

  const auto doc = nlohmann::json::parse(bg_power_json(res));
  CHECK(doc.at("config").at("seed") == 3);
  CHECK(doc.at("config").at("estimator") == "mle");
  CHECK(!doc.at("config").contains("threads"));
  REQUIRE(doc.at("cells").size() == 2);
  CHECK(doc.at("cells")[0].at("statistic") == "tn");
  CHECK(doc.at("cells")[0].at("rate").get<double>() == core.cells[0].rate);
  bg_power_free(res);

  CHECK(bg_power_run("{\"alternatives\":[\"B(2,2)\"],\"typo\":1}", nullptr,
                     nullptr, &res) == BG_ERR_INVALID);
  CHECK(std::string(bg_last_error()).find("typo") != std::string::npos);
  CHECK(bg_power_run("{\"alternatives\":[\"B(2,2)\"],\"level\":1.5}", nullptr,
                     nullptr, &res) == BG_ERR_INVALID);
  CHECK(std::string(bg_last_error()).find("level") != std::string::npos);
  CHECK(bg_power_run("not json", nullptr, nullptr, &res) == BG_ERR_PARSE);
  CHECK(bg_power_run("{\"alternatives\":[\"BN(0.25)\"]}", nullptr, nullptr,
                     &res) == BG_ERR_PARSE);
}

TEST_CASE("power plan summarizes the workload without running it") {
  char* text = nullptr;
  REQUIRE(bg_power_plan(
              "{\"alternatives\":[\"B(2,2)\",\"LT(3,2)\"],\"mc_reps\":100,"
              "\"B\":250}",
              &text) == BG_OK);
  REQUIRE(text != nullptr);
  const auto doc = nlohmann::json::parse(text);
  // default battery has seven members
  CHECK(doc.at("cells") == 14);
  CHECK(doc.at("total_mc_reps") == 200);
  CHECK(doc.at("fits_per_rep") == 251);
  CHECK(doc.at("config").at("statistics").size() == 7);
  bg_string_free(text);
}

TEST_CASE("beta cdf and quantile helpers") {
  double f = 0.0;
  REQUIRE(bg_beta_cdf(0.42, 6.3562, 1.9706, &f) == BG_OK);
  CHECK(std::abs(f - 0.0182325256163933091) <= 1e-12);
  double q = 0.0;
  REQUIRE(bg_beta_quantile(f, 6.3562, 1.9706, &q) == BG_OK);
  CHECK(std::abs(q - 0.42) <= 1e-10);
  CHECK(bg_beta_cdf(0.42, 0.0, 1.0, &f) == BG_ERR_DOMAIN);
  CHECK(std::string(bg_last_error()).size() > 0);
}

}  // TEST_SUITE
