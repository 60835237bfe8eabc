#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "bootstrap.hpp"
#include "datasets.hpp"
#include "errors.hpp"

using namespace betagof;

namespace {

std::vector<double> iota_boot(int B) {
  std::vector<double> v(static_cast<std::size_t>(B));
  for (int i = 0; i < B; ++i) v[static_cast<std::size_t>(i)] = i + 1.0;
  return v;
}

bool same_outcome(const TestOutcome& a, const TestOutcome& b) {
  return a.statistic.name() == b.statistic.name() &&
         a.statistic_value == b.statistic_value &&
         a.critical_value == b.critical_value && a.p_value == b.p_value &&
         a.reject == b.reject && a.fitted.alpha == b.fitted.alpha &&
         a.fitted.beta == b.fitted.beta && a.redraws == b.redraws;
}

}  // namespace

TEST_SUITE("bootstrap") {

TEST_CASE("interpolated critical value on integer ladder") {
  // sorted values 1..B make the order statistics transparent
  CHECK(std::abs(modified_critical_value(iota_boot(500), 0.1) - 450.9) <= 1e-12);
  CHECK(std::abs(modified_critical_value(iota_boot(1000), 0.1) - 900.9) <= 1e-12);
  CHECK(std::abs(modified_critical_value(iota_boot(500), 0.05) - 475.9) <= 1e-12);
  CHECK(std::abs(modified_critical_value(iota_boot(19), 0.1) - 17.9) <= 1e-12);
}

TEST_CASE("critical value edge conditions throw") {
  CHECK_THROWS_AS(modified_critical_value({1.0}, 0.1), std::out_of_range);
  // level so high the index drops to zero
  CHECK_THROWS_AS(modified_critical_value(iota_boot(10), 0.99), std::out_of_range);
  // level so low the index needs the (B+1)-th order statistic
  CHECK_THROWS_AS(modified_critical_value(iota_boot(10), 0.05), std::out_of_range);
  CHECK_THROWS_AS(modified_critical_value(iota_boot(10), 0.0), std::domain_error);
  CHECK_THROWS_AS(modified_critical_value(iota_boot(10), 1.0), std::domain_error);
}

TEST_CASE("right-tail p-value counts ties as extreme") {
  const std::vector<double> boot{1.0, 2.0, 3.0, 4.0, 5.0};
  CHECK(bootstrap_pvalue(boot, 3.0) == 0.6);
  CHECK(bootstrap_pvalue(boot, 5.5) == 0.0);
  CHECK(bootstrap_pvalue(boot, 0.0) == 1.0);
  CHECK(bootstrap_pvalue(boot, 1.0) == 1.0);
  CHECK_THROWS_AS(bootstrap_pvalue({}, 0.5), std::invalid_argument);
}

TEST_CASE("same seed reproduces the full outcome") {
  const std::vector<double> xs = dataset_may2007();
  BootstrapSpec spec;
  spec.statistic = Statistic{StatKind::Tn};
  spec.B = 60;
  spec.level = 0.1;
  spec.seed = 42;
  const TestOutcome a = run_test(xs, spec);
  const TestOutcome b = run_test(xs, spec);
  CHECK(same_outcome(a, b));
  CHECK(a.p_value >= 0.0);
  CHECK(a.p_value <= 1.0);
  CHECK(std::isfinite(a.critical_value));
  CHECK(a.reject == (a.statistic_value > a.critical_value));
}

TEST_CASE("different seed moves the bootstrap ladder") {
  const std::vector<double> xs = dataset_may2007();
  BootstrapSpec spec;
  spec.B = 60;
  spec.seed = 1;
  const TestOutcome a = run_test(xs, spec);
  spec.seed = 2;
  const TestOutcome b = run_test(xs, spec);
  // the observed statistic and fit are seed-free, the ladder is not
  CHECK(a.statistic_value == b.statistic_value);
  CHECK(a.fitted.alpha == b.fitted.alpha);
  CHECK(a.critical_value != b.critical_value);
}

TEST_CASE("battery member equals the standalone run") {
  const std::vector<double> xs = dataset_may2008();
  const std::vector<Statistic> battery{
      Statistic{StatKind::Tn}, Statistic{StatKind::KS}, Statistic{StatKind::CM}};
  const auto outs = run_battery(xs, battery, EstimationMethod::MaximumLikelihood,
                                50, 0.1, 7, 1, false);
  REQUIRE(outs.size() == 3);

  BootstrapSpec spec;
  spec.statistic = Statistic{StatKind::Tn};
  spec.B = 50;
  spec.level = 0.1;
  spec.seed = 7;
  const TestOutcome solo = run_test(xs, spec);
  CHECK(same_outcome(outs[0], solo));
}

TEST_CASE("kept bootstrap values are in replicate order and complete") {
  const std::vector<double> xs = dataset_may2007();
  BootstrapSpec spec;
  spec.B = 40;
  spec.seed = 9;
  spec.keep_bootstrap = true;
  const TestOutcome kept = run_test(xs, spec);
  REQUIRE(kept.bootstrap_values.size() == 40);
  // p-value and critical value must be recomputable from the kept values
  CHECK(bootstrap_pvalue(kept.bootstrap_values, kept.statistic_value) ==
        kept.p_value);
  std::vector<double> sorted = kept.bootstrap_values;
  std::sort(sorted.begin(), sorted.end());
  CHECK(modified_critical_value(sorted, spec.level) == kept.critical_value);

  spec.keep_bootstrap = false;
  CHECK(run_test(xs, spec).bootstrap_values.empty());
}

TEST_CASE("outcome does not depend on the thread count") {
  const std::vector<double> xs = dataset_may2008();
  const std::vector<Statistic> battery{Statistic{StatKind::Tn},
                                       Statistic{StatKind::AD}};
  const auto one = run_battery(xs, battery, EstimationMethod::Moments, 64, 0.1,
                               11, 1, true);
  const auto four = run_battery(xs, battery, EstimationMethod::Moments, 64, 0.1,
                                11, 4, true);
  REQUIRE(one.size() == four.size());
  for (std::size_t i = 0; i < one.size(); ++i) {
    CHECK(same_outcome(one[i], four[i]));
    CHECK(one[i].bootstrap_values == four[i].bootstrap_values);
  }
}

TEST_CASE("battery rejects bad arguments") {
  const std::vector<double> xs = dataset_may2007();
  CHECK_THROWS_AS(run_battery(xs, {}, EstimationMethod::MaximumLikelihood, 10,
                              0.1, 0, 1, false),
                  std::invalid_argument);
  CHECK_THROWS_AS(run_battery(xs, {Statistic{StatKind::Tn}},
                              EstimationMethod::MaximumLikelihood, 0, 0.1, 0, 1,
                              false),
                  std::invalid_argument);
  CHECK_THROWS_AS(run_battery(xs, {Statistic{StatKind::Tn}},
                              EstimationMethod::MaximumLikelihood, 10, 1.5, 0,
                              1, false),
                  std::domain_error);
}

}  // TEST_SUITE
