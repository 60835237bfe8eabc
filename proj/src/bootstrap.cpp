#include "bootstrap.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "errors.hpp"
#include "parallel.hpp"
#include "rng.hpp"

namespace betagof {

double modified_critical_value(const std::vector<double>& sorted_boot,
                               double level) {
  const std::size_t B = sorted_boot.size();
  if (B < 2) throw std::out_of_range("modified_critical_value: need B >= 2");
  if (!(level > 0.0 && level < 1.0)) {
    throw std::domain_error("modified_critical_value: level outside (0,1)");
  }
  const long k =
      static_cast<long>(B) -
      static_cast<long>(std::floor(level * (static_cast<double>(B) + 1.0)));
  if (k < 1 || k + 1 > static_cast<long>(B)) {
    throw std::out_of_range("modified_critical_value: order-statistic index " +
                            std::to_string(k) + " out of range for B = " +
                            std::to_string(B));
  }
  const double lo = sorted_boot[static_cast<std::size_t>(k - 1)];
  const double hi = sorted_boot[static_cast<std::size_t>(k)];
  return lo + 0.90 * (hi - lo);
}

double bootstrap_pvalue(const std::vector<double>& boot, double observed) {
  if (boot.empty()) throw std::invalid_argument("bootstrap_pvalue: empty");
  std::size_t count = 0;
  for (double v : boot) {
    if (v >= observed) ++count;
  }
  return static_cast<double>(count) / static_cast<double>(boot.size());
}

std::vector<TestOutcome> run_battery(const std::vector<double>& xs,
                                     const std::vector<Statistic>& sts,
                                     EstimationMethod estimator, int B,
                                     double level, std::uint64_t seed,
                                     int threads, bool keep_bootstrap) {
  if (sts.empty()) throw std::invalid_argument("run_battery: no statistics");
  if (B < 1) throw std::invalid_argument("run_battery: B must be >= 1");
  if (!(level > 0.0 && level < 1.0)) {
    throw std::domain_error("run_battery: level outside (0,1)");
  }
  const BetaParams fitted = fit(xs, estimator);
  const std::vector<double> observed = evaluate_battery(sts, xs, fitted);

  const std::size_t S = sts.size();
  std::vector<double> values(static_cast<std::size_t>(B) * S);
  std::vector<int> redraws(static_cast<std::size_t>(B), 0);

  parallel_for(static_cast<std::size_t>(B), threads, [&](std::size_t j) {
    const std::uint64_t replicate_master = rng::substream_seed(seed, j);
    for (int attempt = 0;; ++attempt) {
      if (attempt >= 10) {
        throw NoConvergence(
            "bootstrap replicate failed estimation 10 times in a row");
      }
      const std::uint64_t sub =
          rng::substream_seed(replicate_master, static_cast<std::uint64_t>(attempt));
      try {
        const std::vector<double> resample = sample_beta(xs.size(), fitted, sub);
        const BetaParams refit = fit(resample, estimator);
        const std::vector<double> vals = evaluate_battery(sts, resample, refit);
        for (std::size_t s = 0; s < S; ++s) values[j * S + s] = vals[s];
        redraws[j] = attempt;
        return;
      } catch (const NonInteriorData&) {
      } catch (const DegenerateSample&) {
      } catch (const NoConvergence&) {
      } catch (const DegenerateTransform&) {
      }
    }
  });

  int total_redraws = 0;
  for (int r : redraws) total_redraws += r;

  std::vector<TestOutcome> out(S);
  std::vector<double> column(static_cast<std::size_t>(B));
  for (std::size_t s = 0; s < S; ++s) {
    for (std::size_t j = 0; j < static_cast<std::size_t>(B); ++j) {
      column[j] = values[j * S + s];
    }
    TestOutcome& o = out[s];
    o.statistic = sts[s];
    o.statistic_value = observed[s];
    o.fitted = fitted;
    o.redraws = total_redraws;
    o.p_value = bootstrap_pvalue(column, observed[s]);
    if (keep_bootstrap) o.bootstrap_values = column;
    std::sort(column.begin(), column.end());
    o.critical_value = modified_critical_value(column, level);
    o.reject = o.statistic_value > o.critical_value;
  }
  return out;
}

TestOutcome run_test(const std::vector<double>& xs, const BootstrapSpec& spec) {
  return run_battery(xs, {spec.statistic}, spec.estimator, spec.B, spec.level,
                     spec.seed, spec.threads, spec.keep_bootstrap)[0];
}

}  // namespace betagof
