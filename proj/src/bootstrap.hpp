#pragma once

// Parametric bootstrap calibration: fit the null on the data, resample from
// the fitted law with a fresh re-fit per replicate, then read the decision
// off the interpolated bootstrap order statistic.

#include <cstdint>
#include <vector>

#include "beta_model.hpp"
#include "gof_stats.hpp"

namespace betagof {

struct BootstrapSpec {
  Statistic statistic{StatKind::Tn};
  EstimationMethod estimator = EstimationMethod::MaximumLikelihood;
  int B = 500;
  double level = 0.1;
  std::uint64_t seed = 0;
  int threads = 1;
  bool keep_bootstrap = false;
};

struct TestOutcome {
  Statistic statistic{StatKind::Tn};
  double statistic_value = 0.0;
  double critical_value = 0.0;
  double p_value = 0.0;
  bool reject = false;
  BetaParams fitted{0.0, 0.0};
  int redraws = 0;  // replicate re-fits that failed and were redrawn
  std::vector<double> bootstrap_values;  // replicate order; empty unless kept
};

// T*_(k) + 0.90 (T*_(k+1) - T*_(k)) with k = B - floor(level (B+1)).
// Throws std::out_of_range when k or k+1 falls outside 1..B.
double modified_critical_value(const std::vector<double>& sorted_boot,
                               double level);

// Right-tail proportion #{T*_j >= observed} / B.
double bootstrap_pvalue(const std::vector<double>& boot, double observed);

// Runs the whole battery on one shared set of bootstrap resamples: every
// replicate draws one sample from the fitted null, re-fits once, and
// evaluates each statistic.  A battery of one is the plain single test and
// produces the identical outcome for that statistic.
std::vector<TestOutcome> run_battery(const std::vector<double>& xs,
                                     const std::vector<Statistic>& sts,
                                     EstimationMethod estimator, int B,
                                     double level, std::uint64_t seed,
                                     int threads, bool keep_bootstrap);

TestOutcome run_test(const std::vector<double>& xs, const BootstrapSpec& spec);

}  // namespace betagof
