#pragma once

// Monte Carlo power harness: for each alternative, repeatedly draw a sample,
// calibrate every statistic by the shared parametric bootstrap, and tally
// rejection rates.  Deterministic for a fixed master seed at any thread
// count.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "alternatives.hpp"
#include "bootstrap.hpp"

namespace betagof {

struct PowerConfig {
  std::vector<AlternativeSpec> alternatives;
  std::vector<Statistic> statistics;
  std::size_t n = 50;
  int mc_reps = 1000;  // desk-scale default; the reference design is 10000
  int B = 200;         // desk-scale default; the reference design is 500
  double level = 0.1;
  EstimationMethod estimator = EstimationMethod::MaximumLikelihood;
  std::uint64_t master_seed = 1;
  int threads = 0;  // 0: hardware concurrency
};

struct PowerCell {
  std::string alternative;
  std::string statistic;
  int count = 0;     // rejections
  double rate = 0.0; // count / mc_reps
  double se = 0.0;   // sqrt(rate (1-rate) / mc_reps)
};

struct PowerTable {
  PowerConfig config;
  std::vector<PowerCell> cells;  // alternative-major, statistic-minor
  long long redraws = 0;         // failed fits that were redrawn, all levels
};

// progress(done, total) is called from worker threads under a lock; total
// counts Monte Carlo replications across all alternatives.
using ProgressFn = std::function<void(int done, int total)>;

PowerTable run_power_study(const PowerConfig& cfg, ProgressFn progress = {});

// Stable column order: alternative, statistic, n, reps, B, level, rate, se.
std::string power_table_csv(const PowerTable& table);

}  // namespace betagof
