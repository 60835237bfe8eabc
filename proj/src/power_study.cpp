#include "power_study.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <stdexcept>

#include "errors.hpp"
#include "parallel.hpp"
#include "rng.hpp"

namespace betagof {

namespace {

void validate(const PowerConfig& cfg) {
  if (cfg.alternatives.empty()) {
    throw std::invalid_argument("power study: no alternatives");
  }
  if (cfg.statistics.empty()) {
    throw std::invalid_argument("power study: no statistics");
  }
  if (cfg.statistics.size() > 32) {
    throw std::invalid_argument("power study: at most 32 statistics");
  }
  if (cfg.n < 2) throw std::invalid_argument("power study: n must be >= 2");
  if (cfg.mc_reps < 1) throw std::invalid_argument("power study: mc_reps < 1");
  if (cfg.B < 2) throw std::invalid_argument("power study: B must be >= 2");
  if (!(cfg.level > 0.0 && cfg.level < 1.0)) {
    throw std::invalid_argument("power study: level outside (0,1)");
  }
}

}  // namespace

PowerTable run_power_study(const PowerConfig& cfg, ProgressFn progress) {
  validate(cfg);
  const std::size_t S = cfg.statistics.size();
  const int total = cfg.mc_reps * static_cast<int>(cfg.alternatives.size());

  PowerTable table;
  table.config = cfg;

  std::atomic<int> done{0};
  std::mutex progress_mu;
  const int step = std::max(1, total / 200);

  for (std::size_t a_idx = 0; a_idx < cfg.alternatives.size(); ++a_idx) {
    const AlternativeSpec& alt = cfg.alternatives[a_idx];
    // slot per replication: rejection mask over statistics, plus redraws
    std::vector<std::uint32_t> reject_mask(cfg.mc_reps, 0);
    std::vector<int> redraws(cfg.mc_reps, 0);

    parallel_for(static_cast<std::size_t>(cfg.mc_reps), cfg.threads,
                 [&](std::size_t r) {
      // Seeds depend only on (master, alternative, replication, attempt):
      // one substream for the alternative draw, one for the bootstrap.
      const std::uint64_t base =
          (static_cast<std::uint64_t>(a_idx) << 40) + r;
      int attempts = 0;
      for (;; ++attempts) {
        if (attempts >= 10) {
          throw NoConvergence(
              "power study: replication failed estimation 10 times");
        }
        const std::uint64_t sample_seed =
            rng::substream_seed(cfg.master_seed, base * 32 + 2 * attempts);
        const std::uint64_t boot_seed =
            rng::substream_seed(cfg.master_seed, base * 32 + 2 * attempts + 1);
        try {
          const std::vector<double> xs =
              sample_alternative(alt, cfg.n, sample_seed);
          const std::vector<TestOutcome> outcomes =
              run_battery(xs, cfg.statistics, cfg.estimator, cfg.B, cfg.level,
                          boot_seed, /*threads=*/1, /*keep_bootstrap=*/false);
          std::uint32_t mask = 0;
          int inner_redraws = 0;
          for (std::size_t s = 0; s < S; ++s) {
            if (outcomes[s].reject) mask |= (1u << s);
            inner_redraws = outcomes[s].redraws;  // shared across the battery
          }
          reject_mask[r] = mask;
          redraws[r] = attempts + inner_redraws;
          break;
        } catch (const NonInteriorData&) {
        } catch (const DegenerateSample&) {
        } catch (const NoConvergence&) {
        } catch (const DegenerateTransform&) {
        }
      }
      const int d = done.fetch_add(1, std::memory_order_relaxed) + 1;
      if (progress && (d % step == 0 || d == total)) {
        std::lock_guard<std::mutex> lock(progress_mu);
        progress(d, total);
      }
    });

    for (std::size_t s = 0; s < S; ++s) {
      PowerCell cell;
      cell.alternative = alt.text.empty() ? "?" : alt.text;
      cell.statistic = cfg.statistics[s].name();
      for (int r = 0; r < cfg.mc_reps; ++r) {
        if (reject_mask[r] & (1u << s)) ++cell.count;
      }
      cell.rate = static_cast<double>(cell.count) /
                  static_cast<double>(cfg.mc_reps);
      cell.se = std::sqrt(cell.rate * (1.0 - cell.rate) /
                          static_cast<double>(cfg.mc_reps));
      table.cells.push_back(cell);
    }
    for (int r = 0; r < cfg.mc_reps; ++r) table.redraws += redraws[r];
  }
  return table;
}

std::string power_table_csv(const PowerTable& table) {
  std::string out = "alternative,statistic,n,reps,B,level,rate,se\n";
  char buf[256];
  for (const PowerCell& c : table.cells) {
    std::snprintf(buf, sizeof(buf), "%s,%s,%zu,%d,%d,%g,%g,%g\n",
                  c.alternative.c_str(), c.statistic.c_str(), table.config.n,
                  table.config.mc_reps, table.config.B, table.config.level,
                  c.rate, c.se);
    out += buf;
  }
  return out;
}

}  // namespace betagof
