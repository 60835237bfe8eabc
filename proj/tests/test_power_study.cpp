#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "power_study.hpp"
#include "rng.hpp"

using namespace betagof;

namespace {

PowerConfig tiny_config() {
  PowerConfig cfg;
  cfg.alternatives = {parse_alternative("B(2,2)"),
                      parse_alternative("TN(0.5,0.25)")};
  cfg.statistics = {Statistic{StatKind::Tn}, Statistic{StatKind::KS}};
  cfg.n = 20;
  cfg.mc_reps = 30;
  cfg.B = 30;
  cfg.level = 0.1;
  cfg.master_seed = 3;
  cfg.threads = 1;
  return cfg;
}

}  // namespace

TEST_SUITE("power_study") {

TEST_CASE("cells come out alternative-major with consistent tallies") {
  const PowerConfig cfg = tiny_config();
  const PowerTable table = run_power_study(cfg);
  REQUIRE(table.cells.size() == 4);
  CHECK(table.cells[0].alternative == "B(2,2)");
  CHECK(table.cells[0].statistic == "tn");
  CHECK(table.cells[1].alternative == "B(2,2)");
  CHECK(table.cells[1].statistic == "ks");
  CHECK(table.cells[2].alternative == "TN(0.5,0.25)");
  CHECK(table.cells[3].statistic == "ks");
  for (const PowerCell& c : table.cells) {
    CHECK(c.count >= 0);
    CHECK(c.count <= cfg.mc_reps);
    CHECK(c.rate == static_cast<double>(c.count) / cfg.mc_reps);
    CHECK(std::abs(c.se - std::sqrt(c.rate * (1.0 - c.rate) / cfg.mc_reps)) <=
          1e-15);
  }
  // the first alternative is the null itself at level 0.1
  CHECK(table.cells[0].rate <= 0.5);
  CHECK(table.redraws >= 0);
}

TEST_CASE("rates are reproducible by replaying the per-replicate seeds") {
  PowerConfig cfg = tiny_config();
  cfg.alternatives = {parse_alternative("B(2,2)")};
  const PowerTable table = run_power_study(cfg);
  REQUIRE(table.cells.size() == 2);

  int count_tn = 0, count_ks = 0;
  for (int r = 0; r < cfg.mc_reps; ++r) {
    const std::uint64_t base = static_cast<std::uint64_t>(r);
    const std::uint64_t sample_seed =
        rng::substream_seed(cfg.master_seed, base * 32);
    const std::uint64_t boot_seed =
        rng::substream_seed(cfg.master_seed, base * 32 + 1);
    const std::vector<double> xs =
        sample_alternative(cfg.alternatives[0], cfg.n, sample_seed);
    const auto outcomes = run_battery(xs, cfg.statistics, cfg.estimator, cfg.B,
                                      cfg.level, boot_seed, 1, false);
    if (outcomes[0].reject) ++count_tn;
    if (outcomes[1].reject) ++count_ks;
  }
  CHECK(table.cells[0].count == count_tn);
  CHECK(table.cells[1].count == count_ks);
}

TEST_CASE("thread count changes nothing in the table") {
  PowerConfig cfg = tiny_config();
  cfg.threads = 1;
  const PowerTable one = run_power_study(cfg);
  cfg.threads = 4;
  const PowerTable four = run_power_study(cfg);
  REQUIRE(one.cells.size() == four.cells.size());
  for (std::size_t i = 0; i < one.cells.size(); ++i) {
    CHECK(one.cells[i].count == four.cells[i].count);
    CHECK(one.cells[i].rate == four.cells[i].rate);
    CHECK(one.cells[i].se == four.cells[i].se);
  }
  CHECK(one.redraws == four.redraws);
  CHECK(power_table_csv(one) == power_table_csv(four));
}

TEST_CASE("csv carries the stable column order") {
  const PowerTable table = run_power_study(tiny_config());
  const std::string csv = power_table_csv(table);
  CHECK(csv.rfind("alternative,statistic,n,reps,B,level,rate,se\n", 0) == 0);
  std::size_t lines = 0;
  for (char ch : csv) {
    if (ch == '\n') ++lines;
  }
  CHECK(lines == 5);
  CHECK(csv.find("B(2,2),tn,20,30,30,0.1,") != std::string::npos);
  CHECK(csv.find("TN(0.5,0.25),ks,20,30,30,0.1,") != std::string::npos);
}

TEST_CASE("progress reports reach the total exactly once at the end") {
  std::vector<std::pair<int, int>> calls;
  run_power_study(tiny_config(), [&](int done, int total) {
    calls.emplace_back(done, total);
  });
  REQUIRE(!calls.empty());
  for (std::size_t i = 0; i < calls.size(); ++i) CHECK(calls[i].second == 60);
  CHECK(calls.back().first == 60);
}

TEST_CASE("configuration validation") {
  PowerConfig cfg = tiny_config();
  cfg.alternatives.clear();
  CHECK_THROWS_AS(run_power_study(cfg), std::invalid_argument);
  cfg = tiny_config();
  cfg.statistics.clear();
  CHECK_THROWS_AS(run_power_study(cfg), std::invalid_argument);
  cfg = tiny_config();
  cfg.B = 1;
  CHECK_THROWS_AS(run_power_study(cfg), std::invalid_argument);
  cfg = tiny_config();
  cfg.level = 1.5;
  CHECK_THROWS_AS(run_power_study(cfg), std::invalid_argument);
  cfg = tiny_config();
  cfg.n = 1;
  CHECK_THROWS_AS(run_power_study(cfg), std::invalid_argument);
}

}  // TEST_SUITE
