#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "wef/experiment.hpp"

using namespace wef;

namespace {

ExperimentConfig small_config() {
  ExperimentConfig cfg;
  cfg.agent_counts = {2, 3};
  cfg.resources = 4;
  cfg.trials = 40;
  cfg.cultures = {Culture::IC, Culture::SPUP};
  cfg.weight_ranges = {{1, 3}};
  cfg.utility = {1, 6};
  cfg.seed = 9;
  cfg.repro_dir = std::filesystem::temp_directory_path().string();
  return cfg;
}

std::string csv_of(const ExperimentReport& r) {
  std::ostringstream out;
  write_csv(out, r);
  return out.str();
}

CellResult cell(int n, double sef, double aef, double saef) {
  CellResult c;
  c.agents = n;
  c.resources = 8;
  c.trials = 10000;
  c.weight = {1, 100};
  c.count = {static_cast<int>(sef * 10000 + 0.5), static_cast<int>(aef * 10000 + 0.5),
             static_cast<int>(saef * 10000 + 0.5)};
  return c;
}

}  // namespace

TEST_SUITE("experiment") {

TEST_CASE("config validation") {
  auto cfg = small_config();
  CHECK_NOTHROW(cfg.validate());
  cfg.trials = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = small_config();
  cfg.kind = ProblemKind::House;
  cfg.agent_counts = {5};
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = small_config();
  cfg.jobs = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = small_config();
  cfg.weight_ranges = {{0, 5}};
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("CSV is deterministic and independent of the worker count") {
  auto cfg = small_config();
  const auto a = run_experiment(cfg);
  const auto b = run_experiment(cfg);
  cfg.jobs = 3;
  const auto c = run_experiment(cfg);
  CHECK(csv_of(a) == csv_of(b));
  CHECK(csv_of(a) == csv_of(c));

  const auto text = csv_of(a);
  CHECK(text.rfind("culture,weight_range,kind,n,m,trials,sef_ratio,aef_ratio,saef_ratio,seed", 0) ==
        0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 1 + 4);

  cfg.seed = 10;
  CHECK(csv_of(run_experiment(cfg)) != csv_of(a));
}

TEST_CASE("cells respect inheritability and count every trial") {
  auto cfg = small_config();
  for (auto kind : {ProblemKind::Allocation, ProblemKind::House}) {
    cfg.kind = kind;
    int cells = 0;
    const auto report = run_experiment(cfg, [&](const CellResult&) { ++cells; });
    CHECK(cells == 4);
    CHECK(report.inheritability_violations() == 0);
    for (const auto& c : report.cells) {
      CHECK(c.complete());
      CHECK(c.trials == cfg.trials);
      CHECK(c.count[2] >= c.count[0]);
      CHECK(c.count[2] >= c.count[1]);
    }
  }
}

TEST_CASE("specialized solvers are cross-checked when the class matches") {
  auto cfg = small_config();
  cfg.utility = {1, 1};  // every instance is identical 0/1
  for (auto kind : {ProblemKind::Allocation, ProblemKind::House}) {
    cfg.kind = kind;
    const auto report = run_experiment(cfg);
    int checks = 0;
    for (const auto& c : report.cells) checks += c.cross_checks;
    CHECK(checks >= 2 * cfg.trials);
  }
  cfg.cross_check = false;
  const auto off = run_experiment(cfg);
  for (const auto& c : off.cells) CHECK(c.cross_checks == 0);
}

TEST_CASE("budget refusals are recorded") {
  auto cfg = small_config();
  cfg.limits.leaf_budget = 1;
  cfg.limits.prune = false;
  cfg.cultures = {Culture::IC};
  const auto report = run_experiment(cfg);
  int refused = 0;
  for (const auto& c : report.cells) refused += c.refused;
  CHECK(refused > 0);
}

TEST_CASE("reference comparison") {
  ExperimentReport good;
  good.config.cultures = {Culture::IC};
  good.config.weight_ranges = {{1, 100}};
  for (const auto& ref : reference_frequencies()) {
    good.cells.push_back(cell(ref.agents, ref.ratio[0], ref.ratio[1], ref.ratio[2]));
  }
  const auto cmp = compare_with_reference(good);
  REQUIRE(cmp.size() == 1);
  CHECK(cmp[0].matched_cells == 4);
  CHECK(cmp[0].total_deviation < 1e-3);
  CHECK(cmp[0].orderings_hold);
  CHECK(cmp[0].monotone);

  ExperimentReport bad = good;
  bad.cells[1] = cell(6, 0.30, 0.01, 0.95);  // SEF rises from n=5 to n=6
  bad.cells[2] = cell(7, 0.001, 0.002, 0.70);  // AEF above SEF
  const auto b = compare_with_reference(bad);
  CHECK_FALSE(b[0].monotone);
  CHECK_FALSE(b[0].orderings_hold);

  std::ostringstream summary;
  write_summary(summary, good);
  CHECK(summary.str().find("best match") != std::string::npos);
}

TEST_CASE("problem kinds") {
  CHECK(parse_kind("house") == ProblemKind::House);
  CHECK(parse_kind("allocation") == ProblemKind::Allocation);
  CHECK_THROWS_AS(parse_kind("matching"), std::invalid_argument);
}

}  // TEST_SUITE
