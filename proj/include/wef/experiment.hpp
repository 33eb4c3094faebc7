#ifndef WEF_EXPERIMENT_HPP
#define WEF_EXPERIMENT_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "wef/exact.hpp"
#include "wef/gen.hpp"

namespace wef {

enum class ProblemKind { Allocation, House };

std::string_view to_string(ProblemKind kind);
ProblemKind parse_kind(std::string_view text);

struct ExperimentConfig {
  std::vector<int> agent_counts{5, 6, 7, 8};
  int resources = 8;
  int trials = 2000;
  std::vector<Culture> cultures{Culture::IC, Culture::SPUP};
  std::vector<ValueRange> weight_ranges{{1, 100}, {101, 200}};
  ValueRange utility{1, 10000};
  ProblemKind kind = ProblemKind::Allocation;
  std::uint64_t seed = 2025;
  int jobs = 1;
  SearchLimits limits;
  bool cross_check = true;
  std::string repro_dir = ".";

  void validate() const;
};

/// Seed of one generated instance; independent of cell order and jobs.
std::uint64_t instance_seed(std::uint64_t base, Culture culture,
                            const ValueRange& weight, ProblemKind kind,
                            int agents, int resources, int trial);

struct InstanceOutcome {
  std::array<bool, 3> exists{};
  bool refused = false;
  int inheritability_violations = 0;
  int cross_checks = 0;
};

/// Existence of SEF/AEF/SAEF allocations for one instance, with the
/// inheritability checks and (optionally) specialized-solver cross-checks.
/// A specialized verdict that disagrees with the exhaustive one throws
/// std::runtime_error after writing the instance to repro_dir.
InstanceOutcome evaluate_instance(const Instance& instance, ProblemKind kind,
                                  const SearchLimits& limits, bool cross_check,
                                  const std::string& repro_dir = ".");

struct CellResult {
  Culture culture = Culture::IC;
  ValueRange weight;
  ProblemKind kind = ProblemKind::Allocation;
  int agents = 0;
  int resources = 0;
  int trials = 0;
  std::array<int, 3> count{};
  int refused = 0;
  int inheritability_violations = 0;
  int cross_checks = 0;

  double ratio(Concept c) const {
    return trials ? static_cast<double>(count[concept_index(c)]) / trials : 0.0;
  }
  bool complete() const { return refused == 0; }
};

struct ExperimentReport {
  ExperimentConfig config;
  std::vector<CellResult> cells;
  double wall_seconds = 0;

  int inheritability_violations() const;
};

ExperimentReport run_experiment(
    const ExperimentConfig& config,
    const std::function<void(const CellResult&)>& on_cell = {});

/// Columns: culture, weight_range, kind, n, m, trials, sef_ratio, aef_ratio,
/// saef_ratio, seed, then sef_count, aef_count, saef_count, refused.
void write_csv(std::ostream& out, const ExperimentReport& report);

struct ReferenceRow {
  int agents;
  std::array<double, 3> ratio;  // SEF, AEF, SAEF as fractions
};

/// Published existence ratios for m = 8, 10000 instances.
std::span<const ReferenceRow> reference_frequencies();

struct SettingComparison {
  Culture culture = Culture::IC;
  ValueRange weight;
  double total_deviation = 0;  // sum |ratio - reference| over matched cells
  int matched_cells = 0;
  bool orderings_hold = true;  // SAEF > SEF > AEF per n (AEF = SEF = 0 allowed at n = 8)
  bool monotone = true;        // every ratio non-increasing in n
  std::vector<std::string> violations;
};

/// One comparison per (culture, weight range) setting with allocation cells,
/// sorted by total deviation (best first).
std::vector<SettingComparison> compare_with_reference(const ExperimentReport& report);

void write_summary(std::ostream& out, const ExperimentReport& report);

}  // namespace wef

#endif  // WEF_EXPERIMENT_HPP
