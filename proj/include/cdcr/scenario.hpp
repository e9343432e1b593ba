// Named scenarios, strategy comparisons, parameter sweeps and the
// forced-error-location experiment.
//
// The study domains fix only the per-step accuracy and the redo time. Step
// count, confirmation, diagnosis and correction times are assumptions; every
// scenario carries a provenance tag per numeric field so the two kinds cannot
// be mixed up in reports.

#ifndef CDCR_SCENARIO_HPP_
#define CDCR_SCENARIO_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cdcr/core.hpp"

namespace cdcr {

// Field names shared by provenance maps, config files and sweep axes.
inline constexpr const char* kScenarioFields[] = {
    "n", "p_a", "t_confirm", "t_diagnose", "t_correct", "t_redo"};

struct Scenario {
  std::string name;
  std::string description;
  TaskPlan plan;
  // field -> "published" | "assumed" | "user"
  std::map<std::string, std::string> provenance;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

// Values used where the study domains leave a parameter unpublished.
struct AssumedDefaults {
  std::size_t n = 12;
  double t_confirm = 8.0;
  double t_diagnose = 4.0;
  double t_correct = 10.0;
};

// shopping, image-editing, overcooked.
std::vector<Scenario> builtin_scenarios(const AssumedDefaults& defaults = {});

// Five-step worked example: p = [0.7, 0.7, 0.9, 0.85, 0.85], unit costs.
Scenario figure4_scenario();

// Resolves "fig4" and the builtin_scenarios() names.
std::optional<Scenario> find_builtin(std::string_view name);

// Throws kInvalidConfig if a provenance tag is missing or the name is empty.
void validate_scenario(const Scenario& scenario);

// JSON config. Either an explicit "steps" array of
// {p_a, t_confirm, t_diagnose, t_correct, t_redo} objects or a "uniform"
// object {n, p_a, t_confirm, t_diagnose, t_correct, t_redo}. Optional
// "description" and "provenance". Unknown keys are rejected with kInvalidConfig
// naming the offending path.
Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::string& path);
std::string to_config(const Scenario& scenario);

struct StrategyRow {
  std::string strategy;
  double expected_time = 0.0;
  double mc_mean = 0.0;
  double mc_std_error = 0.0;
  double mc_ci95_low = 0.0;
  double mc_ci95_high = 0.0;
  std::size_t checkpoints = 0;  // confirmations on the success path
  Policy policy;
};

struct ComparisonReport {
  std::string scenario;
  std::vector<StrategyRow> rows;  // optimal, end-only, every-step
  double reduction_vs_end = 0.0;  // (V_end - V_opt) / V_end
  bool include_correct_cost = false;

  const StrategyRow& row(std::string_view strategy) const;
};

ComparisonReport compare_strategies(const Scenario& scenario,
                                    std::size_t mc_runs, std::uint64_t seed,
                                    bool include_correct_cost = false);

enum class SweepAxis { kPa, kTConfirm, kTDiagnose, kTRedo, kN };

std::optional<SweepAxis> parse_sweep_axis(std::string_view name);
const char* to_string(SweepAxis axis);

// Copy of `base` with one parameter set on every step. For kN the plan is
// truncated, or extended by repeating its last step. Throws
// kInvalidSweepValue for out-of-range values.
TaskPlan apply_sweep_value(const TaskPlan& base, SweepAxis axis, double value);

struct SweepRow {
  double value = 0.0;
  double v_opt = 0.0;
  double v_end = 0.0;
  double v_every = 0.0;
  std::vector<std::size_t> optimal_checkpoints;  // success path of the optimum
};

std::vector<SweepRow> sweep(const Scenario& base, SweepAxis axis,
                            const std::vector<double>& values,
                            bool include_correct_cost = false);

enum class ErrorLocation { kNone, kEarly, kMid, kLate };

std::optional<ErrorLocation> parse_error_location(std::string_view name);
const char* to_string(ErrorLocation location);

// Step forced to fail: early = ceil(N/6), mid = ceil(N/2), late = N-1 (at
// least 1). 0 for kNone.
std::size_t forced_step(std::size_t n, ErrorLocation location);

struct ErrorLocationRow {
  ErrorLocation location = ErrorLocation::kNone;
  std::size_t step = 0;
  double optimal_time = 0.0;
  double end_only_time = 0.0;
};

// Conditioned simulation: the forced step fails the first time it runs and
// every other execution succeeds, so the outcome is deterministic and no
// sampling is needed. Policies are the DP optimum (correction cost dropped)
// and end-only; user time is charged including the correction.
std::vector<ErrorLocationRow> error_location_experiment(
    const Scenario& scenario, const std::vector<ErrorLocation>& locations);

// Reports: CSV with a header row, floats at 6 significant digits.
void write_comparison_csv(std::ostream& out, const ComparisonReport& report);
void write_comparison_summary(std::ostream& out, const ComparisonReport& report);
void write_sweep_csv(std::ostream& out, SweepAxis axis,
                     const std::vector<SweepRow>& rows);
void write_error_location_csv(std::ostream& out,
                              const std::vector<ErrorLocationRow>& rows);

// Footer printed under every summary block.
extern const char* const kHumanStudyDisclaimer;

// Formats with 6 significant digits (%.6g).
std::string format_sig6(double value);

}  // namespace cdcr

#endif  // CDCR_SCENARIO_HPP_
