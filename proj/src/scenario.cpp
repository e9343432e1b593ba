#include "cdcr/scenario.hpp"

#include <cmath>
#include <string>

#include "cdcr/oracle.hpp"
#include "cdcr/solver.hpp"

namespace cdcr {

namespace {

Scenario study_domain(const char* name, const char* description, double p_a,
                      double t_redo, const AssumedDefaults& d) {
  StepModel step{p_a, d.t_confirm, d.t_diagnose, d.t_correct, t_redo};
  return Scenario{name,
                  description,
                  TaskPlan::uniform(d.n, step),
                  {{"n", "assumed"},
                   {"p_a", "published"},
                   {"t_confirm", "assumed"},
                   {"t_diagnose", "assumed"},
                   {"t_correct", "assumed"},
                   {"t_redo", "published"}}};
}

}  // namespace

std::vector<Scenario> builtin_scenarios(const AssumedDefaults& defaults) {
  return {
      study_domain("shopping",
                   "Shopping cart management; redo dominated by network and "
                   "screenshot analysis.",
                   0.875, 20.0, defaults),
      study_domain("image-editing",
                   "Image editing through external tool calls.", 0.91, 10.0,
                   defaults),
      study_domain("overcooked",
                   "Overcooked game; redo is agent reasoning plus game state "
                   "processing.",
                   0.93, 10.0, defaults),
  };
}

Scenario figure4_scenario() {
  const double p[] = {0.7, 0.7, 0.9, 0.85, 0.85};
  std::vector<StepModel> steps;
  for (double pa : p) steps.push_back({pa, 1.0, 1.0, 1.0, 1.0});
  return Scenario{"fig4",
                  "Five-step worked example with unit confirm, diagnose and "
                  "redo times.",
                  TaskPlan(std::move(steps)),
                  {{"n", "published"},
                   {"p_a", "published"},
                   {"t_confirm", "published"},
                   {"t_diagnose", "published"},
                   {"t_correct", "assumed"},
                   {"t_redo", "published"}}};
}

std::optional<Scenario> find_builtin(std::string_view name) {
  if (name == "fig4") return figure4_scenario();
  for (Scenario& s : builtin_scenarios()) {
    if (s.name == name) return std::move(s);
  }
  return std::nullopt;
}

void validate_scenario(const Scenario& scenario) {
  if (scenario.name.empty()) {
    throw Error(ErrorCode::kInvalidConfig, "name: must not be empty");
  }
  for (const char* field : kScenarioFields) {
    if (!scenario.provenance.count(field)) {
      throw Error(ErrorCode::kInvalidConfig,
                  std::string("provenance.") + field + ": missing");
    }
  }
}

const StrategyRow& ComparisonReport::row(std::string_view strategy) const {
  for (const StrategyRow& r : rows) {
    if (r.strategy == strategy) return r;
  }
  throw Error(ErrorCode::kIndexOutOfRange,
              "no strategy '" + std::string(strategy) + "' in report");
}

ComparisonReport compare_strategies(const Scenario& scenario,
                                    std::size_t mc_runs, std::uint64_t seed,
                                    bool include_correct_cost) {
  validate_scenario(scenario);
  const TaskPlan& plan = scenario.plan;
  const std::size_t n = plan.size();

  const SolveResult solved = solve(plan, include_correct_cost);
  const Policy strategies[] = {solved.policy, end_only_policy(n),
                               every_step_policy(n)};
  const char* names[] = {"optimal", "end-only", "every-step"};

  ComparisonReport report;
  report.scenario = scenario.name;
  report.include_correct_cost = include_correct_cost;
  for (std::size_t s = 0; s < 3; ++s) {
    StrategyRow row;
    row.strategy = names[s];
    row.policy = strategies[s];
    row.expected_time =
        s == 0 ? solved.value[0]
               : evaluate_policy(plan, row.policy, include_correct_cost)[0];
    row.checkpoints = success_path(row.policy).size();
    const MonteCarloSummary mc =
        monte_carlo(plan, row.policy, mc_runs, seed, include_correct_cost);
    row.mc_mean = mc.mean_time;
    row.mc_std_error = mc.std_error;
    row.mc_ci95_low = mc.ci95_low;
    row.mc_ci95_high = mc.ci95_high;
    report.rows.push_back(std::move(row));
  }
  const double v_end = report.rows[1].expected_time;
  const double v_opt = report.rows[0].expected_time;
  report.reduction_vs_end = v_end > 0.0 ? (v_end - v_opt) / v_end : 0.0;
  return report;
}

std::optional<SweepAxis> parse_sweep_axis(std::string_view name) {
  if (name == "p_a") return SweepAxis::kPa;
  if (name == "t_confirm") return SweepAxis::kTConfirm;
  if (name == "t_diagnose") return SweepAxis::kTDiagnose;
  if (name == "t_redo") return SweepAxis::kTRedo;
  if (name == "n" || name == "N") return SweepAxis::kN;
  return std::nullopt;
}

const char* to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::kPa: return "p_a";
    case SweepAxis::kTConfirm: return "t_confirm";
    case SweepAxis::kTDiagnose: return "t_diagnose";
    case SweepAxis::kTRedo: return "t_redo";
    case SweepAxis::kN: return "n";
  }
  return "unknown";
}

TaskPlan apply_sweep_value(const TaskPlan& base, SweepAxis axis, double value) {
  auto bad = [&](const char* why) {
    return Error(ErrorCode::kInvalidSweepValue,
                 std::string(to_string(axis)) + " = " + format_sig6(value) +
                     ": " + why);
  };
  if (!std::isfinite(value)) throw bad("not finite");

  std::vector<StepModel> steps(base.steps().begin(), base.steps().end());
  switch (axis) {
    case SweepAxis::kPa:
      if (!(value > 0.0 && value <= 1.0)) throw bad("must be in (0, 1]");
      for (StepModel& s : steps) s.p_a = value;
      break;
    case SweepAxis::kTConfirm:
    case SweepAxis::kTDiagnose:
    case SweepAxis::kTRedo:
      if (value < 0.0) throw bad("must be >= 0");
      for (StepModel& s : steps) {
        if (axis == SweepAxis::kTConfirm) s.t_confirm = value;
        if (axis == SweepAxis::kTDiagnose) s.t_diagnose = value;
        if (axis == SweepAxis::kTRedo) s.t_redo = value;
      }
      break;
    case SweepAxis::kN: {
      if (value < 1.0 || value != std::floor(value)) {
        throw bad("must be a positive integer");
      }
      const StepModel last = steps.back();
      steps.resize(static_cast<std::size_t>(value), last);
      break;
    }
  }
  return TaskPlan(std::move(steps));
}

std::vector<SweepRow> sweep(const Scenario& base, SweepAxis axis,
                            const std::vector<double>& values,
                            bool include_correct_cost) {
  std::vector<SweepRow> rows;
  rows.reserve(values.size());
  for (double v : values) {
    const TaskPlan plan = apply_sweep_value(base.plan, axis, v);
    const SolveResult solved = solve(plan, include_correct_cost);
    SweepRow row;
    row.value = v;
    row.v_opt = solved.value[0];
    row.v_end =
        evaluate_policy(plan, end_only_policy(plan.size()), include_correct_cost)[0];
    row.v_every = evaluate_policy(plan, every_step_policy(plan.size()),
                                  include_correct_cost)[0];
    row.optimal_checkpoints = success_path(solved.policy);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::optional<ErrorLocation> parse_error_location(std::string_view name) {
  if (name == "none") return ErrorLocation::kNone;
  if (name == "early") return ErrorLocation::kEarly;
  if (name == "mid") return ErrorLocation::kMid;
  if (name == "late") return ErrorLocation::kLate;
  return std::nullopt;
}

const char* to_string(ErrorLocation location) {
  switch (location) {
    case ErrorLocation::kNone: return "none";
    case ErrorLocation::kEarly: return "early";
    case ErrorLocation::kMid: return "mid";
    case ErrorLocation::kLate: return "late";
  }
  return "unknown";
}

std::size_t forced_step(std::size_t n, ErrorLocation location) {
  switch (location) {
    case ErrorLocation::kNone: return 0;
    case ErrorLocation::kEarly: return (n + 5) / 6;
    case ErrorLocation::kMid: return (n + 1) / 2;
    case ErrorLocation::kLate: return n > 1 ? n - 1 : 1;
  }
  return 0;
}

std::vector<ErrorLocationRow> error_location_experiment(
    const Scenario& scenario, const std::vector<ErrorLocation>& locations) {
  validate_scenario(scenario);
  const TaskPlan& plan = scenario.plan;
  const Policy optimal = solve(plan).policy;
  const Policy end_only = end_only_policy(plan.size());

  std::vector<ErrorLocationRow> rows;
  for (ErrorLocation loc : locations) {
    ErrorLocationRow row;
    row.location = loc;
    row.step = forced_step(plan.size(), loc);
    // Step 0 never executes, so kNone forces nothing.
    row.optimal_time =
        simulate_with_outcomes(plan, optimal, single_failure_outcomes(row.step),
                               true)
            .total_user_time;
    row.end_only_time =
        simulate_with_outcomes(plan, end_only,
                               single_failure_outcomes(row.step), true)
            .total_user_time;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace cdcr
