#include "cdcr/solver.hpp"

#include <limits>
#include <string>

namespace cdcr {

namespace {

constexpr double kUndefined = std::numeric_limits<double>::quiet_NaN();

void check_interval(const TaskPlan& plan, std::size_t i, std::size_t j) {
  if (i >= j || j > plan.size()) {
    throw Error(ErrorCode::kIndexOutOfRange,
                "interval requires 0 <= i < j <= N, got i=" + std::to_string(i) +
                    " j=" + std::to_string(j));
  }
}

// Interval cost with the self-referential term left out:
// T[i,j] = a + (1 - p_a(i+1)) * V[i]. Direct O(j - i) summation.
double affine_part(const TaskPlan& plan, std::size_t i, std::size_t j,
                   std::span<const double> value, bool include_correct_cost) {
  double redo = 0.0;  // sum_{k=m..j} t_redo, shrinking as m advances
  for (std::size_t k = i + 1; k <= j; ++k) redo += plan.step(k).t_redo;

  double total = plan.step(j).t_confirm;
  double survival = 1.0;
  double diagnose = 0.0;
  for (std::size_t m = i + 1; m <= j; ++m) {
    const StepModel& s = plan.step(m);
    diagnose += s.t_diagnose;
    const double q = survival * (1.0 - s.p_a);
    survival *= s.p_a;
    const double redo_span = redo;
    redo -= s.t_redo;
    if (q == 0.0) continue;
    double branch = diagnose + redo_span;
    if (include_correct_cost) branch += s.t_correct;
    if (m - 1 != i) branch += value[m - 1];
    total += q * branch;
  }
  if (survival != 0.0) total += survival * value[j];
  return total;
}

}  // namespace

double SolveResult::cell(std::size_t i, std::size_t j) const {
  if (!has_cell(i, j)) {
    throw Error(ErrorCode::kIndexOutOfRange,
                "no table cell at [" + std::to_string(i) + "," +
                    std::to_string(j) + "]");
  }
  return t_table[i * (n + 1) + j];
}

double interval_cost(const TaskPlan& plan, std::size_t i, std::size_t j,
                     std::span<const double> value, double self_value,
                     bool include_correct_cost) {
  check_interval(plan, i, j);
  if (value.size() != plan.size() + 1) {
    throw Error(ErrorCode::kIndexOutOfRange,
                "value vector must have N+1 entries");
  }
  const double a = affine_part(plan, i, j, value, include_correct_cost);
  return a + (1.0 - plan.step(i + 1).p_a) * self_value;
}

SolveResult solve(const TaskPlan& plan, bool include_correct_cost) {
  const std::size_t n = plan.size();
  SolveResult result;
  result.n = n;
  result.include_correct_cost = include_correct_cost;
  result.t_table.assign(n * (n + 1), kUndefined);
  result.value.assign(n + 1, 0.0);
  result.policy.next_ckpt.assign(n, n);

  // redo_prefix[k] = sum of t_redo over steps 1..k.
  std::vector<double> redo_prefix(n + 1, 0.0);
  for (std::size_t k = 1; k <= n; ++k) {
    redo_prefix[k] = redo_prefix[k - 1] + plan.step(k).t_redo;
  }

  std::vector<double>& value = result.value;
  for (std::size_t i = n; i-- > 0;) {
    const double p_next = plan.step(i + 1).p_a;
    // Running sums over the error branches m = i+1..j. The redo span
    // sum_{k=m..j} t_redo splits into redo_prefix[j] - redo_prefix[m-1]; the
    // first part is factored out as redo_prefix[j] * error_mass.
    double survival = 1.0;
    double diagnose = 0.0;
    double error_mass = 0.0;
    double branch_sum = 0.0;
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_j = n;
    for (std::size_t j = i + 1; j <= n; ++j) {
      const StepModel& s = plan.step(j);
      diagnose += s.t_diagnose;
      const double q = survival * (1.0 - s.p_a);
      survival *= s.p_a;
      double branch = diagnose - redo_prefix[j - 1];
      if (include_correct_cost) branch += s.t_correct;
      if (j - 1 != i) branch += value[j - 1];
      branch_sum += q * branch;
      error_mass += q;

      const double a = s.t_confirm + survival * value[j] + branch_sum +
                       redo_prefix[j] * error_mass;
      const double v = a / p_next;
      result.t_table[i * (n + 1) + j] = v;
      if (v < best) {
        best = v;
        best_j = j;
      }
    }
    value[i] = best;
    result.policy.next_ckpt[i] = best_j;
  }
  return result;
}

std::vector<double> evaluate_policy(const TaskPlan& plan, const Policy& policy,
                                    bool include_correct_cost) {
  const std::size_t n = plan.size();
  validate_policy(policy, n);
  std::vector<double> value(n + 1, 0.0);
  for (std::size_t i = n; i-- > 0;) {
    const std::size_t j = policy.next_ckpt[i];
    value[i] = affine_part(plan, i, j, value, include_correct_cost) /
               plan.step(i + 1).p_a;
  }
  return value;
}

}  // namespace cdcr
