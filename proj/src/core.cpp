#include "cdcr/core.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace cdcr {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kEmptyPlan: return "EmptyPlan";
    case ErrorCode::kInvalidProbability: return "InvalidProbability";
    case ErrorCode::kNegativeCost: return "NegativeCost";
    case ErrorCode::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::kInvalidPolicy: return "InvalidPolicy";
    case ErrorCode::kPlanTooLarge: return "PlanTooLarge";
    case ErrorCode::kInvalidSweepValue: return "InvalidSweepValue";
    case ErrorCode::kInvalidConfig: return "InvalidConfig";
    case ErrorCode::kIoFailure: return "IoFailure";
  }
  return "Unknown";
}

namespace {

void check_cost(double value, const char* field, std::size_t k) {
  if (!std::isfinite(value) || value < 0.0) {
    throw Error(ErrorCode::kNegativeCost,
                "step " + std::to_string(k) + ": " + field +
                    " must be finite and >= 0, got " + std::to_string(value));
  }
}

}  // namespace

TaskPlan validate_plan(std::vector<StepModel> steps) {
  return TaskPlan(std::move(steps));
}

TaskPlan::TaskPlan(std::vector<StepModel> steps) : steps_(std::move(steps)) {
  if (steps_.empty()) {
    throw Error(ErrorCode::kEmptyPlan, "plan must contain at least one step");
  }
  for (std::size_t k = 1; k <= steps_.size(); ++k) {
    const StepModel& s = steps_[k - 1];
    // NaN fails both comparisons.
    if (!(s.p_a > 0.0 && s.p_a <= 1.0)) {
      throw Error(ErrorCode::kInvalidProbability,
                  "step " + std::to_string(k) + ": p_a must be in (0, 1], got " +
                      std::to_string(s.p_a));
    }
    check_cost(s.t_confirm, "t_confirm", k);
    check_cost(s.t_diagnose, "t_diagnose", k);
    check_cost(s.t_correct, "t_correct", k);
    check_cost(s.t_redo, "t_redo", k);
  }
}

TaskPlan TaskPlan::uniform(std::size_t n, const StepModel& step) {
  return TaskPlan(std::vector<StepModel>(n, step));
}

const StepModel& TaskPlan::step(std::size_t k) const {
  if (k == 0 || k > steps_.size()) {
    throw Error(ErrorCode::kIndexOutOfRange,
                "step index " + std::to_string(k) + " outside 1.." +
                    std::to_string(steps_.size()));
  }
  return steps_[k - 1];
}

bool TaskPlan::is_uniform() const noexcept {
  for (const StepModel& s : steps_) {
    if (!(s == steps_.front())) return false;
  }
  return true;
}

double survival_probability(const TaskPlan& plan, std::size_t i, std::size_t j) {
  if (i > j || j > plan.size()) {
    throw Error(ErrorCode::kIndexOutOfRange,
                "survival_probability requires 0 <= i <= j <= N, got i=" +
                    std::to_string(i) + " j=" + std::to_string(j));
  }
  double product = 1.0;
  for (std::size_t m = i + 1; m <= j; ++m) product *= plan.step(m).p_a;
  return product;
}

std::vector<FirstError> first_error_distribution(const TaskPlan& plan,
                                                 std::size_t i, std::size_t j) {
  if (i >= j || j > plan.size()) {
    throw Error(ErrorCode::kIndexOutOfRange,
                "first_error_distribution requires 0 <= i < j <= N, got i=" +
                    std::to_string(i) + " j=" + std::to_string(j));
  }
  std::vector<FirstError> out;
  out.reserve(j - i);
  double prefix = 1.0;
  for (std::size_t m = i + 1; m <= j; ++m) {
    const double p = plan.step(m).p_a;
    out.push_back({m, prefix * (1.0 - p)});
    prefix *= p;
  }
  return out;
}

void validate_policy(const Policy& policy, std::size_t n) {
  if (policy.next_ckpt.size() != n) {
    throw Error(ErrorCode::kInvalidPolicy,
                "policy has " + std::to_string(policy.next_ckpt.size()) +
                    " entries, plan needs " + std::to_string(n));
  }
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = policy.next_ckpt[i];
    if (j <= i || j > n) {
      throw Error(ErrorCode::kInvalidPolicy,
                  "next_ckpt[" + std::to_string(i) + "] = " + std::to_string(j) +
                      " is not in " + std::to_string(i + 1) + ".." +
                      std::to_string(n));
    }
  }
}

Policy end_only_policy(std::size_t n) {
  return Policy{std::vector<std::size_t>(n, n)};
}

Policy every_step_policy(std::size_t n) {
  Policy policy;
  policy.next_ckpt.reserve(n);
  for (std::size_t i = 0; i < n; ++i) policy.next_ckpt.push_back(i + 1);
  return policy;
}

std::vector<std::size_t> success_path(const Policy& policy) {
  std::vector<std::size_t> path;
  const std::size_t n = policy.next_ckpt.size();
  std::size_t i = 0;
  while (i < n) {
    i = policy.next_ckpt[i];
    path.push_back(i);
  }
  return path;
}

std::vector<bool> reachable_states(const TaskPlan& plan, const Policy& policy) {
  const std::size_t n = plan.size();
  validate_policy(policy, n);
  std::vector<bool> seen(n + 1, false);
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  while (!stack.empty()) {
    const std::size_t i = stack.back();
    stack.pop_back();
    if (i == n) continue;
    const std::size_t j = policy.next_ckpt[i];
    auto visit = [&](std::size_t s) {
      if (!seen[s]) {
        seen[s] = true;
        stack.push_back(s);
      }
    };
    visit(j);
    for (std::size_t m = i + 1; m <= j; ++m) {
      if (plan.step(m).p_a < 1.0) visit(m - 1);
    }
  }
  return seen;
}

}  // namespace cdcr
