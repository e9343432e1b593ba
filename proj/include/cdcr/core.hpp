// Domain types and probability kernels for confirmation scheduling.
//
// A plan has N agent steps. States run 0..N: state 0 is the verified start,
// step k moves the process from state k-1 to state k, and the user must
// confirm state N before the task is done. All per-step quantities of step k
// (its success probability and the four user/agent time costs) live in one
// StepModel, so t_confirm of state k is step(k).t_confirm.

#ifndef CDCR_CORE_HPP_
#define CDCR_CORE_HPP_

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace cdcr {

enum class ErrorCode {
  kEmptyPlan,
  kInvalidProbability,
  kNegativeCost,
  kIndexOutOfRange,
  kInvalidPolicy,
  kPlanTooLarge,
  kInvalidSweepValue,
  kInvalidConfig,
  kIoFailure,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

struct StepModel {
  double p_a = 1.0;         // probability the agent executes the step correctly
  double t_confirm = 0.0;   // user confirms the state reached by this step
  double t_diagnose = 0.0;  // user inspects this single state while diagnosing
  double t_correct = 0.0;   // user explains the fix for this step
  double t_redo = 0.0;      // agent re-executes this step

  friend bool operator==(const StepModel&, const StepModel&) = default;
};

// Validated, immutable N-step plan. The only way to obtain one is through
// validate_plan() (or the constructors, which call it).
class TaskPlan {
 public:
  explicit TaskPlan(std::vector<StepModel> steps);

  static TaskPlan uniform(std::size_t n, const StepModel& step);

  std::size_t size() const noexcept { return steps_.size(); }

  // 1-based: step(k) moves state k-1 to state k.
  const StepModel& step(std::size_t k) const;

  std::span<const StepModel> steps() const noexcept { return steps_; }

  bool is_uniform() const noexcept;

  friend bool operator==(const TaskPlan&, const TaskPlan&) = default;

 private:
  std::vector<StepModel> steps_;
};

// Throws Error{kEmptyPlan | kInvalidProbability | kNegativeCost}.
TaskPlan validate_plan(std::vector<StepModel> steps);

// Product of p_a over steps i+1..j. Requires 0 <= i <= j <= N.
double survival_probability(const TaskPlan& plan, std::size_t i, std::size_t j);

struct FirstError {
  std::size_t state;
  double probability;
};

// Probability that the first incorrect state after verified state i is m,
// for m in i+1..j. Requires 0 <= i < j <= N.
std::vector<FirstError> first_error_distribution(const TaskPlan& plan,
                                                 std::size_t i, std::size_t j);

// next_ckpt[i] is the state confirmed next after state i has been verified.
struct Policy {
  std::vector<std::size_t> next_ckpt;

  friend bool operator==(const Policy&, const Policy&) = default;
};

// Throws Error{kInvalidPolicy} unless the policy is total over 0..n-1 and
// strictly forward without passing n.
void validate_policy(const Policy& policy, std::size_t n);

Policy end_only_policy(std::size_t n);
Policy every_step_policy(std::size_t n);

// Checkpoints visited when every confirmation succeeds: 0 -> ... -> N,
// excluding the start state.
std::vector<std::size_t> success_path(const Policy& policy);

// Verified states that can occur when starting from 0 under the policy. An
// error at step m (possible iff p_a < 1) rolls the process back to m-1.
std::vector<bool> reachable_states(const TaskPlan& plan, const Policy& policy);

}  // namespace cdcr

#endif  // CDCR_CORE_HPP_
