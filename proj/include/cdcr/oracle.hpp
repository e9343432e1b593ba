// Ground-truth machinery independent of the DP: a sampling simulator of the
// confirm / diagnose / correct / redo process and exhaustive policy search.

#ifndef CDCR_ORACLE_HPP_
#define CDCR_ORACLE_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <vector>

#include "cdcr/core.hpp"

namespace cdcr {

enum class EventKind { kExecute, kConfirm, kDiagnose, kCorrect, kRedo };

const char* to_string(EventKind kind);

struct Event {
  EventKind kind;
  std::size_t index;  // step for Execute/Correct/Redo, state otherwise
  double seconds;     // Execute events carry zero user time
  bool correct = true;  // Execute: sampled action outcome; Confirm: verdict

  friend bool operator==(const Event&, const Event&) = default;
};

struct SimTrace {
  std::vector<Event> events;
  double total_user_time = 0.0;
  std::size_t cycles = 0;  // rollbacks after a failed confirmation
};

// Decides whether the given (1-based) step executes correctly this time.
using OutcomeSource = std::function<bool(std::size_t step)>;

SimTrace simulate_run(const TaskPlan& plan, const Policy& policy,
                      std::uint64_t seed, bool include_correct_cost = false);

SimTrace simulate_with_outcomes(const TaskPlan& plan, const Policy& policy,
                                const OutcomeSource& outcomes,
                                bool include_correct_cost = false);

// The named step fails the first time it executes; everything else succeeds.
OutcomeSource single_failure_outcomes(std::size_t failing_step);

struct MonteCarloSummary {
  std::size_t runs = 0;
  double mean_time = 0.0;
  double std_error = 0.0;
  double ci95_low = 0.0;
  double ci95_high = 0.0;
  double mean_cycles = 0.0;

  friend bool operator==(const MonteCarloSummary&,
                         const MonteCarloSummary&) = default;
};

// Run r draws from its own stream derived from (seed, r); run 0 matches
// simulate_run(seed). threads == 0 picks the hardware concurrency. The
// result does not depend on the thread count.
MonteCarloSummary monte_carlo(const TaskPlan& plan, const Policy& policy,
                              std::size_t runs, std::uint64_t seed,
                              bool include_correct_cost = false,
                              unsigned threads = 0);

inline constexpr std::size_t kDefaultEnumerationCap = 8;

struct EnumerationResult {
  Policy best_policy;
  double best_value = 0.0;
  std::size_t evaluated = 0;
};

// Prices all N! forward policies with evaluate_policy and returns the one
// minimizing the value at state 0; ties go to the lexicographically smallest
// next_ckpt vector. Throws kPlanTooLarge when N > cap.
EnumerationResult enumerate_policies(const TaskPlan& plan,
                                     bool include_correct_cost = false,
                                     std::size_t cap = kDefaultEnumerationCap);

// One event per line: "<kind> <index> <seconds> <outcome>", seconds with six
// decimals, outcome "ok"/"fail" for execute and confirm events and "-" for
// the rest.
void write_trace(std::ostream& out, const SimTrace& trace);

}  // namespace cdcr

#endif  // CDCR_ORACLE_HPP_
