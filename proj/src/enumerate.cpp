#include <string>

#include "cdcr/oracle.hpp"
#include "cdcr/solver.hpp"

namespace cdcr {

EnumerationResult enumerate_policies(const TaskPlan& plan,
                                     bool include_correct_cost,
                                     std::size_t cap) {
  const std::size_t n = plan.size();
  if (n > cap) {
    throw Error(ErrorCode::kPlanTooLarge,
                "enumeration over " + std::to_string(n) +
                    " steps exceeds the cap of " + std::to_string(cap));
  }

  // Odometer over next_ckpt[i] in i+1..n, lexicographic order; a candidate
  // replaces the incumbent only when strictly better.
  Policy candidate = every_step_policy(n);
  EnumerationResult result;
  bool have_best = false;
  while (true) {
    const double v = evaluate_policy(plan, candidate, include_correct_cost)[0];
    ++result.evaluated;
    if (!have_best || v < result.best_value) {
      result.best_value = v;
      result.best_policy = candidate;
      have_best = true;
    }

    std::size_t pos = n;
    while (pos > 0) {
      --pos;
      if (candidate.next_ckpt[pos] < n) {
        ++candidate.next_ckpt[pos];
        break;
      }
      candidate.next_ckpt[pos] = pos + 1;
      if (pos == 0) return result;
    }
  }
}

}  // namespace cdcr
