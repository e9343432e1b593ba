// Expected-time table and optimal checkpoint policy.
//
// T[i,j] is the expected user time to finish the task from verified state i
// when the next confirmation happens at state j:
//
//   T[i,j] = t_confirm(j) + S(i,j) V[j]
//          + sum_{m=i+1..j} q(m) ( sum_{k=i+1..m} t_diagnose(k) + t_correct(m)
//                                + sum_{k=m..j} t_redo(k) + V[m-1] )
//
// with S the survival probability and q the first-error distribution. The
// m = i+1 branch rolls back to state i itself, so each row is a linear fixed
// point in V[i] with coefficient 1 - p_a(i+1); it is resolved exactly per
// candidate as v_j = a(i,j) / p_a(i+1).

#ifndef CDCR_SOLVER_HPP_
#define CDCR_SOLVER_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "cdcr/core.hpp"

namespace cdcr {

struct SolveResult {
  std::size_t n = 0;
  // Row-major n x (n+1); cell (i, j) is defined for i < j <= n, NaN otherwise.
  std::vector<double> t_table;
  // value[i] for i in 0..n, value[n] == 0.
  std::vector<double> value;
  Policy policy;
  bool include_correct_cost = false;

  bool has_cell(std::size_t i, std::size_t j) const noexcept {
    return i < n && j > i && j <= n;
  }
  // Throws kIndexOutOfRange for undefined cells.
  double cell(std::size_t i, std::size_t j) const;
};

// One evaluation of the interval formula. value[m] is read for m in i+1..j;
// value[i] is replaced by self_value. Requires value.size() == N + 1.
double interval_cost(const TaskPlan& plan, std::size_t i, std::size_t j,
                     std::span<const double> value, double self_value,
                     bool include_correct_cost);

// Backward DP, O(N^2). Ties go to the smallest j.
SolveResult solve(const TaskPlan& plan, bool include_correct_cost = false);

// Expected time-to-completion from every state under a fixed policy.
std::vector<double> evaluate_policy(const TaskPlan& plan, const Policy& policy,
                                    bool include_correct_cost = false);

}  // namespace cdcr

#endif  // CDCR_SOLVER_HPP_
