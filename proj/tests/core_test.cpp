#include <gtest/gtest.h>

#include <random>

#include "cdcr/core.hpp"
#include "test_support.hpp"

namespace cdcr {
namespace {

TaskPlan fig4_plan() {
  std::vector<StepModel> steps;
  for (double p : {0.7, 0.7, 0.9, 0.85, 0.85}) steps.push_back({p, 1, 1, 1, 1});
  return TaskPlan(std::move(steps));
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no cdcr::Error thrown";
  return ErrorCode::kIoFailure;
}

TEST(ValidatePlanTest, AcceptsDeterministicZeroCostStep) {
  const TaskPlan plan = validate_plan({{1.0, 0, 0, 0, 0}});
  EXPECT_EQ(plan.size(), 1u);
  EXPECT_EQ(plan.step(1).p_a, 1.0);
}

TEST(ValidatePlanTest, AcceptsFigure4Plan) {
  EXPECT_EQ(fig4_plan().size(), 5u);
}

TEST(ValidatePlanTest, RejectsEmptyPlan) {
  EXPECT_EQ(code_of([] { validate_plan({}); }), ErrorCode::kEmptyPlan);
}

TEST(ValidatePlanTest, RejectsZeroProbabilityAtStepTwo) {
  try {
    validate_plan({{0.9, 1, 1, 1, 1}, {0.0, 1, 1, 1, 1}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidProbability);
    EXPECT_NE(std::string(e.what()).find("step 2"), std::string::npos);
  }
}

TEST(ValidatePlanTest, RejectsProbabilityAboveOneAndNaN) {
  EXPECT_EQ(code_of([] { validate_plan({{1.0000001, 0, 0, 0, 0}}); }),
            ErrorCode::kInvalidProbability);
  EXPECT_EQ(code_of([] { validate_plan({{std::nan(""), 0, 0, 0, 0}}); }),
            ErrorCode::kInvalidProbability);
}

TEST(ValidatePlanTest, RejectsNegativeOrNonFiniteCosts) {
  EXPECT_EQ(code_of([] { validate_plan({{0.5, -1, 0, 0, 0}}); }),
            ErrorCode::kNegativeCost);
  EXPECT_EQ(code_of([] { validate_plan({{0.5, 0, -0.1, 0, 0}}); }),
            ErrorCode::kNegativeCost);
  EXPECT_EQ(code_of([] { validate_plan({{0.5, 0, 0, -2, 0}}); }),
            ErrorCode::kNegativeCost);
  EXPECT_EQ(code_of([] { validate_plan({{0.5, 0, 0, 0, INFINITY}}); }),
            ErrorCode::kNegativeCost);
}

TEST(TaskPlanTest, UniformExpandsToPerStepValues) {
  const StepModel s{0.875, 8, 4, 10, 20};
  const TaskPlan plan = TaskPlan::uniform(12, s);
  EXPECT_EQ(plan.size(), 12u);
  EXPECT_TRUE(plan.is_uniform());
  for (std::size_t k = 1; k <= 12; ++k) EXPECT_EQ(plan.step(k), s);
  EXPECT_FALSE(fig4_plan().is_uniform());
  EXPECT_EQ(code_of([&] { plan.step(0); }), ErrorCode::kIndexOutOfRange);
  EXPECT_EQ(code_of([&] { plan.step(13); }), ErrorCode::kIndexOutOfRange);
}

TEST(SurvivalProbabilityTest, EmptyProductIsOne) {
  EXPECT_EQ(survival_probability(fig4_plan(), 3, 3), 1.0);
}

TEST(SurvivalProbabilityTest, Figure4Products) {
  const TaskPlan plan = fig4_plan();
  EXPECT_NEAR(survival_probability(plan, 0, 2), 0.49, 1e-15);
  EXPECT_NEAR(survival_probability(plan, 2, 5), 0.650250, 1e-15);
}

TEST(SurvivalProbabilityTest, RejectsBadIndices) {
  const TaskPlan plan = fig4_plan();
  EXPECT_EQ(code_of([&] { survival_probability(plan, 3, 2); }),
            ErrorCode::kIndexOutOfRange);
  EXPECT_EQ(code_of([&] { survival_probability(plan, 0, 6); }),
            ErrorCode::kIndexOutOfRange);
}

TEST(FirstErrorDistributionTest, Figure4FirstTwoSteps) {
  const auto q = first_error_distribution(fig4_plan(), 0, 2);
  ASSERT_EQ(q.size(), 2u);
  EXPECT_EQ(q[0].state, 1u);
  EXPECT_NEAR(q[0].probability, 0.30, 1e-15);
  EXPECT_EQ(q[1].state, 2u);
  EXPECT_NEAR(q[1].probability, 0.21, 1e-15);
}

TEST(FirstErrorDistributionTest, DeterministicPlanHasNoErrors) {
  const TaskPlan plan = TaskPlan::uniform(7, {1.0, 1, 1, 1, 1});
  for (std::size_t i = 0; i < 7; ++i) {
    for (std::size_t j = i + 1; j <= 7; ++j) {
      for (const FirstError& e : first_error_distribution(plan, i, j)) {
        EXPECT_EQ(e.probability, 0.0);
      }
    }
  }
}

TEST(FirstErrorDistributionTest, Figure4WholeIntervalSumsToFailureMass) {
  const TaskPlan plan = fig4_plan();
  // Brute force: enumerate all 2^5 outcome vectors and accumulate the mass of
  // those with at least one failure.
  double failure_mass = 0.0;
  for (unsigned mask = 0; mask < 32; ++mask) {
    double prob = 1.0;
    for (std::size_t k = 1; k <= 5; ++k) {
      const bool ok = mask & (1u << (k - 1));
      prob *= ok ? plan.step(k).p_a : 1.0 - plan.step(k).p_a;
    }
    if (mask != 31) failure_mass += prob;
  }
  double sum = 0.0;
  for (const FirstError& e : first_error_distribution(plan, 0, 5)) {
    sum += e.probability;
  }
  EXPECT_NEAR(sum, failure_mass, 1e-15);
  EXPECT_NEAR(sum, 1.0 - survival_probability(plan, 0, 5), 1e-15);
}

TEST(FirstErrorDistributionTest, RejectsEmptyInterval) {
  EXPECT_EQ(code_of([] { first_error_distribution(fig4_plan(), 2, 2); }),
            ErrorCode::kIndexOutOfRange);
}

TEST(KernelPropertyTest, NormalizationMonotonicityAndChaining) {
  std::mt19937_64 gen(7);
  testing::PlanRanges ranges;
  ranges.min_n = 1;
  ranges.max_n = 40;
  ranges.min_p = 0.01;
  for (int trial = 0; trial < 300; ++trial) {
    const TaskPlan plan = testing::random_plan(gen, ranges);
    const std::size_t n = plan.size();
    for (std::size_t i = 0; i < n; ++i) {
      double previous = 1.0;
      for (std::size_t j = i + 1; j <= n; ++j) {
        double sum = survival_probability(plan, i, j);
        EXPECT_LE(sum, previous);
        previous = sum;
        for (const FirstError& e : first_error_distribution(plan, i, j)) {
          sum += e.probability;
        }
        EXPECT_NEAR(sum, 1.0, 1e-12);
      }
    }
    std::uniform_int_distribution<std::size_t> idx(0, n);
    std::size_t a = idx(gen), b = idx(gen), c = idx(gen);
    if (a > b) std::swap(a, b);
    if (b > c) std::swap(b, c);
    if (a > b) std::swap(a, b);
    EXPECT_NEAR(survival_probability(plan, a, c),
                survival_probability(plan, a, b) * survival_probability(plan, b, c),
                1e-14);
  }
}

TEST(PolicyTest, Baselines) {
  EXPECT_EQ(end_only_policy(3).next_ckpt, (std::vector<std::size_t>{3, 3, 3}));
  EXPECT_EQ(every_step_policy(3).next_ckpt, (std::vector<std::size_t>{1, 2, 3}));
  EXPECT_EQ(success_path(end_only_policy(4)), (std::vector<std::size_t>{4}));
  EXPECT_EQ(success_path(Policy{{2, 3, 5, 5, 5}}),
            (std::vector<std::size_t>{2, 5}));
}

TEST(PolicyTest, ValidationRejectsNonForwardOrPartialMaps) {
  EXPECT_NO_THROW(validate_policy(Policy{{2, 3, 5, 5, 5}}, 5));
  EXPECT_EQ(code_of([] { validate_policy(Policy{{2, 3, 5, 5}}, 5); }),
            ErrorCode::kInvalidPolicy);
  EXPECT_EQ(code_of([] { validate_policy(Policy{{2, 1, 5, 5, 5}}, 5); }),
            ErrorCode::kInvalidPolicy);
  EXPECT_EQ(code_of([] { validate_policy(Policy{{2, 3, 5, 5, 6}}, 5); }),
            ErrorCode::kInvalidPolicy);
  EXPECT_EQ(code_of([] { validate_policy(Policy{{0, 3, 5, 5, 5}}, 5); }),
            ErrorCode::kInvalidPolicy);
}

TEST(PolicyTest, ReachableStatesFollowRollbacks) {
  const TaskPlan plan = fig4_plan();
  // 0 -> 2 -> 5; errors roll back to 0, 1 (from the first interval) and to
  // 2, 3, 4 (from the second).
  const auto reach = reachable_states(plan, Policy{{2, 3, 5, 5, 5}});
  EXPECT_EQ(reach, (std::vector<bool>{true, true, true, true, true, true}));

  const TaskPlan sure = TaskPlan::uniform(4, {1.0, 1, 1, 1, 1});
  const auto sure_reach = reachable_states(sure, Policy{{2, 3, 4, 4}});
  EXPECT_EQ(sure_reach, (std::vector<bool>{true, false, true, false, true}));
}

}  // namespace
}  // namespace cdcr
