#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>
#include <thread>

#include "cdcr/oracle.hpp"

namespace cdcr {

const char* to_string(EventKind kind) {
  switch (kind) {
    case EventKind::kExecute: return "execute";
    case EventKind::kConfirm: return "confirm";
    case EventKind::kDiagnose: return "diagnose";
    case EventKind::kCorrect: return "correct";
    case EventKind::kRedo: return "redo";
  }
  return "unknown";
}

namespace {

// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Per-run generator keyed on (seed, run). mt19937_64 is fully specified by
// the standard, so streams are identical across library vendors.
std::mt19937_64 run_stream(std::uint64_t seed, std::uint64_t run) {
  return std::mt19937_64(mix64(mix64(seed) ^ run));
}

// Uniform in [0, 1) from the top 53 bits.
double unit_draw(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

struct NullSink {
  void operator()(EventKind, std::size_t, double, bool) {}
};

struct TraceSink {
  std::vector<Event>* events;
  void operator()(EventKind kind, std::size_t index, double seconds,
                  bool correct) {
    events->push_back({kind, index, seconds, correct});
  }
};

struct RunTotals {
  double user_time = 0.0;
  std::size_t cycles = 0;
};

template <typename Outcome, typename Sink>
RunTotals run_process(const TaskPlan& plan, const Policy& policy,
                      Outcome&& outcome, Sink&& sink,
                      bool include_correct_cost) {
  const std::size_t n = plan.size();
  RunTotals totals;
  auto charge = [&](EventKind kind, std::size_t index, double seconds,
                    bool correct) {
    totals.user_time += seconds;
    sink(kind, index, seconds, correct);
  };

  std::size_t i = 0;
  while (i < n) {
    const std::size_t j = policy.next_ckpt[i];
    std::size_t first_failure = 0;
    for (std::size_t k = i + 1; k <= j; ++k) {
      const bool ok = outcome(k);
      sink(EventKind::kExecute, k, 0.0, ok);
      if (!ok && first_failure == 0) first_failure = k;
    }
    charge(EventKind::kConfirm, j, plan.step(j).t_confirm, first_failure == 0);
    if (first_failure == 0) {
      i = j;
      continue;
    }
    const std::size_t m = first_failure;
    for (std::size_t k = i + 1; k <= m; ++k) {
      charge(EventKind::kDiagnose, k, plan.step(k).t_diagnose, true);
    }
    if (include_correct_cost) {
      charge(EventKind::kCorrect, m, plan.step(m).t_correct, true);
    }
    for (std::size_t k = m; k <= j; ++k) {
      charge(EventKind::kRedo, k, plan.step(k).t_redo, true);
    }
    ++totals.cycles;
    i = m - 1;
  }
  return totals;
}

auto sampled_outcomes(const TaskPlan& plan, std::mt19937_64& gen) {
  return [&plan, &gen](std::size_t step) {
    return unit_draw(gen) < plan.step(step).p_a;
  };
}

// Pairwise summation: deterministic for a fixed input order and with error
// growth O(log n).
double pairwise_sum(const double* data, std::size_t count) {
  if (count <= 16) {
    double s = 0.0;
    for (std::size_t k = 0; k < count; ++k) s += data[k];
    return s;
  }
  const std::size_t half = count / 2;
  return pairwise_sum(data, half) + pairwise_sum(data + half, count - half);
}

}  // namespace

SimTrace simulate_run(const TaskPlan& plan, const Policy& policy,
                      std::uint64_t seed, bool include_correct_cost) {
  validate_policy(policy, plan.size());
  std::mt19937_64 gen = run_stream(seed, 0);
  SimTrace trace;
  const RunTotals totals =
      run_process(plan, policy, sampled_outcomes(plan, gen),
                  TraceSink{&trace.events}, include_correct_cost);
  trace.total_user_time = totals.user_time;
  trace.cycles = totals.cycles;
  return trace;
}

SimTrace simulate_with_outcomes(const TaskPlan& plan, const Policy& policy,
                                const OutcomeSource& outcomes,
                                bool include_correct_cost) {
  validate_policy(policy, plan.size());
  SimTrace trace;
  const RunTotals totals = run_process(plan, policy, outcomes,
                                       TraceSink{&trace.events},
                                       include_correct_cost);
  trace.total_user_time = totals.user_time;
  trace.cycles = totals.cycles;
  return trace;
}

OutcomeSource single_failure_outcomes(std::size_t failing_step) {
  return [failing_step, fired = false](std::size_t step) mutable {
    if (step == failing_step && !fired) {
      fired = true;
      return false;
    }
    return true;
  };
}

MonteCarloSummary monte_carlo(const TaskPlan& plan, const Policy& policy,
                              std::size_t runs, std::uint64_t seed,
                              bool include_correct_cost, unsigned threads) {
  validate_policy(policy, plan.size());
  if (runs == 0) {
    throw Error(ErrorCode::kIndexOutOfRange, "monte_carlo requires runs >= 1");
  }
  std::vector<double> times(runs);
  std::vector<double> cycles(runs);

  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t r = begin; r < end; ++r) {
      std::mt19937_64 gen = run_stream(seed, r);
      const RunTotals t = run_process(plan, policy, sampled_outcomes(plan, gen),
                                      NullSink{}, include_correct_cost);
      times[r] = t.user_time;
      cycles[r] = static_cast<double>(t.cycles);
    }
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(
      std::min<std::size_t>(threads, std::max<std::size_t>(1, runs / 1024)));
  if (threads <= 1) {
    work(0, runs);
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (runs + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      const std::size_t begin = std::min(runs, t * chunk);
      const std::size_t end = std::min(runs, begin + chunk);
      pool.emplace_back(work, begin, end);
    }
    for (std::thread& th : pool) th.join();
  }

  MonteCarloSummary summary;
  summary.runs = runs;
  const double count = static_cast<double>(runs);
  summary.mean_time = pairwise_sum(times.data(), runs) / count;
  summary.mean_cycles = pairwise_sum(cycles.data(), runs) / count;
  if (runs > 1) {
    for (double& t : times) {
      const double d = t - summary.mean_time;
      t = d * d;
    }
    const double variance = pairwise_sum(times.data(), runs) / (count - 1.0);
    summary.std_error = std::sqrt(variance / count);
  }
  constexpr double kZ95 = 1.959963984540054;
  summary.ci95_low = summary.mean_time - kZ95 * summary.std_error;
  summary.ci95_high = summary.mean_time + kZ95 * summary.std_error;
  return summary;
}

void write_trace(std::ostream& out, const SimTrace& trace) {
  char line[96];
  for (const Event& e : trace.events) {
    const char* outcome = "-";
    if (e.kind == EventKind::kExecute || e.kind == EventKind::kConfirm) {
      outcome = e.correct ? "ok" : "fail";
    }
    std::snprintf(line, sizeof line, "%s %zu %.6f %s\n", to_string(e.kind),
                  e.index, e.seconds, outcome);
    out << line;
  }
}

}  // namespace cdcr
