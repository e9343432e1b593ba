#include "cdcr/cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cdcr/core.hpp"
#include "cdcr/oracle.hpp"
#include "cdcr/scenario.hpp"
#include "cdcr/solver.hpp"

namespace cdcr::cli {

namespace {

struct Options {
  std::string command;
  std::string input;
  std::uint64_t seed = kDefaultSeed;
  std::size_t runs = 0;
  bool runs_given = false;
  bool with_correct_cost = false;
  std::string out_path;
  std::string axis;
  std::string values;
  std::string policy = "optimal";
  std::string locations = "early,mid,late";
  int precision = 2;
};

ExitCode exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kEmptyPlan:
    case ErrorCode::kInvalidProbability:
    case ErrorCode::kNegativeCost:
    case ErrorCode::kInvalidConfig:
      return kInvalidConfig;
    case ErrorCode::kPlanTooLarge:
      return kPlanTooLarge;
    case ErrorCode::kIoFailure:
      return kIoFailure;
    case ErrorCode::kIndexOutOfRange:
    case ErrorCode::kInvalidPolicy:
    case ErrorCode::kInvalidSweepValue:
      return kBadInvocation;
  }
  return kInternalError;
}

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

UsageError bad_invocation(const std::string& msg) { return UsageError(msg); }

std::vector<std::string> split_csv(const std::string& text) {
  std::vector<std::string> items;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    items.push_back(b == std::string::npos ? "" : item.substr(b, e - b + 1));
  }
  return items;
}

double parse_double(const std::string& s, const char* what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw bad_invocation(std::string(what) + ": '" + s + "' is not a number");
}

Scenario resolve_input(const std::string& input, std::ostream& err) {
  if (auto builtin = find_builtin(input)) {
    std::error_code ec;
    if (std::filesystem::exists(input, ec)) {
      err << "warning: '" << input
          << "' names a builtin scenario and a file; using the builtin\n";
    }
    return *builtin;
  }
  return load_scenario(input);
}

Policy resolve_policy(const std::string& choice, const TaskPlan& plan,
                      bool with_correct_cost) {
  const std::size_t n = plan.size();
  if (choice == "optimal") return solve(plan, with_correct_cost).policy;
  if (choice == "end") return end_only_policy(n);
  if (choice == "every") return every_step_policy(n);
  Policy policy;
  for (const std::string& item : split_csv(choice)) {
    const double v = parse_double(item, "--policy");
    if (v < 0 || v != static_cast<double>(static_cast<std::size_t>(v))) {
      throw bad_invocation("--policy: '" + item + "' is not a state index");
    }
    policy.next_ckpt.push_back(static_cast<std::size_t>(v));
  }
  validate_policy(policy, n);
  return policy;
}

std::size_t enumeration_cap() {
  const char* env = std::getenv(kEnumerationCapEnv);
  if (env == nullptr || *env == '\0') return kDefaultEnumerationCap;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (*end != '\0') {
    throw bad_invocation(std::string(kEnumerationCapEnv) + "='" + env +
                         "' is not a non-negative integer");
  }
  return static_cast<std::size_t>(v);
}

std::string fixed(double v, int precision) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(precision) << v;
  return s.str();
}

std::string header(const Scenario& sc, bool with_correct_cost) {
  return "# " + sc.name + ": N=" + std::to_string(sc.plan.size()) +
         (with_correct_cost ? ", correction time included"
                            : ", correction time dropped") +
         "\n";
}

void cmd_solve(const Options& o, const Scenario& sc, std::ostream& out) {
  const SolveResult r = solve(sc.plan, o.with_correct_cost);
  const std::size_t n = r.n;
  const int width = std::max(8, o.precision + 6);

  out << header(sc, o.with_correct_cost);
  out << "# T[i,j]: row = verified start state i, column = checkpoint j, "
         "* = next_ckpt[i]\n";
  out << std::setw(6) << "start" << " |";
  for (std::size_t j = 1; j <= n; ++j) out << std::setw(width) << j << ' ';
  out << '\n';
  for (std::size_t i = 0; i < n; ++i) {
    out << std::setw(6) << i << " |";
    for (std::size_t j = 1; j <= n; ++j) {
      if (!r.has_cell(i, j)) {
        out << std::setw(width) << '-' << ' ';
        continue;
      }
      out << std::setw(width) << fixed(r.cell(i, j), o.precision)
          << (r.policy.next_ckpt[i] == j ? '*' : ' ');
    }
    out << '\n';
  }
  out << "V:";
  for (double v : r.value) out << ' ' << fixed(v, o.precision);
  out << "\nnext_ckpt:";
  for (std::size_t i = 0; i < n; ++i) {
    out << ' ' << i << "->" << r.policy.next_ckpt[i];
  }
  out << "\ncheckpoints from 0:";
  for (std::size_t s : success_path(r.policy)) out << ' ' << s;
  out << '\n';
}

void cmd_eval(const Options& o, const Scenario& sc, std::ostream& out) {
  const Policy policy = resolve_policy(o.policy, sc.plan, o.with_correct_cost);
  const std::vector<double> v =
      evaluate_policy(sc.plan, policy, o.with_correct_cost);
  out << header(sc, o.with_correct_cost);
  out << "policy:";
  for (std::size_t i = 0; i < policy.next_ckpt.size(); ++i) {
    out << ' ' << i << "->" << policy.next_ckpt[i];
  }
  out << "\nV:";
  for (double x : v) out << ' ' << fixed(x, o.precision);
  out << '\n';
  if (o.runs > 0) {
    const MonteCarloSummary mc = monte_carlo(sc.plan, policy, o.runs, o.seed,
                                             o.with_correct_cost);
    out << "monte_carlo: runs=" << mc.runs << " seed=" << o.seed
        << " mean=" << format_sig6(mc.mean_time)
        << " std_error=" << format_sig6(mc.std_error) << " ci95=["
        << format_sig6(mc.ci95_low) << ", " << format_sig6(mc.ci95_high)
        << "] mean_cycles=" << format_sig6(mc.mean_cycles) << '\n';
  }
}

void cmd_simulate(const Options& o, const Scenario& sc, std::ostream& out) {
  const Policy policy = resolve_policy(o.policy, sc.plan, o.with_correct_cost);
  const std::size_t runs = o.runs_given ? o.runs : 1;
  if (runs == 0) throw bad_invocation("--runs must be >= 1");
  if (runs == 1) {
    const SimTrace trace =
        simulate_run(sc.plan, policy, o.seed, o.with_correct_cost);
    write_trace(out, trace);
    char line[96];
    std::snprintf(line, sizeof line, "# total_user_time %.6f cycles %zu\n",
                  trace.total_user_time, trace.cycles);
    out << line;
    return;
  }
  const MonteCarloSummary mc =
      monte_carlo(sc.plan, policy, runs, o.seed, o.with_correct_cost);
  out << "runs,seed,mean_time,std_error,ci95_low,ci95_high,mean_cycles\n"
      << mc.runs << ',' << o.seed << ',' << format_sig6(mc.mean_time) << ','
      << format_sig6(mc.std_error) << ',' << format_sig6(mc.ci95_low) << ','
      << format_sig6(mc.ci95_high) << ',' << format_sig6(mc.mean_cycles)
      << '\n';
}

void cmd_enumerate(const Options& o, const Scenario& sc, std::ostream& out) {
  const EnumerationResult r =
      enumerate_policies(sc.plan, o.with_correct_cost, enumeration_cap());
  out << header(sc, o.with_correct_cost);
  out << "evaluated: " << r.evaluated << "\nbest_value: "
      << fixed(r.best_value, o.precision) << "\nbest_policy:";
  for (std::size_t i = 0; i < r.best_policy.next_ckpt.size(); ++i) {
    out << ' ' << i << "->" << r.best_policy.next_ckpt[i];
  }
  out << '\n';
}

void cmd_compare(const Options& o, const Scenario& sc, std::ostream& out,
                 std::ostream& summary) {
  const std::size_t runs = o.runs_given ? o.runs : 100000;
  if (runs == 0) throw bad_invocation("--runs must be >= 1");
  const ComparisonReport report =
      compare_strategies(sc, runs, o.seed, o.with_correct_cost);
  write_comparison_csv(out, report);
  if (&out == &summary) summary << '\n';
  write_comparison_summary(summary, report);
}

void cmd_sweep(const Options& o, const Scenario& sc, std::ostream& out) {
  const auto axis = parse_sweep_axis(o.axis);
  if (!axis) {
    throw bad_invocation("--axis must be one of p_a, t_confirm, t_diagnose, "
                         "t_redo, n; got '" + o.axis + "'");
  }
  if (o.values.empty()) throw bad_invocation("--values is required for sweep");
  std::vector<double> values;
  for (const std::string& s : split_csv(o.values)) {
    values.push_back(parse_double(s, "--values"));
  }
  write_sweep_csv(out, *axis, sweep(sc, *axis, values, o.with_correct_cost));
}

void cmd_error_loc(const Options& o, const Scenario& sc, std::ostream& out) {
  std::vector<ErrorLocation> locations;
  for (const std::string& s : split_csv(o.locations)) {
    const auto loc = parse_error_location(s);
    if (!loc) {
      throw bad_invocation("--locations: '" + s +
                           "' is not one of none, early, mid, late");
    }
    locations.push_back(*loc);
  }
  write_error_location_csv(out, error_location_experiment(sc, locations));
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Confirmation scheduling solver and simulator", "cdcr"};
  app.fallthrough();
  app.require_subcommand(1, 1);

  Options o;
  app.add_option("--seed", o.seed, "Master RNG seed")->capture_default_str();
  CLI::Option* runs_opt =
      app.add_option("--runs", o.runs,
                     "Monte-Carlo runs (simulate: 1 prints a trace; "
                     "compare: default 100000; eval: default 0 = none)");
  app.add_flag("--with-correct-cost", o.with_correct_cost,
               "Charge correction time in the DP and the simulation");
  app.add_option("--out", o.out_path, "Write the report to this file");
  app.add_option("--axis", o.axis,
                 "Sweep axis: p_a, t_confirm, t_diagnose, t_redo, n");
  app.add_option("--values", o.values, "Comma-separated sweep values");
  app.add_option("--precision", o.precision,
                 "Digits after the decimal point in solve/eval/enumerate")
      ->check(CLI::Range(0, 17))
      ->capture_default_str();
  app.add_option("--policy", o.policy,
                 "optimal, end, every or a comma-separated next_ckpt list")
      ->capture_default_str();
  app.add_option("--locations", o.locations,
                 "Forced error locations for error-loc: none,early,mid,late")
      ->capture_default_str();

  const char* commands[][2] = {
      {"solve", "Solve for the optimal checkpoint policy and print the table"},
      {"eval", "Price a fixed policy analytically (and by simulation with --runs)"},
      {"simulate", "Sample one trace, or a Monte-Carlo summary with --runs > 1"},
      {"enumerate", "Brute-force search over every forward policy"},
      {"compare", "Compare optimal, end-only and every-step strategies"},
      {"sweep", "Solve across values of one parameter"},
      {"error-loc", "Forced single-error experiment at early/mid/late steps"},
  };
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("input", o.input,
                    "Builtin scenario (fig4, shopping, image-editing, "
                    "overcooked) or a JSON scenario file")
        ->required();
    sub->final_callback([&o, cmd = std::string(name)] { o.command = cmd; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kBadInvocation;
  }
  o.runs_given = runs_opt->count() > 0;

  try {
    const Scenario sc = resolve_input(o.input, err);
    std::ostringstream buffer;
    std::ostream& sink = o.out_path.empty() ? out : buffer;
    std::ostream& summary = out;

    if (o.command == "solve") cmd_solve(o, sc, sink);
    else if (o.command == "eval") cmd_eval(o, sc, sink);
    else if (o.command == "simulate") cmd_simulate(o, sc, sink);
    else if (o.command == "enumerate") cmd_enumerate(o, sc, sink);
    else if (o.command == "compare") cmd_compare(o, sc, sink, summary);
    else if (o.command == "sweep") cmd_sweep(o, sc, sink);
    else if (o.command == "error-loc") cmd_error_loc(o, sc, sink);

    if (!o.out_path.empty()) {
      std::ofstream file(o.out_path, std::ios::binary | std::ios::trunc);
      file << buffer.str();
      file.close();
      if (!file) {
        throw Error(ErrorCode::kIoFailure,
                    "cannot write '" + o.out_path + "'");
      }
    }
    return kOk;
  } catch (const Error& e) {
    err << "error (" << to_string(e.code()) << "): " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kBadInvocation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInternalError;
  }
}

}  // namespace cdcr::cli
