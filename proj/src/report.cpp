#include <cstdio>
#include <ostream>
#include <string>

#include "cdcr/scenario.hpp"

namespace cdcr {

const char* const kHumanStudyDisclaimer =
    "Model prices only. Human-study completion times and preference rates "
    "are participant measurements and are not reproduced here; assumed "
    "parameters are tagged in the scenario provenance.";

std::string format_sig6(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", value);
  return buf;
}

namespace {

std::string join(const std::vector<std::size_t>& items) {
  std::string out;
  for (std::size_t k = 0; k < items.size(); ++k) {
    if (k) out += ' ';
    out += std::to_string(items[k]);
  }
  return out;
}

}  // namespace

void write_comparison_csv(std::ostream& out, const ComparisonReport& report) {
  out << "strategy,expected_time,mc_mean,mc_std_error,mc_ci95_low,"
         "mc_ci95_high,checkpoints,success_path\n";
  for (const StrategyRow& r : report.rows) {
    out << r.strategy << ',' << format_sig6(r.expected_time) << ','
        << format_sig6(r.mc_mean) << ',' << format_sig6(r.mc_std_error) << ','
        << format_sig6(r.mc_ci95_low) << ',' << format_sig6(r.mc_ci95_high)
        << ',' << r.checkpoints << ',' << join(success_path(r.policy)) << '\n';
  }
}

void write_comparison_summary(std::ostream& out,
                              const ComparisonReport& report) {
  out << "scenario: " << report.scenario
      << (report.include_correct_cost ? " (correction time included)"
                                      : " (correction time dropped)")
      << '\n';
  char line[256];
  for (const StrategyRow& r : report.rows) {
    std::snprintf(line, sizeof line,
                  "  %-10s expected %10s s   simulated %10s s (95%% CI %s..%s)"
                  "   %zu checkpoint(s)\n",
                  r.strategy.c_str(), format_sig6(r.expected_time).c_str(),
                  format_sig6(r.mc_mean).c_str(),
                  format_sig6(r.mc_ci95_low).c_str(),
                  format_sig6(r.mc_ci95_high).c_str(), r.checkpoints);
    out << line;
  }
  out << "  reduction vs end-only: "
      << format_sig6(100.0 * report.reduction_vs_end) << "%\n";
  out << "note: " << kHumanStudyDisclaimer << '\n';
}

void write_sweep_csv(std::ostream& out, SweepAxis axis,
                     const std::vector<SweepRow>& rows) {
  out << to_string(axis)
      << ",v_opt,v_end,v_every,optimal_checkpoints,optimal_path\n";
  for (const SweepRow& r : rows) {
    out << format_sig6(r.value) << ',' << format_sig6(r.v_opt) << ','
        << format_sig6(r.v_end) << ',' << format_sig6(r.v_every) << ','
        << r.optimal_checkpoints.size() << ',' << join(r.optimal_checkpoints)
        << '\n';
  }
}

void write_error_location_csv(std::ostream& out,
                              const std::vector<ErrorLocationRow>& rows) {
  out << "location,step,optimal_time,end_only_time,relative_change\n";
  for (const ErrorLocationRow& r : rows) {
    const double change = r.end_only_time > 0.0
                              ? (r.optimal_time - r.end_only_time) / r.end_only_time
                              : 0.0;
    out << to_string(r.location) << ',' << r.step << ','
        << format_sig6(r.optimal_time) << ',' << format_sig6(r.end_only_time)
        << ',' << format_sig6(change) << '\n';
  }
}

}  // namespace cdcr
