#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace qmcbox {

struct ReproduceOptions {
  std::filesystem::path out_dir = ".";
  /// Adds the N = 12 rows of the acceptance-rate table (and the N = 14 rows
  /// when the trial budget allows it).
  bool long_run = false;
  std::uint64_t trials = 100'000'000;
  std::uint64_t seed = 20240611;
  unsigned workers = 1;
};

/// One golden comparison. `tolerance` is absolute (already resolved from the
/// relative/statistical rule of the target).
struct GoldenCheck {
  std::string name;
  double measured = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::string note;
};

struct ReproduceSummary {
  std::string target;
  std::vector<GoldenCheck> checks;
  std::vector<std::string> outputs;   // files written
  std::vector<std::string> warnings;  // e.g. budget too small

  bool all_passed() const;
};

/// Trials needed so that three binomial sigmas stay below `rel_precision` of r.
std::uint64_t required_trials(double rate, double rel_precision);

/// Golden tolerance for a measured acceptance rate: max(3 sigma, rel * expected).
double rate_tolerance(double expected, double stderr_measured, double rel);

/// Targets: table1, table2, table3, fig1, fig4, fig5, fig6. Throws
/// std::invalid_argument for anything else.
ReproduceSummary reproduce(const std::string& target, const ReproduceOptions& options);

const std::vector<std::string>& reproduce_targets();

/// Human-readable pass/fail lines.
void print_summary(const ReproduceSummary& summary, std::ostream& out);

}  // namespace qmcbox
