#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "isomlab/report.hpp"

namespace isomlab {

enum class SuiteKind { invariance, dimension, decompose, skew, cnr, all };

const char* to_string(SuiteKind s);

/// Thrown for configurations that are rejected before any check runs.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

SuiteKind parse_suite(std::string_view name);

struct SuiteConfig {
  SuiteKind suite = SuiteKind::all;
  std::vector<int> n_values{2, 3, 4};
  /// Empty means schatten:1, schatten:3, frobenius. A cspec entry drives the
  /// skew suite; without one it uses cspec:1,0,... sized to n.
  std::vector<std::string> norms;
  int samples = 100;  // trials per randomized check
  int restarts = 8;
  std::uint64_t seed = 1;
  std::map<std::string, double> tol;  // overrides of default_tolerances()
  std::optional<std::string> output;
};

/// Tolerance keys accepted by --tol and their defaults.
const std::map<std::string, double>& default_tolerances();

std::vector<std::string> effective_norms(const SuiteConfig& config);

/// Throws ConfigError for n outside [2, 8], samples < 1, restarts < 1, an
/// unknown tolerance key or an unparsable norm.
void validate(const SuiteConfig& config);

/// Runs the selected suite. Numerical failures become failing records.
ReportDocument run_suite(const SuiteConfig& config);

const char* library_version();

}  // namespace isomlab
