#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace isomlab {

struct ReportRecord {
  std::string check_id;
  std::string theorem_tag;  // T1i, T1ii, C2, T3, CK_i, CK_ii, S4_psi, S4_youla
  int n = 0;
  std::string spec;
  double value = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct ReportConfig {
  std::vector<int> n_values;
  std::vector<std::string> norms;
  int samples = 0;
  int restarts = 0;
  std::uint64_t seed = 0;
  std::map<std::string, double> tol;
};

struct ReportDocument {
  std::string suite;
  std::string version;
  ReportConfig config;
  std::vector<ReportRecord> records;
  bool pass = true;
  double wall_clock_ms = 0.0;
};

enum class ReportFormat { json, text };

/// Raised when a report cannot be written or read back.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

extern const std::vector<std::string> kTheoremTags;

/// JSON keys follow the field order above; doubles use 17 significant digits
/// and non-finite values are written as the strings "inf", "-inf", "nan".
std::string emit_report(const ReportDocument& doc, ReportFormat format);

/// Inverse of the JSON emitter. Throws IoError on malformed input.
ReportDocument parse_report(std::string_view json);

/// Writes to `path`, or to stdout when `path` is empty.
void write_report(const ReportDocument& doc, ReportFormat format, const std::string& path);

/// Field-wise equality with NaN equal to NaN; `with_clock` includes the
/// runtime field.
bool same_records(const ReportDocument& a, const ReportDocument& b);
bool same_document(const ReportDocument& a, const ReportDocument& b, bool with_clock);

}  // namespace isomlab
