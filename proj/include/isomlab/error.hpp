#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace isomlab {

enum class ErrorCode {
  InvalidDimension,
  NotHermitian,
  NotTraceless,
  NotSkewSymmetric,
  NotUnitary,
  NotOrthogonal,
  NotSpecialOrthogonal,
  SpecMismatch,
  InvalidNormSpec,
  DegeneratePoint,
  SingularMap,
  NotIsometry,
  NotInClassifiedForm,
  RecoveryFailed,
  NotAdjointImage,
  InconclusiveDimension,
};

std::string_view to_string(ErrorCode code);

/// Library-wide exception. `value()` carries the numeric quantity that
/// tripped the check (a residual, a gap ratio) when one exists.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what, std::optional<double> value = std::nullopt)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code), value_(value) {}

  ErrorCode code() const noexcept { return code_; }
  std::optional<double> value() const noexcept { return value_; }

 private:
  ErrorCode code_;
  std::optional<double> value_;
};

}  // namespace isomlab
