#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace formleb {

enum class ErrorCode {
  NotPsd,
  NotDominating,
  DimMismatch,
  InconsistentRank,
  NegativeReference,
  NotBelow,
  NotAbsolutelyContinuous,
  InvalidArgument,
};

/// Stable wire name of an error code (used by the CLI JSON output).
std::string_view error_code_name(ErrorCode code);

class FormError : public std::runtime_error {
public:
  FormError(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

}  // namespace formleb
