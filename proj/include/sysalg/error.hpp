#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sysalg {

enum class ErrorCode {
  kDomainMismatch,
  kNoSupremum,
  kNoInfimum,
  kEnumerationTooLarge,
  kLabelClash,
  kBoxNameClash,
  kNotConnectable,
  kWitnessFailed,
  kNoFixedPoint,
  kFuelExhausted,
  kSignatureMismatch,
  kMalformedPairing,
  kNotWellOrdered,
  kStepDivergence,
  kNotAFunction,
  kParseError,
  kValidationError,
  kIoError,
  kInvalidArgument,
};

// Stable name used as the machine-parsable prefix of CLI error lines.
std::string_view code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

}  // namespace sysalg
