#include "sysalg/error.hpp"

namespace sysalg {

std::string_view code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDomainMismatch: return "DomainMismatch";
    case ErrorCode::kNoSupremum: return "NoSupremum";
    case ErrorCode::kNoInfimum: return "NoInfimum";
    case ErrorCode::kEnumerationTooLarge: return "EnumerationTooLarge";
    case ErrorCode::kLabelClash: return "LabelClash";
    case ErrorCode::kBoxNameClash: return "BoxNameClash";
    case ErrorCode::kNotConnectable: return "NotConnectable";
    case ErrorCode::kWitnessFailed: return "WitnessFailed";
    case ErrorCode::kNoFixedPoint: return "NoFixedPoint";
    case ErrorCode::kFuelExhausted: return "FuelExhausted";
    case ErrorCode::kSignatureMismatch: return "SignatureMismatch";
    case ErrorCode::kMalformedPairing: return "MalformedPairing";
    case ErrorCode::kNotWellOrdered: return "NotWellOrdered";
    case ErrorCode::kStepDivergence: return "StepDivergence";
    case ErrorCode::kNotAFunction: return "NotAFunction";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kValidationError: return "ValidationError";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(message), code_(code) {}

void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace sysalg
