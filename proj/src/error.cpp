#include "qprob/error.hpp"

namespace qprob {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::EvenResolution: return "EvenResolution";
    case ErrorCode::ResolutionOutOfRange: return "ResolutionOutOfRange";
    case ErrorCode::EmptyMask: return "EmptyMask";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NegativeInput: return "NegativeInput";
    case ErrorCode::CommonZero: return "CommonZero";
    case ErrorCode::NotDominated: return "NotDominated";
    case ErrorCode::PartitionTooCoarse: return "PartitionTooCoarse";
    case ErrorCode::NotDisjoint: return "NotDisjoint";
    case ErrorCode::NotIncreasing: return "NotIncreasing";
    case ErrorCode::NotMonotone: return "NotMonotone";
    case ErrorCode::NotSandwiched: return "NotSandwiched";
    case ErrorCode::NonMonotoneMeasure: return "NonMonotoneMeasure";
    case ErrorCode::ToleranceNotReached: return "ToleranceNotReached";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::BadFormat: return "BadFormat";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
      code_(code) {}

void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace qprob
