#pragma once

#include <stdexcept>
#include <string>

namespace qprob {

enum class ErrorCode {
  InvalidArgument,
  EvenResolution,
  ResolutionOutOfRange,
  EmptyMask,
  ParseError,
  NegativeInput,
  CommonZero,
  NotDominated,
  PartitionTooCoarse,
  NotDisjoint,
  NotIncreasing,
  NotMonotone,
  NotSandwiched,
  NonMonotoneMeasure,
  ToleranceNotReached,
  BudgetExceeded,
  BadFormat,
};

const char* error_code_name(ErrorCode code);

/// All precondition and runtime failures in the library throw this type.
/// The C interface translates it into status codes at the boundary.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

}  // namespace qprob
