#pragma once

#include <stdexcept>
#include <string>

namespace blaschke {

// Error conditions that callers are expected to branch on.  The CLI maps
// these onto exit codes, the solvers use them to detect leaving the
// admissible parameter region.
enum class ErrorCode {
  NotMultimodal,       // F' does not have exactly 2m sign changes per period
  DegenerateCritical,  // a zero of F' with vanishing F'' (boundary of Delta)
  SeedFailure,
  NotAlternating,
  GapViolation,
  TargetOutsideV,
  ContinuationStall,
  TypeUnrealizable,
  DegenerateConfiguration,
  InvalidCombinatorics,
  BranchMismatch,
  TraceLost,
  EndpointMismatch,
  InvalidArgument,
  IoError,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace blaschke
