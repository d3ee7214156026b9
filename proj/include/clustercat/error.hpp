#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace clustercat {

enum class ErrorCode {
  InvalidWeightVector,
  InvalidWeightType,
  ZeroClassSlope,
  NotTubular,
  NotComposable,
  WindowExhausted,
  NotInSet,
  AmbiguousComplement,
  NotDomestic,
  DepthExhausted,
  WrongArity,
  NodeCapExceeded,
  ParseError,
  InvalidArgument,
};

std::string_view error_code_name(ErrorCode code);

// Domain error. The CLI maps these to exit code 1 and a JSON error object.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(detail), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace clustercat
