#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace vva {

enum class ErrorCode {
  ParseError,
  NonUnitMass,
  NegativeValue,
  NegativeMass,
  DuplicateSupportVector,
  ZeroMassNonzeroType,
  MissingZeroType,
  DimensionMismatch,
  MalformedLp,
  LabelMismatch,
  InfeasibleInput,
  NotOptimal,
  NotRegular,
  NotAgentIndependent,
  ScaleLimit,
  SolverFailure,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + detail),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace vva
