#pragma once

#include <stdexcept>
#include <string>

namespace z2h {

enum class ErrorCode {
  InvalidArgument,
  ZeroBase,
  PathHitsBranchLocus,
  RefinementLimit,
  OnBranchLocus,
  EmptyIntersection,
  NotOnSphere,
  ImageOnBranchLocus,
  ImageAtInfinity,
  SingularFiber,
  CurvesTooClose,
  NotInTube,
  ChartBoundary,
  DegreeTooLarge,
  SolverDiverged,
  GridTooCoarse,
  FitIllConditioned,
  NoNullDirection,
  SchemaError,
  IOError,
};

const char* to_string(ErrorCode code);

/// All library failures are reported through this exception; `code()` names
/// the failure mode and `what()` carries "<Code>: <detail>".
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace z2h
