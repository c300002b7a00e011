#include "z2h/error.hpp"

namespace z2h {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ZeroBase: return "ZeroBase";
    case ErrorCode::PathHitsBranchLocus: return "PathHitsBranchLocus";
    case ErrorCode::RefinementLimit: return "RefinementLimit";
    case ErrorCode::OnBranchLocus: return "OnBranchLocus";
    case ErrorCode::EmptyIntersection: return "EmptyIntersection";
    case ErrorCode::NotOnSphere: return "NotOnSphere";
    case ErrorCode::ImageOnBranchLocus: return "ImageOnBranchLocus";
    case ErrorCode::ImageAtInfinity: return "ImageAtInfinity";
    case ErrorCode::SingularFiber: return "SingularFiber";
    case ErrorCode::CurvesTooClose: return "CurvesTooClose";
    case ErrorCode::NotInTube: return "NotInTube";
    case ErrorCode::ChartBoundary: return "ChartBoundary";
    case ErrorCode::DegreeTooLarge: return "DegreeTooLarge";
    case ErrorCode::SolverDiverged: return "SolverDiverged";
    case ErrorCode::GridTooCoarse: return "GridTooCoarse";
    case ErrorCode::FitIllConditioned: return "FitIllConditioned";
    case ErrorCode::NoNullDirection: return "NoNullDirection";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::IOError: return "IOError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

}  // namespace z2h
