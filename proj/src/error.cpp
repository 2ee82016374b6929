#include "monobound/error.hpp"

namespace monobound {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::NonPositiveWeight: return "NonPositiveWeight";
    case ErrorCode::SumOutOfTolerance: return "SumOutOfTolerance";
    case ErrorCode::DegeneratePartition: return "DegeneratePartition";
    case ErrorCode::PointOutsideInterval: return "PointOutsideInterval";
    case ErrorCode::DomainViolation: return "DomainViolation";
    case ErrorCode::NonMonotoneFunction: return "NonMonotoneFunction";
    case ErrorCode::ToleranceNotReached: return "ToleranceNotReached";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::NotMajorized: return "NotMajorized";
    case ErrorCode::NotConvex: return "NotConvex";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace monobound
