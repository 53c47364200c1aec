#include "darwin/error.hpp"

namespace darwin {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::NonUnitaryInput: return "NonUnitaryInput";
    case ErrorCode::InvalidState: return "InvalidState";
    case ErrorCode::EmptySubset: return "EmptySubset";
    case ErrorCode::InvalidSubset: return "InvalidSubset";
    case ErrorCode::OverlappingSubsets: return "OverlappingSubsets";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::NegativeEigenvalue: return "NegativeEigenvalue";
    case ErrorCode::SubsetTooLarge: return "SubsetTooLarge";
    case ErrorCode::WrongDimension: return "WrongDimension";
    case ErrorCode::TooManyAncillas: return "TooManyAncillas";
    case ErrorCode::InvalidCounts: return "InvalidCounts";
    case ErrorCode::InvalidCoupling: return "InvalidCoupling";
    case ErrorCode::InvalidWeights: return "InvalidWeights";
    case ErrorCode::OverlapOutOfRange: return "OverlapOutOfRange";
    case ErrorCode::UndefinedNormalization: return "UndefinedNormalization";
    case ErrorCode::TooManySubsets: return "TooManySubsets";
    case ErrorCode::UndefinedPoints: return "UndefinedPoints";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
  }
  return "Unknown";
}

}  // namespace darwin
