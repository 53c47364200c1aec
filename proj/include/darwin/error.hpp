#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace darwin {

enum class ErrorCode {
  IndexOutOfRange,
  NonUnitaryInput,
  InvalidState,
  EmptySubset,
  InvalidSubset,
  OverlappingSubsets,
  NotNormalized,
  NegativeEigenvalue,
  SubsetTooLarge,
  WrongDimension,
  TooManyAncillas,
  InvalidCounts,
  InvalidCoupling,
  InvalidWeights,
  OverlapOutOfRange,
  UndefinedNormalization,
  TooManySubsets,
  UndefinedPoints,
  InvalidConfig,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace darwin
