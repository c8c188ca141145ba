#pragma once

#include <stdexcept>
#include <string>

namespace sepstab {

enum class ErrorCode {
  InvalidGroup,
  UniquelyFreelyDecomposable,
  SyntaxError,
  MixedFactors,
  TrivialElement,
  NotCyclicallyReduced,
  NotFreeGroup,
  LetterOutOfRange,
  IdentityMap,
  UnverifiedDisks,
  DiskCountMismatch,
  PathTooShort,
  DimensionMismatch,
  DeterminantOff,
  InvalidParameter,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidGroup: return "InvalidGroup";
    case ErrorCode::UniquelyFreelyDecomposable: return "UniquelyFreelyDecomposable";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::MixedFactors: return "MixedFactors";
    case ErrorCode::TrivialElement: return "TrivialElement";
    case ErrorCode::NotCyclicallyReduced: return "NotCyclicallyReduced";
    case ErrorCode::NotFreeGroup: return "NotFreeGroup";
    case ErrorCode::LetterOutOfRange: return "LetterOutOfRange";
    case ErrorCode::IdentityMap: return "IdentityMap";
    case ErrorCode::UnverifiedDisks: return "UnverifiedDisks";
    case ErrorCode::DiskCountMismatch: return "DiskCountMismatch";
    case ErrorCode::PathTooShort: return "PathTooShort";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::DeterminantOff: return "DeterminantOff";
    case ErrorCode::InvalidParameter: return "InvalidParameter";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above so
/// callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace sepstab
