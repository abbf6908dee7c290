#include "tfx/error.hpp"

namespace tfx {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::SymbolOutOfRange: return "SymbolOutOfRange";
    case ErrorKind::AlphabetMismatch: return "AlphabetMismatch";
    case ErrorKind::MemoryOverflow: return "MemoryOverflow";
    case ErrorKind::NonConvergence: return "NonConvergence";
    case ErrorKind::NotMeanZero: return "NotMeanZero";
    case ErrorKind::NotNormalized: return "NotNormalized";
    case ErrorKind::StepTooSmall: return "StepTooSmall";
    case ErrorKind::DependentConstraints: return "DependentConstraints";
    case ErrorKind::TargetOutsideRotationSet: return "TargetOutsideRotationSet";
    case ErrorKind::LevelMismatch: return "LevelMismatch";
    case ErrorKind::LevelTooLarge: return "LevelTooLarge";
    case ErrorKind::BoundaryPoint: return "BoundaryPoint";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace tfx
