#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tfx {

// Machine-readable failure categories. The CLI reports the name verbatim.
enum class ErrorKind {
  InvalidArgument,
  SymbolOutOfRange,
  AlphabetMismatch,
  MemoryOverflow,
  NonConvergence,
  NotMeanZero,
  NotNormalized,
  StepTooSmall,
  DependentConstraints,
  TargetOutsideRotationSet,
  LevelMismatch,
  LevelTooLarge,
  BoundaryPoint,
  ParseError,
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace tfx
