#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace twsusp {

enum class ErrorKind {
  NotGenerating,
  ZeroVector,
  DimensionMismatch,
  Unsupported,
  DimensionTooSmall,
  RankTooLarge,
  UnrecognizedPattern,
  InvalidLabelling,
  NotMinimal,
  NoStop,
  MarginLost,
  NoSolution,
  NotPositive,
  Exhausted,
  Precondition,
  Parse,
  Io,
};

std::string_view to_string(ErrorKind kind);

// Single exception type for the library; `kind` drives CLI exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind), detail_(what) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& detail() const noexcept { return detail_; }
  /// Same error with "stage: " prefixed to the detail.
  Error in_stage(const std::string& stage) const { return Error(kind_, stage + ": " + detail_); }

 private:
  ErrorKind kind_;
  std::string detail_;
};

}  // namespace twsusp
