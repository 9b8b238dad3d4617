#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace legibility {

enum class ErrorKind {
  InvalidArgument,
  DegeneratePartial,
  InsufficientSamples,
  DegenerateTrajectory,
  BehindCamera,
  MissingFeedback,
  MissingData,
  Schema,
  ReferentialIntegrity,
  Configuration,
  UndefinedCorrelation,
  InsufficientPairs,
  Load,
};

std::string_view to_string(ErrorKind kind);

// Single exception type for the library; `kind()` discriminates the failure.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace legibility
