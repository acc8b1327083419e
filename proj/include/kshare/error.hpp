#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace kshare {

enum class ErrorCode {
  DuplicateNode,
  EmptyLabels,
  InvalidNodeId,
  MissingEndpoint,
  DuplicateEdge,
  InvalidSize,
  UnknownNode,
  InvalidWorkload,
  MagnitudeOutOfRange,
  EmptyInput,
  DimensionMismatch,
  ZeroVector,
  InvalidConfig,
  NodeSetMismatch,
  DegenerateInput,
  TooFewRows,
  TooFewSteps,
  IoError,
  MalformedCsv,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so
/// callers (and the CLI's exit-code mapping) can branch without parsing text.
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

}  // namespace kshare
