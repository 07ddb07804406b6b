#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nepoll {

enum class ErrorCode {
  SelfLoop,
  DuplicateEdge,
  IsolatedNode,
  EmptyGraph,
  InvalidArgument,
  Disconnected,
  SizeCapExceeded,
  AssortativityUndefined,
  DegreeLabelCorrUndefined,
  DegenerateSpec,
  IsolatedNodeAfterRetries,
  Parse,
  Io,
};

/// Stable machine-readable name, e.g. "DuplicateEdge".
std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so the
/// CLI can map it to a single machine-readable error line.
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

}  // namespace nepoll
