#include "nepoll/error.hpp"

namespace nepoll {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::SelfLoop: return "SelfLoop";
    case ErrorCode::DuplicateEdge: return "DuplicateEdge";
    case ErrorCode::IsolatedNode: return "IsolatedNode";
    case ErrorCode::EmptyGraph: return "EmptyGraph";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Disconnected: return "Disconnected";
    case ErrorCode::SizeCapExceeded: return "SizeCapExceeded";
    case ErrorCode::AssortativityUndefined: return "AssortativityUndefined";
    case ErrorCode::DegreeLabelCorrUndefined: return "DegreeLabelCorrUndefined";
    case ErrorCode::DegenerateSpec: return "DegenerateSpec";
    case ErrorCode::IsolatedNodeAfterRetries: return "IsolatedNodeAfterRetries";
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace nepoll
