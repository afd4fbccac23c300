#include "dphg/error.hpp"

namespace dphg {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::EmptyEdge: return "EmptyEdge";
    case ErrorCode::NodeIdOutOfRange: return "NodeIdOutOfRange";
    case ErrorCode::DuplicateMemberInEdge: return "DuplicateMemberInEdge";
    case ErrorCode::NoEdges: return "NoEdges";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::MaskOverlap: return "MaskOverlap";
    case ErrorCode::InfeasibleSpec: return "InfeasibleSpec";
    case ErrorCode::IsolatedNode: return "IsolatedNode";
    case ErrorCode::NonScalarLoss: return "NonScalarLoss";
    case ErrorCode::EmptyMask: return "EmptyMask";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::Diverged: return "Diverged";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace dphg
