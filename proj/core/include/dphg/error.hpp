#pragma once

#include <stdexcept>
#include <string>

namespace dphg {

enum class ErrorCode {
  EmptyEdge,
  NodeIdOutOfRange,
  DuplicateMemberInEdge,
  NoEdges,
  ParseError,
  ShapeMismatch,
  MaskOverlap,
  InfeasibleSpec,
  IsolatedNode,
  NonScalarLoss,
  EmptyMask,
  TooLarge,
  InvalidConfig,
  Diverged,
  Io,
};

const char* to_string(ErrorCode code) noexcept;

// Every failure raised by the library carries one of the codes above so that
// callers (and tests) can branch on the kind without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace dphg
