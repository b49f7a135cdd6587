#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace kgsf {

enum class ErrorCode {
  // graph model
  EmptyGraph,
  DuplicateVertex,
  DuplicateEdgeId,
  DanglingEndpoint,
  UnknownEdge,
  SquareEndpointMismatch,
  FactorizationNotBijective,
  SourceVertex,
  AdjacencyNoncommuting,
  UnknownVertex,
  NotHereditary,
  NotSaturatedHereditary,
  EmptySet,
  FullSet,
  // linear algebra
  DimensionMismatch,
  NotWellDefined,
  NotSquare,
  NegativeEntry,
  BoxTooLarge,
  IterationCap,
  InternalDisagreement,
  // certifier
  BadSubset,
  NotAChain,
  NotMaximal,
  ReplayMismatch,
  // io
  ParseError,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace kgsf
