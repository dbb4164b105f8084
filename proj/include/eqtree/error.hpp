#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace eqtree {

enum class ErrorKind {
  VertexOutOfRange,
  NotSimple,
  Disconnected,
  WrongEdgeCount,
  ColorOutOfRange,
  NotBijective,
  AdjacencyBroken,
  ColorBroken,
  NotAnEdge,
  CentralOrbitNotFixed,
  CentralWeightNotOne,
  DivisibilityViolated,
  InvalidQuotient,
  WrongMode,
  CycleTooShort,
  LoopPresent,
  NotAReductionImage,
  TooLarge,
  InfeasibleSpec,
  ParseError,
};

std::string_view to_string(ErrorKind kind) noexcept;

// Rejected input. The message names the first offending element.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// A broken internal invariant. Always a bug, never a property of the input.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline void ensure(bool condition, const char* what) {
  if (!condition) throw InternalError(what);
}

}  // namespace eqtree
