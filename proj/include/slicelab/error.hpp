#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace slicelab {

enum class ErrorKind {
  SingularMatrix,
  DegenerateSpectrum,
  DomainViolation,
  DimensionMismatch,
  NotJacobi,
  NotTridiagonal,
  NotIrreducible,
  ReconstructionFailure,
  TooLarge,
  InvalidArgument,
  ParseError,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries one of the kinds above so
/// callers (the CLI, the Python module) can report it without parsing text.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(detail), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace slicelab
