#include "slicelab/error.hpp"

namespace slicelab {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::SingularMatrix: return "SingularMatrix";
    case ErrorKind::DegenerateSpectrum: return "DegenerateSpectrum";
    case ErrorKind::DomainViolation: return "DomainViolation";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotJacobi: return "NotJacobi";
    case ErrorKind::NotTridiagonal: return "NotTridiagonal";
    case ErrorKind::NotIrreducible: return "NotIrreducible";
    case ErrorKind::ReconstructionFailure: return "ReconstructionFailure";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace slicelab
