#include "symdyn/error.hpp"

namespace symdyn {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::EmptyShift: return "EmptyShift";
    case ErrorKind::NotIrreducible: return "NotIrreducible";
    case ErrorKind::NotFiniteToOne: return "NotFiniteToOne";
    case ErrorKind::NotInImage: return "NotInImage";
    case ErrorKind::InfiniteFiber: return "InfiniteFiber";
    case ErrorKind::ArityMismatch: return "ArityMismatch";
    case ErrorKind::ImageMismatch: return "ImageMismatch";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::RepresentativeClassCollision: return "RepresentativeClassCollision";
    case ErrorKind::NotALift: return "NotALift";
    case ErrorKind::TwoIsAFactor: return "TwoIsAFactor";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationError: return "ValidationError";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(message), kind_(kind) {}

}  // namespace symdyn
