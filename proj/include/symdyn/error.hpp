#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace symdyn {

enum class ErrorKind {
  EmptyShift,
  NotIrreducible,
  NotFiniteToOne,
  NotInImage,
  InfiniteFiber,
  ArityMismatch,
  ImageMismatch,
  LengthMismatch,
  RepresentativeClassCollision,
  NotALift,
  TwoIsAFactor,
  InvalidArgument,
  ParseError,
  ValidationError,
};

std::string_view to_string(ErrorKind kind);

/// Every precondition failure in the library is reported as an Error carrying
/// a machine-readable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace symdyn
