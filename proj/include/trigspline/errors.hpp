#pragma once

#include <stdexcept>
#include <string>

namespace trigspline {

/// Base class for all library errors.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A container length does not match the grid or system dimension.
class DimensionError : public Error {
  public:
    using Error::Error;
};

/// Input data contains non-finite values.
class InputError : public Error {
  public:
    using Error::Error;
};

/// A scalar argument is outside its admissible range.
class DomainError : public Error {
  public:
    using Error::Error;
};

/// Requested derivative order is not covered by the spline's smoothness.
class OrderError : public Error {
  public:
    using Error::Error;
};

/// A mode normalizer cancelled to (numerical) zero; the factor family
/// cannot normalize this mode.
class DegenerateNormalizerError : public Error {
  public:
    using Error::Error;
};

/// A linear solve failed (zero pivot or residual above tolerance).
class NumericError : public Error {
  public:
    using Error::Error;
};

/// Malformed text input; the message names the offending line.
class ParseError : public Error {
  public:
    using Error::Error;
};

/// Stream or filesystem failure.
class IoError : public Error {
  public:
    using Error::Error;
};

/// Unknown schema or missing field in a persisted descriptor.
class SchemaError : public Error {
  public:
    using Error::Error;
};

/// A persisted descriptor violates its own invariants (e.g. stored
/// derived quantities disagree with a rebuild from the stored inputs).
class ValidationError : public Error {
  public:
    using Error::Error;
};

} // namespace trigspline
