#pragma once

#include <stdexcept>
#include <string>

namespace charvar {

/// Base class for every error thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Polynomial division left a nonzero remainder (or the divisor was zero).
struct NonExactDivision : Error {
  using Error::Error;
};

/// A polynomial expected to have integer coefficients has a fractional one.
struct NonIntegralPolynomial : Error {
  using Error::Error;
};

/// Pieces of a decomposition do not add up to the whole they must cover.
struct StratumSumMismatch : Error {
  using Error::Error;
};

/// An Euler-characteristic value disagrees with its expected closed form.
struct EulerMismatch : Error {
  using Error::Error;
};

/// A matrix-size parameter is outside the supported range.
struct RankGuard : Error {
  using Error::Error;
};

/// A size or exponent parameter exceeds a hard safety limit.
struct GuardExceeded : Error {
  using Error::Error;
};

/// A number required to be prime is not.
struct NotPrime : Error {
  using Error::Error;
};

/// The claimed subfield does not embed into the given field.
struct NotASubfield : Error {
  using Error::Error;
};

/// An extension field is too small for every eigenvalue to live in it.
struct ExtensionTooSmall : Error {
  using Error::Error;
};

/// A finite-field configuration outside the supported envelope.
struct UnsupportedField : Error {
  using Error::Error;
};

/// Malformed textual input.
struct ParseError : Error {
  using Error::Error;
};

}  // namespace charvar
