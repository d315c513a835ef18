/* SPDX-License-Identifier: Apache-2.0 */

#pragma once

#include <stdexcept>
#include <string>

namespace bext {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation (ln of q <= 0, point outside the disk, ...).
class DomainError : public Error {
public:
  using Error::Error;
};

/// Violated operation precondition (s >= r, chain too short, non-simple chain, ...).
class PreconditionError : public Error {
public:
  using Error::Error;
};

/// Malformed serialized input.
class SchemaError : public Error {
public:
  using Error::Error;
};

/// A certificate could not be established (e.g. ULAC for a map with a critical point on the circle).
class CapabilityError : public Error {
public:
  using Error::Error;
};

/// Accepted configurations produced disjoint output rectangles.
class InconsistencyError : public Error {
public:
  using Error::Error;
};

/// chi/m evaluated where s0 <= 1 - r.
class SignError : public DomainError {
public:
  using DomainError::DomainError;
};

class DivisionByZeroError : public SignError {
public:
  using SignError::SignError;
};

}  // namespace bext
