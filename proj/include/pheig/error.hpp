// Copyright the pheig authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace pheig {

// Base of every error thrown by the library. The CLI maps subclasses to exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
public:
    using Error::Error;
};

class ValidationError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

class NumericalError : public Error {
public:
    using Error::Error;
};

// SH is not positive definite, so the solver and the oracle refuse the input.
class IndefiniteError : public Error {
public:
    using Error::Error;
};

class RankDeficientError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

// Raised by the hermitian Rayleigh-Ritz when its preconditions fail on the current subspace.
class ReductionError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

} // namespace pheig
