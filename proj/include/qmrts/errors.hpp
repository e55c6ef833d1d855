// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace qmrts {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed configuration document.
class ParseError : public Error {
public:
    using Error::Error;
};

// Well-formed input that violates a model invariant.
class ValidationError : public Error {
public:
    using Error::Error;
};

// The model cannot be evaluated (Nyquist violation, peak on the grid edge,
// asin domain error, ...).
class ModelError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

} // namespace qmrts
