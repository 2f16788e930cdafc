#pragma once

#include <stdexcept>
#include <string>

namespace mph {

/// Thrown by validate() when a model breaks one of its structural invariants.
/// The message names the first violated invariant, including the field path.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown when a spectral method refuses an ill-conditioned or otherwise
/// unsupported input (e.g. a defective matrix raised to a fractional power).
class UnsupportedCaseError : public std::runtime_error {
public:
    explicit UnsupportedCaseError(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown when an iterative numeric procedure fails to produce a usable result.
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace mph
