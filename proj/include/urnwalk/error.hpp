#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace urnwalk {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid parameters or violated preconditions.
class ParameterError : public Error {
public:
    using Error::Error;
};

/// A step or time index outside the range defined by the process.
class BoundsError : public ParameterError {
public:
    using ParameterError::ParameterError;
};

/// A formula evaluated outside its domain (e.g. the closed-form MGF at kappa = 0).
class DomainError : public ParameterError {
public:
    using ParameterError::ParameterError;
};

/// Malformed, off-grid or insufficient input data.
class DataError : public Error {
public:
    using Error::Error;
};

/// A price that does not sit on the tick grid. `index` is the 0-based
/// position of the offending price in its series.
class GridError : public DataError {
public:
    GridError(const std::string& what, std::size_t index)
        : DataError(what), index_(index) {}
    std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

class NumericalError : public Error {
public:
    using Error::Error;
};

/// A summand of the closed-form MGF divides by zero (1/(2 eps) + k == 0).
class SingularTermError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

}  // namespace urnwalk
