#pragma once

#include <stdexcept>
#include <string>

namespace majorize {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Shape problems: ragged columns, mismatched d, empty input.
struct DimensionError : Error {
    using Error::Error;
};

// Negative, NaN or otherwise unusable numbers.
struct DomainError : Error {
    using Error::Error;
};

// Parameter outside the family a functional is defined on.
struct ParameterError : Error {
    using Error::Error;
};

struct RegimeError : Error {
    using Error::Error;
};

struct NormMismatchError : Error {
    using Error::Error;
};

// Row or variable caps exceeded.
struct ResourceError : Error {
    using Error::Error;
};

}  // namespace majorize
