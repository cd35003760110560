#pragma once

#include <stdexcept>
#include <string>

namespace mtco {

/// Raised when input data (files, matrices, permutations) is malformed.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised by fit_scale_shift when the source matrix has no variation.
class DegenerateSourceError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

}  // namespace mtco
