#pragma once

#include <stdexcept>
#include <string>

namespace sonar {

// Bad input data or files: corpus layout, manifests, clip contents.
// CLI maps this to exit code 3.
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

// Numeric failure (NaN/Inf reaching a place it must not). CLI exit code 4.
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace sonar
