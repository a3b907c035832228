#pragma once

#include <stdexcept>
#include <string>

namespace subfinsler {

// Invalid input: bad configuration, malformed spec, violated precondition.
struct validation_error : std::runtime_error {
    explicit validation_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Failure of a numerical procedure: divergence, NaN, no bracket, blow-up.
struct numerical_error : std::runtime_error {
    explicit numerical_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace subfinsler
