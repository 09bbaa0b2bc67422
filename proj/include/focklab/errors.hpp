#pragma once

#include <stdexcept>
#include <string>

namespace focklab {

// Bad user input: malformed symbol grammar, invalid parameters, etc.
// The CLI maps this to exit code 2.
class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Numerical failure outside the sanctioned DIVERGENT reporting path:
// overflow guards, non-finite integrand values, solver non-convergence.
// The CLI maps this to exit code 3.
class numeric_error : public std::runtime_error {
public:
    explicit numeric_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace focklab
