#ifndef SIGALS_ERRORS_HPP
#define SIGALS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace sigals {

// Bad user input: config files, CLI flags, invalid shape parameters.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Runtime numerical failure: solver breakdown, extension non-convergence,
// non-finite field values.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace sigals

#endif
