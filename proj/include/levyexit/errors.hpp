#pragma once

#include <stdexcept>
#include <string>

namespace levyexit {

/// Argument outside the mathematical domain of a function (x <= -1, alpha outside (0,2), ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Model parameters do not describe a bistable system.
class RegimeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Evaluation at a pole of a special function.
class PoleError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Grid step does not divide c, d and (c+d)/2 exactly.
class DivisibilityError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Invalid user-facing configuration (bad parameter value, unknown key).
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class SingularMatrixError : public std::runtime_error {
public:
    SingularMatrixError(std::size_t pivot, const std::string& what)
        : std::runtime_error(what), pivot_index(pivot) {}

    std::size_t pivot_index;
};

}  // namespace levyexit
