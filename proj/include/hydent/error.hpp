#pragma once

#include <stdexcept>
#include <string>

namespace hydent {

// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Malformed user input such as an inconsistent quantum-number chain.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Quadrature failed to reach its tolerance; carries the best estimate.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double log_estimate, double rel_error)
        : std::runtime_error(what), log_estimate_(log_estimate), rel_error_(rel_error) {}

    double log_estimate() const { return log_estimate_; }
    double rel_error() const { return rel_error_; }

private:
    double log_estimate_;
    double rel_error_;
};

}  // namespace hydent
