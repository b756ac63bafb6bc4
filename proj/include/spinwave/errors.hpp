#pragma once

#include <stdexcept>
#include <string>

namespace spinwave {

// Parameter or input outside the physical domain of the model.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// k1^2 = k2^2 (or k1^2 + k3^2 = k2^2): the closed forms are singular there and
// the model refuses the case instead of approximating it.
class DegenerateCouplingError : public DomainError {
public:
    using DomainError::DomainError;
};

// Caller asked for something the operation does not support (wrong arity,
// photon number of the spin mode, ...).
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Fock-space state leaked onto the truncation edge of a mode.
class TruncationOverflowError : public std::runtime_error {
public:
    TruncationOverflowError(std::string mode, double population)
        : std::runtime_error("truncation overflow on mode " + mode +
                             ": edge population " + std::to_string(population)),
          mode_(std::move(mode)),
          population_(population) {}

    const std::string& mode() const noexcept { return mode_; }
    double population() const noexcept { return population_; }

private:
    std::string mode_;
    double population_;
};

}  // namespace spinwave
