#pragma once

#include <stdexcept>
#include <string>

namespace polaritonkit {

/// A parameter or precondition was violated.
class InvalidParameter : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// The lower polariton is not positive (Ω₋² ≤ 0), so the ground state does not exist.
class InstabilityError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// The Mandel Q parameter is 0/0 at vanishing photon occupation.
class UndefinedAtDecoupling : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A Fock-oracle state whose truncation did not settle was asked for an observable.
class UnconvergedState : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The oracle eigensolve failed to isolate the requested eigenpair.
class EigensolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Imaginary-time propagation hit its step budget.
class SolverNonConvergence : public std::runtime_error {
public:
    SolverNonConvergence(const std::string& what, double residual, long steps)
        : std::runtime_error(what), residual_(residual), steps_(steps) {}

    double residual() const noexcept { return residual_; }
    long steps() const noexcept { return steps_; }

private:
    double residual_;
    long steps_;
};

/// A power-law fit had fewer than two strictly positive samples.
class DegenerateFit : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace polaritonkit
