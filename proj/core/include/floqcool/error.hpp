// error.hpp: exception hierarchy shared by all floqcool modules

#pragma once

#include <stdexcept>
#include <string>

namespace floqcool {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Precondition violated by the caller (bad parameter, bad option).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

// Adaptive integration could not proceed (step underflow, step budget).
class NumericalFailure : public Error {
public:
    NumericalFailure(const std::string& what, double time_reached)
        : Error(what), time_reached_(time_reached) {}
    double time_reached() const noexcept { return time_reached_; }

private:
    double time_reached_;
};

// Continuation of the characteristic exponent left the stable region.
class BranchTrackingError : public Error {
public:
    BranchTrackingError(const std::string& what, double omega1)
        : Error(what), omega1_(omega1) {}
    double omega1() const noexcept { return omega1_; }

private:
    double omega1_;
};

// Marginal monodromy: the Floquet eigenvectors coalesce.
class DegenerateEigenvector : public Error {
public:
    using Error::Error;
};

// Bose occupation evaluated inside the zero-frequency guard.
class SingularityError : public Error {
public:
    SingularityError(const std::string& what, double frequency)
        : Error(what), frequency_(frequency) {}
    double frequency() const noexcept { return frequency_; }

private:
    double frequency_;
};

// Every downward term of the rate ratio underflowed.
class DegenerateCoupling : public Error {
public:
    using Error::Error;
};

// Closed-form approximation requested outside its sign domain.
class DomainError : public Error {
public:
    using Error::Error;
};

// r >= 1: no normalizable steady state exists.
class InstabilityError : public Error {
public:
    InstabilityError(const std::string& what, double ratio)
        : Error(what), ratio_(ratio) {}
    double ratio() const noexcept { return ratio_; }

private:
    double ratio_;
};

// Sweep requested for a drive whose Mathieu solutions are not stable.
class UnstableDrive : public Error {
public:
    using Error::Error;
};

}  // namespace floqcool
