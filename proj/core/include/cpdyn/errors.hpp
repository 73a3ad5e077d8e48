#pragma once

#include <stdexcept>
#include <string>

namespace cpdyn {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

// two-level B evaluated at its own transition wavenumber
class ResonanceError : public Error {
public:
    using Error::Error;
};

class ExtrapolationError : public Error {
public:
    using Error::Error;
};

class LightConeError : public Error {
public:
    using Error::Error;
};

class EvaluationError : public Error {
public:
    using Error::Error;
};

class AccuracyError : public Error {
public:
    AccuracyError(const std::string& what, double best_estimate, double err_est)
        : Error(what), best_(best_estimate), err_(err_est) {}

    // real scalar summary of the best available estimate (the value itself
    // for real integrands, the norm for complex or tensor valued ones)
    double best_estimate() const noexcept { return best_; }
    double err_est() const noexcept { return err_; }

private:
    double best_;
    double err_;
};

}  // namespace cpdyn
