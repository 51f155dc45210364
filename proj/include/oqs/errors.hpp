#pragma once

#include <stdexcept>
#include <string>

namespace oqs {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionError : Error {
    using Error::Error;
};

struct HermiticityError : Error {
    using Error::Error;
};

struct NormalizationError : Error {
    using Error::Error;
};

struct PositivityError : Error {
    using Error::Error;
};

struct CompletenessError : Error {
    using Error::Error;
};

struct CompletePositivityError : Error {
    using Error::Error;
};

struct TracePreservationError : Error {
    using Error::Error;
};

struct IsometryError : Error {
    using Error::Error;
};

struct DomainError : Error {
    using Error::Error;
};

struct GridError : Error {
    using Error::Error;
};

struct RegimeError : Error {
    using Error::Error;
};

// Raised when decay rates are requested at a zero of the excited-state
// amplitude, where they diverge.
struct AmplitudeZeroError : Error {
    using Error::Error;
};

struct NotCompletelyPositiveGenerator : Error {
    NotCompletelyPositiveGenerator(const std::string& msg, double min_eig)
        : Error(msg), min_eigenvalue(min_eig) {}
    double min_eigenvalue;
};

struct NotTracePreserving : Error {
    using Error::Error;
};

struct FormatError : Error {
    using Error::Error;
};

}  // namespace oqs
