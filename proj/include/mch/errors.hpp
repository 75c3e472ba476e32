#pragma once

#include <stdexcept>
#include <string>

namespace mch {

// Error taxonomy for the asymptotics pipeline. Everything derives from
// std exceptions so callers can catch coarsely.

/// Ray parameter lies outside (or on the boundary of) the sector a
/// computation is defined for.
struct SectorError : std::domain_error {
    using std::domain_error::domain_error;
};

/// An adaptive quadrature failed to reach the requested tolerance.
struct AccuracyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Scattering data violates |r| < 1 where the formulas need it.
struct SingularDataError : std::domain_error {
    using std::domain_error::domain_error;
};

/// A matrix argument does not have the structure the operation requires.
struct ContractError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Time integration blew up (NaN/Inf detected).
struct IntegrationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A measurement window does not contain enough signal/oscillations.
struct InsufficientDataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace mch
