#pragma once

#include <stdexcept>
#include <string>

namespace netsched {

/// Base class for all library errors. The CLI maps each subtype to a
/// distinct process exit code.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed input file (edge lists, config values parsed from text).
struct ParseError : Error {
    using Error::Error;
};

/// Mismatched matrix/schedule/vector dimensions or out-of-range indices.
struct DimensionError : Error {
    using Error::Error;
};

/// Singular or ill-conditioned Gramian: the network cannot be steered at
/// the requested horizon. Carries the offending smallest eigenvalue.
struct ControllabilityError : Error {
    ControllabilityError(const std::string& what, double lambda_min_value)
        : Error(what), lambda_min(lambda_min_value) {}
    double lambda_min;
};

/// A combinatorial search would exceed its evaluation budget.
struct BudgetError : Error {
    using Error::Error;
};

/// Invalid or inconsistent configuration (generator parameters, CLI flags).
struct ConfigError : Error {
    using Error::Error;
};

}  // namespace netsched
