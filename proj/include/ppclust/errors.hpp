#pragma once

#include <stdexcept>
#include <string>

namespace ppclust {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Invalid configuration (files, grids, flags). CLI maps this to exit code 2.
struct ConfigError : Error {
    using Error::Error;
};

/// Malformed input file (CSV, sidecar). Also exit code 2 at the CLI boundary.
struct ParseError : Error {
    using Error::Error;
};

/// Invalid argument to an operation (eps <= 0, k > n, ...).
struct ParameterError : Error {
    using Error::Error;
};

/// Value outside its feature's state domain.
struct DomainError : Error {
    using Error::Error;
};

/// Operation applied to data in the wrong state (e.g. perturbing a
/// continuous column that was never discretized).
struct StateError : Error {
    using Error::Error;
};

/// Protocol-level failure (schema mismatch between shares, bad share size).
struct ProtocolError : Error {
    using Error::Error;
};

/// Metric undefined on this input (fewer than two clusters, zero scatter).
struct MetricError : Error {
    using Error::Error;
};

/// Frequency estimation impossible (p == q carries no information).
struct EstimationError : Error {
    using Error::Error;
};

/// Model selection failure (no scorable candidate, degenerate k-NN curve).
struct SelectionError : Error {
    using Error::Error;
};

} // namespace ppclust
