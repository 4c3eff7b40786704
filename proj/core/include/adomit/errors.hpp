#pragma once

#include <stdexcept>
#include <string>

namespace adomit {

/// Base class for all errors raised by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed input text (carries a 1-based line number when known).
struct ParseError : Error {
    ParseError(std::string msg, long line_no = 0)
        : Error(line_no > 0 ? "line " + std::to_string(line_no) + ": " + msg
                            : std::move(msg)),
          line(line_no) {}
    long line;
};

/// A structurally invalid bitext map (order, bounds, duplicates).
struct ValidationError : Error {
    using Error::Error;
};

/// Degenerate or out-of-domain geometric input.
struct GeometryError : Error {
    using Error::Error;
};

/// Unusable parameters (thresholds, experiment settings).
struct ConfigError : Error {
    using Error::Error;
};

/// Simulated omissions cannot be placed under the given constraints.
struct PlacementError : Error {
    using Error::Error;
};

}  // namespace adomit
