#pragma once

#include <stdexcept>
#include <string>

namespace randflight {

/// Evaluation requested outside the support [-vt, +vt] (or [0, vt] radially).
struct OutOfSupportError : std::domain_error {
    using std::domain_error::domain_error;
};

/// conv2rect requires its widths ordered w1 <= w2.
struct WidthOrderError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// conv3rect requires segment lengths ordered 0 < a < b < c < 2vt.
struct OrderingViolationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// No window of consecutive harmonics settled before the series became unreliable.
struct NoPlateauError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The truncation policy cannot reach the requested harmonics reliably.
struct PolicyTooSmallError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A Fourier table required by the collision expansion is absent.
struct MissingTableError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A numerical-derivative stencil cannot avoid a listed breakpoint.
struct BreakpointStraddleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Statistics requested over an empty sample set.
struct EmptySamplesError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

}  // namespace randflight
