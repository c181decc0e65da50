#pragma once

#include <stdexcept>

namespace sps {

/// Malformed or unsupported Touchstone input.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Inputs that cannot be compared: shape, parameter-type or band mismatches,
/// empty point sets, invalid comparison configuration.
struct ComparisonError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace sps
