#pragma once

#include <stdexcept>
#include <string>

namespace brwlab {

// Base class for all library errors.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad user input: malformed spec strings, out-of-range parameters,
// inconsistent arguments. CLI maps this to exit code 2.
struct validation_error : error {
    using error::error;
};

// Input text failed to parse; carries the byte offset of the failure.
struct parse_error : validation_error {
    parse_error(const std::string& what, std::size_t position)
        : validation_error(what + " (at position " + std::to_string(position) + ")"),
          position(position) {}
    std::size_t position;
};

// A configured budget (vertex count, memory bound) was exceeded.
// CLI maps this to exit code 3.
struct resource_error : error {
    using error::error;
};

// An iterative method ran out of iterations; carries the last residual.
struct convergence_error : error {
    convergence_error(const std::string& what, double residual)
        : error(what + " (last residual " + std::to_string(residual) + ")"),
          residual(residual) {}
    double residual;
};

} // namespace brwlab
