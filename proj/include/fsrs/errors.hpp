#pragma once

#include <stdexcept>
#include <string>

namespace fsrs {

// Invalid user input: bad config keys, out-of-range parameters, malformed
// CLI usage.  The CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// A computation could not be carried out (degenerate configuration, budget
// exceeded, inconsistent inputs, I/O failure).  The CLI maps this to exit 1.
class ComputeError : public std::runtime_error {
public:
    explicit ComputeError(const std::string& what) : std::runtime_error(what) {}
};

// Requested inversion is singular for the given detuning; callers should
// switch to the two-dimensional protocol or accept merged observables.
class DegenerateConfigError : public ComputeError {
public:
    explicit DegenerateConfigError(const std::string& what) : ComputeError(what) {}
};

}  // namespace fsrs
