#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rangebound {

/// Malformed or inconsistent experiment configuration. `line()` is 0 when the
/// problem is not tied to a particular line of the config text.
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& what, std::size_t line = 0)
        : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what),
          line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// An operation was called on data that violates its documented precondition
/// (e.g. a rotation integrand requested for a path with nonzero drift).
class PreconditionError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// The O(N^2) oracle was asked to run above its size ceiling.
class OracleCeilingError : public std::length_error {
public:
    using std::length_error::length_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace rangebound
