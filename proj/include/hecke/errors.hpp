#pragma once

#include <stdexcept>
#include <string>

namespace hecke {

/// Input outside an operation's domain (even modulus, zero divisor, ...).
/// The CLI maps this to exit code 2.
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

/// Exact integer arithmetic would leave the representable range.
/// Computation aborts rather than wrapping. CLI exit code 3.
class OverflowError : public std::runtime_error {
public:
    explicit OverflowError(const std::string& what) : std::runtime_error(what) {}
};

/// A requested accuracy target cannot be certified within budget. CLI exit code 3.
class ToleranceError : public std::runtime_error {
public:
    explicit ToleranceError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace hecke
