#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace tunneltime {

/// Argument outside the documented valid range.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Position outside the physical half-line (Coulomb singularity at x <= 0).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Bracketing or classification failure inside a numerical routine.
class ConsistencyError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// A real-only quantity was requested where the barrier has no real crossings
/// (or a complex-regime quantity where it does).
class RegimeError : public std::runtime_error {
public:
    explicit RegimeError(const std::string& what,
                         std::optional<std::complex<double>> entrance = std::nullopt,
                         std::optional<std::complex<double>> exit = std::nullopt)
        : std::runtime_error(what), entrance_(entrance), exit_(exit) {}

    /// Complex crossing points (I_p -/+ i delta'')/(2F), when known.
    [[nodiscard]] const std::optional<std::complex<double>>& complex_entrance() const { return entrance_; }
    [[nodiscard]] const std::optional<std::complex<double>>& complex_exit() const { return exit_; }

private:
    std::optional<std::complex<double>> entrance_;
    std::optional<std::complex<double>> exit_;
};

/// Malformed text input. `line()` is 1-based, 0 when not line-oriented.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line = 0)
        : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
          line_(line) {}

    [[nodiscard]] std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

}  // namespace tunneltime
