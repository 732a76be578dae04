#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace muskat {

inline std::string format_residual(double r) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", r);
    return buf;
}

/// Invalid or incomplete configuration. line() is 0 when not tied to a file line.
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& message, int line = 0)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message : message), line_(line) {}
    [[nodiscard]] int line() const { return line_; }

private:
    int line_;
};

/// A numerical solve failed to reach its tolerance or violated a step invariant.
class SolverError : public std::runtime_error {
public:
    SolverError(const std::string& message, double residual)
        : std::runtime_error(message + " (residual " + format_residual(residual) + ")"),
          message_(message),
          residual_(residual) {}
    [[nodiscard]] double residual() const { return residual_; }
    /// Message without the residual suffix.
    [[nodiscard]] const std::string& message() const { return message_; }

private:
    std::string message_;
    double residual_;
};

/// Requested time step exceeds the CFL bound.
class CflError : public SolverError {
public:
    CflError(double dt, double required_dt)
        : SolverError("CFL violation: dt " + format_residual(dt) + " exceeds " + format_residual(required_dt), dt),
          required_dt_(required_dt) {}
    [[nodiscard]] double required_dt() const { return required_dt_; }

private:
    double required_dt_;
};

}  // namespace muskat
