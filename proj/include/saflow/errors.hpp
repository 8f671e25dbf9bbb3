#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace saflow {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A chart point left the admissible region (Poincare disk guard radius).
/// The usual fix is a smaller time step.
class ChartBlowupError : public Error {
public:
    explicit ChartBlowupError(double radius)
        : Error("chart blow-up: |z| = " + std::to_string(radius) +
                " exceeds the disk guard radius; reduce the step size"),
          radius_(radius) {}

    double radius() const { return radius_; }

private:
    double radius_;
};

/// A field or state became non-finite (or astronomically large) during evolution.
class BlowupError : public Error {
public:
    BlowupError(const std::string& what, std::size_t node, double last_valid_time)
        : Error(what + " at node " + std::to_string(node) +
                " (last valid time t = " + std::to_string(last_valid_time) + ")"),
          node_(node),
          last_valid_time_(last_valid_time) {}

    std::size_t node() const { return node_; }
    double last_valid_time() const { return last_valid_time_; }

private:
    std::size_t node_;
    double last_valid_time_;
};

/// Configuration text failed to parse or validate.
class ConfigError : public Error {
public:
    ConfigError(const std::string& what, int line = 0)
        : Error(line > 0 ? "config error (line " + std::to_string(line) + "): " + what
                         : "config error: " + what),
          line_(line) {}

    int line() const { return line_; }

private:
    int line_;
};

}  // namespace saflow
