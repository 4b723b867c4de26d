#pragma once

#include <stdexcept>
#include <string>

namespace gclust {

/// Error taxonomy shared by every module. The CLI maps each kind to an
/// exit code and a machine-readable error record.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& msg)
        : std::runtime_error(msg), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

/// File missing, unreadable, or unwritable.
struct IoError : Error {
    explicit IoError(const std::string& msg) : Error("io", msg) {}
};

/// Malformed file content. Carries a 1-based line number when known.
struct ParseError : Error {
    ParseError(const std::string& msg, long line = -1)
        : Error("parse", line >= 0 ? msg + " (line " + std::to_string(line) + ")" : msg),
          line_number(line) {}
    long line_number;
};

struct ShapeError : Error {
    explicit ShapeError(const std::string& msg) : Error("shape", msg) {}
};

struct RangeError : Error {
    explicit RangeError(const std::string& msg) : Error("range", msg) {}
};

struct ArgumentError : Error {
    explicit ArgumentError(const std::string& msg) : Error("argument", msg) {}
};

/// Operation called in the wrong lifecycle stage (e.g. inference on a
/// model that was never fine-tuned).
struct StateError : Error {
    explicit StateError(const std::string& msg) : Error("state", msg) {}
};

/// Non-finite values where finite ones are required (diverged training,
/// NaN gradients).
struct NumericError : Error {
    explicit NumericError(const std::string& msg) : Error("numeric", msg) {}
};

}  // namespace gclust
