#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace padfuse {

enum class ErrorCode {
    EmptyClass,
    EmptyInput,
    EmptyCurve,
    DomainError,
    GridMismatch,
    ConfigError,
    UnknownPreset,
    ParseError,
    UnknownClass,
    IoError,
    VersionMismatch,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library carries a machine-readable code.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

// Located ingest failure. line is 1-based; 0 means "not tied to a line".
class ParseError : public Error {
public:
    ParseError(ErrorCode code, std::size_t line, const std::string& reason)
        : Error(code, "line " + std::to_string(line) + ": " + reason), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

// Throws DomainError unless 0 <= value <= 1.
void require_probability(double value, std::string_view what);

}  // namespace padfuse
