#include "padfuse/errors.hpp"

#include <cmath>

namespace padfuse {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::EmptyClass: return "EmptyClass";
        case ErrorCode::EmptyInput: return "EmptyInput";
        case ErrorCode::EmptyCurve: return "EmptyCurve";
        case ErrorCode::DomainError: return "DomainError";
        case ErrorCode::GridMismatch: return "GridMismatch";
        case ErrorCode::ConfigError: return "ConfigError";
        case ErrorCode::UnknownPreset: return "UnknownPreset";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::UnknownClass: return "UnknownClass";
        case ErrorCode::IoError: return "IoError";
        case ErrorCode::VersionMismatch: return "VersionMismatch";
    }
    return "Unknown";
}

void require_probability(double value, std::string_view what) {
    // Written as a negated range test so NaN is rejected too.
    if (!(value >= 0.0 && value <= 1.0)) {
        throw Error(ErrorCode::DomainError,
                    std::string(what) + " must lie in [0, 1], got " + std::to_string(value));
    }
}

}  // namespace padfuse
