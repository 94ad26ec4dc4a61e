#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace logvor {

enum class ErrorKind {
    NotPD,
    ShapeMismatch,
    IndexOutOfRange,
    DimensionMismatch,
    SingularPoint,
    CycleDetected,
    NotTopological,
    OutOfRange,
    NotChordal,
    SingularParents,
    DegenerateLeadingCoefficient,
    NoInteriorPoint,
    NoConvergence,
    NotOnSlice,
    PreconditionFailed,
    SamplingExhausted,
    UnknownFigure,
    ParseError,
};

std::string_view error_kind_name(ErrorKind kind);

/// Single exception type for the library; `kind()` tells callers what went wrong.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind) {}

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

inline std::string_view error_kind_name(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::NotPD: return "NotPD";
        case ErrorKind::ShapeMismatch: return "ShapeMismatch";
        case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::SingularPoint: return "SingularPoint";
        case ErrorKind::CycleDetected: return "CycleDetected";
        case ErrorKind::NotTopological: return "NotTopological";
        case ErrorKind::OutOfRange: return "OutOfRange";
        case ErrorKind::NotChordal: return "NotChordal";
        case ErrorKind::SingularParents: return "SingularParents";
        case ErrorKind::DegenerateLeadingCoefficient: return "DegenerateLeadingCoefficient";
        case ErrorKind::NoInteriorPoint: return "NoInteriorPoint";
        case ErrorKind::NoConvergence: return "NoConvergence";
        case ErrorKind::NotOnSlice: return "NotOnSlice";
        case ErrorKind::PreconditionFailed: return "PreconditionFailed";
        case ErrorKind::SamplingExhausted: return "SamplingExhausted";
        case ErrorKind::UnknownFigure: return "UnknownFigure";
        case ErrorKind::ParseError: return "ParseError";
    }
    return "Unknown";
}

} // namespace logvor
