#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rectify {

enum class ErrorKind {
    DomainExceeded,
    DegenerateSpeed,
    VanishingCurvature,
    NotUnitSpeed,
    IrregularPoint,
    NotRectifying,
    SingularFrame,
    BadParameter,
    IoFailure,
};

constexpr std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::DomainExceeded: return "DomainExceeded";
        case ErrorKind::DegenerateSpeed: return "DegenerateSpeed";
        case ErrorKind::VanishingCurvature: return "VanishingCurvature";
        case ErrorKind::NotUnitSpeed: return "NotUnitSpeed";
        case ErrorKind::IrregularPoint: return "IrregularPoint";
        case ErrorKind::NotRectifying: return "NotRectifying";
        case ErrorKind::SingularFrame: return "SingularFrame";
        case ErrorKind::BadParameter: return "BadParameter";
        case ErrorKind::IoFailure: return "IoFailure";
    }
    return "Unknown";
}

/// Base of every error raised by the library. `kind()` lets callers (and the
/// CLI report writer) classify failures without RTTI ladders.
class GeometryError : public std::runtime_error {
public:
    GeometryError(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

template <ErrorKind K>
class TypedError : public GeometryError {
public:
    explicit TypedError(const std::string& what) : GeometryError(K, what) {}
};

using DomainExceeded = TypedError<ErrorKind::DomainExceeded>;
using DegenerateSpeed = TypedError<ErrorKind::DegenerateSpeed>;
using VanishingCurvature = TypedError<ErrorKind::VanishingCurvature>;
using NotUnitSpeed = TypedError<ErrorKind::NotUnitSpeed>;
using IrregularPoint = TypedError<ErrorKind::IrregularPoint>;
using NotRectifying = TypedError<ErrorKind::NotRectifying>;
using SingularFrame = TypedError<ErrorKind::SingularFrame>;
using BadParameter = TypedError<ErrorKind::BadParameter>;
using IoFailure = TypedError<ErrorKind::IoFailure>;

} // namespace rectify
