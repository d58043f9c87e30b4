#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace deschom {

enum class ErrorCode {
    DuplicateId,
    MissingFace,
    DimensionMismatch,
    InvalidArgument,
    InvalidComplex,
    TooLarge,
    MissingCell,
    DuplicateEntry,
    ArityMismatch,
    NonFinite,
    ForeignCell,
    EmptyChart,
    EmptyOverlap,
    NonMonotoneTheta,
    MetadataMismatch,
    StepCountMismatch,
    Io,
};

inline std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::MissingFace: return "MissingFace";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidComplex: return "InvalidComplex";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::MissingCell: return "MissingCell";
    case ErrorCode::DuplicateEntry: return "DuplicateEntry";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::ForeignCell: return "ForeignCell";
    case ErrorCode::EmptyChart: return "EmptyChart";
    case ErrorCode::EmptyOverlap: return "EmptyOverlap";
    case ErrorCode::NonMonotoneTheta: return "NonMonotoneTheta";
    case ErrorCode::MetadataMismatch: return "MetadataMismatch";
    case ErrorCode::StepCountMismatch: return "StepCountMismatch";
    case ErrorCode::Io: return "Io";
    }
    return "Unknown";
}

/// Every failure raised by the library carries one of the codes above; callers
/// that need to branch on the failure kind inspect code() instead of the text.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace deschom
