#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tropmod {

enum class ErrorCode {
    DuplicateLegLabel,
    InvalidLegLabel,
    Disconnected,
    NegativeWeight,
    DanglingEndpoint,
    UnknownVertex,
    UnknownEdge,
    NotStable,
    DegenerateSignature,
    NotTrivalent,
    NoPath,
    BadMarking,
    BadLength,
    ParseError,
    Overflow,
};

constexpr std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::DuplicateLegLabel: return "DuplicateLegLabel";
    case ErrorCode::InvalidLegLabel: return "InvalidLegLabel";
    case ErrorCode::Disconnected: return "Disconnected";
    case ErrorCode::NegativeWeight: return "NegativeWeight";
    case ErrorCode::DanglingEndpoint: return "DanglingEndpoint";
    case ErrorCode::UnknownVertex: return "UnknownVertex";
    case ErrorCode::UnknownEdge: return "UnknownEdge";
    case ErrorCode::NotStable: return "NotStable";
    case ErrorCode::DegenerateSignature: return "DegenerateSignature";
    case ErrorCode::NotTrivalent: return "NotTrivalent";
    case ErrorCode::NoPath: return "NoPath";
    case ErrorCode::BadMarking: return "BadMarking";
    case ErrorCode::BadLength: return "BadLength";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::Overflow: return "Overflow";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

} // namespace tropmod
