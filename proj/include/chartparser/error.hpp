#ifndef CHARTPARSER_ERROR_HPP
#define CHARTPARSER_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace chartparser {

enum class ErrorCode {
    DecodeError,
    NoAxisFound,
    DegenerateAxes,
    EmptyPlotRegion,
    ProviderUnavailable,
    MalformedResponse,
    EmptyCandidates,
    TooFewTicks,
    NoLegendFound,
    NoSwatchFound,
    AmbiguousOrientation,
    NonMonotonicTicks,
    ZeroPixelSpan,
    EmptyChart,
    SpecTooLarge,
    CorpusMismatch,
};

inline std::string_view code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::DecodeError: return "DecodeError";
        case ErrorCode::NoAxisFound: return "NoAxisFound";
        case ErrorCode::DegenerateAxes: return "DegenerateAxes";
        case ErrorCode::EmptyPlotRegion: return "EmptyPlotRegion";
        case ErrorCode::ProviderUnavailable: return "ProviderUnavailable";
        case ErrorCode::MalformedResponse: return "MalformedResponse";
        case ErrorCode::EmptyCandidates: return "EmptyCandidates";
        case ErrorCode::TooFewTicks: return "TooFewTicks";
        case ErrorCode::NoLegendFound: return "NoLegendFound";
        case ErrorCode::NoSwatchFound: return "NoSwatchFound";
        case ErrorCode::AmbiguousOrientation: return "AmbiguousOrientation";
        case ErrorCode::NonMonotonicTicks: return "NonMonotonicTicks";
        case ErrorCode::ZeroPixelSpan: return "ZeroPixelSpan";
        case ErrorCode::EmptyChart: return "EmptyChart";
        case ErrorCode::SpecTooLarge: return "SpecTooLarge";
        case ErrorCode::CorpusMismatch: return "CorpusMismatch";
    }
    return "Unknown";
}

/// Every failure raised by the library carries one of the codes above so
/// batch drivers can report it as a structured warning.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& detail)
        : std::runtime_error(std::string(code_name(code)) + ": " + detail),
          code_(code), detail_(detail) {}

    ErrorCode code() const noexcept { return code_; }
    const std::string& detail() const noexcept { return detail_; }

private:
    ErrorCode code_;
    std::string detail_;
};

}  // namespace chartparser

#endif
