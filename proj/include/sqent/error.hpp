// error.hpp — error kinds raised by the sqent library

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sqent {

enum class ErrorKind {
    // parameter / input validation
    MSqueezeBound,
    NegativeRate,
    GammaHatRange,
    InvalidBath,
    NotNormalized,
    InvalidState,
    InvalidConfig,
    InvalidScan,
    // domain / regime
    RegimeError,
    FidelityRange,
    BelowCritical,
    NotXForm,
    StepUnderflow,
};

inline std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::MSqueezeBound: return "MSqueezeBound";
        case ErrorKind::NegativeRate: return "NegativeRate";
        case ErrorKind::GammaHatRange: return "GammaHatRange";
        case ErrorKind::InvalidBath: return "InvalidBath";
        case ErrorKind::NotNormalized: return "NotNormalized";
        case ErrorKind::InvalidState: return "InvalidState";
        case ErrorKind::InvalidConfig: return "InvalidConfig";
        case ErrorKind::InvalidScan: return "InvalidScan";
        case ErrorKind::RegimeError: return "RegimeError";
        case ErrorKind::FidelityRange: return "FidelityRange";
        case ErrorKind::BelowCritical: return "BelowCritical";
        case ErrorKind::NotXForm: return "NotXForm";
        case ErrorKind::StepUnderflow: return "StepUnderflow";
    }
    return "Unknown";
}

// True for errors caused by malformed input rather than by asking for a
// quantity outside its domain of definition.
inline bool is_validation_error(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::MSqueezeBound:
        case ErrorKind::NegativeRate:
        case ErrorKind::GammaHatRange:
        case ErrorKind::InvalidBath:
        case ErrorKind::NotNormalized:
        case ErrorKind::InvalidState:
        case ErrorKind::InvalidConfig:
        case ErrorKind::InvalidScan:
            return true;
        default:
            return false;
    }
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace sqent
