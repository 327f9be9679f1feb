#pragma once

/**
 * @file error.hpp
 * @brief Error kinds raised by the lamsym library.
 *
 * Every failure is reported as a lamsym::Error carrying an ErrorCode, so
 * callers (the CLI in particular) can map failures onto exit statuses
 * without parsing messages.
 */

#include <stdexcept>
#include <string>
#include <string_view>

namespace lamsym {

enum class ErrorCode {
    MixedPrime,
    DivisionByZero,
    NonUnit,
    NegativeValuation,
    DegreeMismatch,
    DegreeTooLow,
    SmallPrime,
    NotLocallyConstant,
    LevelMismatch,
    LevelExceedsPrecision,
    NonUnitDenominator,
    UnboundedDistribution,
    RouteMismatch,
    IdentityViolation,
    NonInvertibleEigenvalue,
    ZeroEigenvalueProduct,
    RamifiedUnsupported,
    FactorizationMismatch,
    ProjectionMismatch,
    WeightFilter,
    InvalidArgument,
    Parse,
};

constexpr std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::MixedPrime: return "MixedPrime";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::NonUnit: return "NonUnit";
    case ErrorCode::NegativeValuation: return "NegativeValuation";
    case ErrorCode::DegreeMismatch: return "DegreeMismatch";
    case ErrorCode::DegreeTooLow: return "DegreeTooLow";
    case ErrorCode::SmallPrime: return "SmallPrime";
    case ErrorCode::NotLocallyConstant: return "NotLocallyConstant";
    case ErrorCode::LevelMismatch: return "LevelMismatch";
    case ErrorCode::LevelExceedsPrecision: return "LevelExceedsPrecision";
    case ErrorCode::NonUnitDenominator: return "NonUnitDenominator";
    case ErrorCode::UnboundedDistribution: return "UnboundedDistribution";
    case ErrorCode::RouteMismatch: return "RouteMismatch";
    case ErrorCode::IdentityViolation: return "IdentityViolation";
    case ErrorCode::NonInvertibleEigenvalue: return "NonInvertibleEigenvalue";
    case ErrorCode::ZeroEigenvalueProduct: return "ZeroEigenvalueProduct";
    case ErrorCode::RamifiedUnsupported: return "RamifiedUnsupported";
    case ErrorCode::FactorizationMismatch: return "FactorizationMismatch";
    case ErrorCode::ProjectionMismatch: return "ProjectionMismatch";
    case ErrorCode::WeightFilter: return "WeightFilter";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Parse: return "Parse";
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

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
    throw Error(code, what);
}

} // namespace lamsym
