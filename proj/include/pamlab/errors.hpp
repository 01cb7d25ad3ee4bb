#pragma once

#include <stdexcept>
#include <string>

namespace pamlab {

enum class errc {
    zero_has_no_weight,
    enumeration_too_large,
    unfactorable_coefficient,
    point_outside_domain,
    point_in_coverage_gap,
    map_not_deterministic,
    slope_zero,
    sign_condition_violated,
    not_injective,
    not_two_pieces,
    bad_density_bounds,
    integer_base,
    base_not_greater_than_one,
    base_out_of_range,
    variant_not_deterministic,
    density_outside_domain,
    precision_overflow,
    range_exceeds_delta,
    cap_exceeded,
    syntax_error,
    validation_failed,
    invalid_argument,
};

inline const char* errc_name(errc c) {
    switch (c) {
        case errc::zero_has_no_weight:        return "ZeroHasNoWeight";
        case errc::enumeration_too_large:     return "EnumerationTooLarge";
        case errc::unfactorable_coefficient:  return "UnfactorableCoefficient";
        case errc::point_outside_domain:      return "PointOutsideDomain";
        case errc::point_in_coverage_gap:     return "PointInCoverageGap";
        case errc::map_not_deterministic:     return "MapNotDeterministic";
        case errc::slope_zero:                return "SlopeZero";
        case errc::sign_condition_violated:   return "SignConditionViolated";
        case errc::not_injective:             return "NotInjective";
        case errc::not_two_pieces:            return "NotTwoPieces";
        case errc::bad_density_bounds:        return "BadDensityBounds";
        case errc::integer_base:              return "IntegerBase";
        case errc::base_not_greater_than_one: return "BaseNotGreaterThanOne";
        case errc::base_out_of_range:         return "BaseOutOfRange";
        case errc::variant_not_deterministic: return "VariantNotDeterministic";
        case errc::density_outside_domain:    return "DensityOutsideDomain";
        case errc::precision_overflow:        return "PrecisionOverflow";
        case errc::range_exceeds_delta:       return "RangeExceedsDelta";
        case errc::cap_exceeded:              return "CapExceeded";
        case errc::syntax_error:              return "SyntaxError";
        case errc::validation_failed:         return "ValidationFailed";
        case errc::invalid_argument:          return "InvalidArgument";
    }
    return "UnknownError";
}

/// Library-wide exception type; carries a machine-readable code so the CLI
/// can map failures onto exit codes.
class Error : public std::runtime_error {
public:
    Error(errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw Error(code, what); }

} // namespace pamlab
