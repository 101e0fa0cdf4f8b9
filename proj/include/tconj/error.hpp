// Error codes shared across the library. Every throwing operation raises
// tconj::Error with one of these codes; the CLI maps them onto exit status 2.
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tconj {

enum class errc {
    invalid_ring_spec,
    parse_error,
    ring_mismatch,
    dimension_mismatch,
    not_invertible,
    non_separating_polynomial,
    budget_exhausted,
    domain_error,
    not_delta_fixed,
    not_automorphism,
    too_large,
    ring_not_infinite,
    characteristic_not_zero,
    dimension_too_small,
    unknown_order,
    shape_violation,
};

inline std::string_view errc_name(errc c) {
    switch (c) {
        case errc::invalid_ring_spec: return "InvalidRingSpec";
        case errc::parse_error: return "ParseError";
        case errc::ring_mismatch: return "RingMismatch";
        case errc::dimension_mismatch: return "DimensionMismatch";
        case errc::not_invertible: return "NotInvertibleOverRing";
        case errc::non_separating_polynomial: return "NonSeparatingPolynomial";
        case errc::budget_exhausted: return "BudgetExhausted";
        case errc::domain_error: return "DomainError";
        case errc::not_delta_fixed: return "NotDeltaFixed";
        case errc::not_automorphism: return "NotAutomorphism";
        case errc::too_large: return "TooLarge";
        case errc::ring_not_infinite: return "RingNotInfinite";
        case errc::characteristic_not_zero: return "CharacteristicNotZero";
        case errc::dimension_too_small: return "DimensionTooSmall";
        case errc::unknown_order: return "UnknownOrder";
        case errc::shape_violation: return "ShapeViolation";
    }
    return "UnknownError";
}

class Error : public std::runtime_error {
public:
    Error(errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void raise(errc code, const std::string& what) { throw Error(code, what); }

} // namespace tconj
