// Runtime ring selection. Ring specs follow the grammar
//   Z | Fp:<p> | Zi | poly:<spec>
// and dispatch to a generic visitor instantiated at the matching ring type.
// Polynomial nesting is supported two levels deep (poly:poly:Z); deeper
// specs are rejected rather than instantiating unbounded template towers.
#pragma once

#include <string_view>

#include "tconj/error.hpp"
#include "tconj/rings.hpp"

namespace tconj {

namespace detail {

inline long long parse_prime_spec(std::string_view num) {
    if (num.empty()) raise(errc::parse_error, "missing prime after 'Fp:'");
    for (char ch : num)
        if (ch < '0' || ch > '9')
            raise(errc::parse_error, "bad prime field spec 'Fp:" + std::string(num) + "'");
    if (num.size() > 10) raise(errc::invalid_ring_spec, "prime field modulus out of range");
    long long p = 0;
    for (char ch : num) p = p * 10 + (ch - '0');
    return p;
}

template <int Depth, typename F>
auto with_ring_impl(std::string_view spec, F&& fn) -> decltype(fn(IntegerRing{})) {
    if (spec == "Z") return fn(IntegerRing{});
    if (spec == "Zi") return fn(GaussianRing{});
    if (spec.rfind("Fp:", 0) == 0) return fn(PrimeField(parse_prime_spec(spec.substr(3))));
    if (spec.rfind("poly:", 0) == 0) {
        if constexpr (Depth >= 2) {
            raise(errc::invalid_ring_spec,
                  "polynomial ring nesting deeper than 2 is not supported");
        } else {
            return with_ring_impl<Depth + 1>(spec.substr(5), [&](auto base) {
                return fn(PolynomialRing<decltype(base)>(std::move(base)));
            });
        }
    }
    raise(errc::parse_error, "unrecognized ring spec '" + std::string(spec) + "'");
}

} // namespace detail

// Calls fn with the ring value named by `spec`. All instantiations of fn
// must share one return type.
template <typename F>
auto with_ring(std::string_view spec, F&& fn) -> decltype(fn(IntegerRing{})) {
    return detail::with_ring_impl<0>(spec, std::forward<F>(fn));
}

} // namespace tconj
