// Exact commutative rings: the integers, prime fields F_p, the Gaussian
// integers Z[i], and univariate polynomial rings over any of these. Each
// ring is a small value type exposing element arithmetic, literals, unit
// tests, exact division, and its (finite) named automorphism set. All four
// kinds are integral domains; only prime fields are finite.
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tconj/error.hpp"
#include "tconj/integer.hpp"
#include "tconj/polynomial.hpp"

namespace tconj {

template <typename R>
concept Ring = std::copyable<R> && std::copyable<typename R::Element> &&
    requires(const R& r, const typename R::Element& a, const typename R::Element& b,
             long long k, const Integer& z, std::string_view s) {
        { r.zero() } -> std::same_as<typename R::Element>;
        { r.one() } -> std::same_as<typename R::Element>;
        { r.add(a, b) } -> std::same_as<typename R::Element>;
        { r.sub(a, b) } -> std::same_as<typename R::Element>;
        { r.neg(a) } -> std::same_as<typename R::Element>;
        { r.mul(a, b) } -> std::same_as<typename R::Element>;
        { r.equal(a, b) } -> std::same_as<bool>;
        { r.is_zero(a) } -> std::same_as<bool>;
        { r.is_one(a) } -> std::same_as<bool>;
        { r.is_unit(a) } -> std::same_as<bool>;
        { r.unit_inverse(a) } -> std::same_as<typename R::Element>;
        { r.divexact(a, b) } -> std::same_as<typename R::Element>;
        { r.from_int(k) } -> std::same_as<typename R::Element>;
        { r.from_integer(z) } -> std::same_as<typename R::Element>;
        { r.to_string(a) } -> std::same_as<std::string>;
        { r.parse(s) } -> std::same_as<typename R::Element>;
        { r.spec() } -> std::same_as<std::string>;
        { r.finite() } -> std::same_as<bool>;
        { r.characteristic_zero() } -> std::same_as<bool>;
        { r.same_ring(r) } -> std::same_as<bool>;
    };

// A named ring automorphism with a claimed order (0 = unknown). The supplied
// automorphisms are the identity on every ring and complex conjugation on
// the Gaussian integers (plus coefficientwise lifts on polynomial rings).
template <typename R>
struct RingAutomorphism {
    std::string name;
    int claimed_order = 0;
    std::function<typename R::Element(const typename R::Element&)> map;

    typename R::Element operator()(const typename R::Element& x) const { return map(x); }
    bool is_identity_name() const { return name == "id"; }
};

template <typename R>
RingAutomorphism<R> identity_automorphism(const R&) {
    return {"id", 1, [](const typename R::Element& x) { return x; }};
}

// Composition a after b. The composed order is not computed; callers that
// need it use automorphism_order.
template <typename R>
RingAutomorphism<R> compose_automorphisms(const R&, const RingAutomorphism<R>& a,
                                          const RingAutomorphism<R>& b) {
    if (a.is_identity_name()) return b;
    if (b.is_identity_name()) return a;
    RingAutomorphism<R> out;
    out.name = a.name + "." + b.name;
    out.claimed_order = 0;
    auto fa = a.map, fb = b.map;
    out.map = [fa, fb](const typename R::Element& x) { return fa(fb(x)); };
    return out;
}

// ---------------------------------------------------------------------------
// Z
// ---------------------------------------------------------------------------

class IntegerRing {
public:
    using Element = Integer;

    Element zero() const { return Integer(); }
    Element one() const { return Integer(1); }
    Element add(const Element& a, const Element& b) const { return a + b; }
    Element sub(const Element& a, const Element& b) const { return a - b; }
    Element neg(const Element& a) const { return -a; }
    Element mul(const Element& a, const Element& b) const { return a * b; }
    bool equal(const Element& a, const Element& b) const { return a == b; }
    bool is_zero(const Element& a) const { return a.is_zero(); }
    bool is_one(const Element& a) const { return a.is_one(); }
    bool is_unit(const Element& a) const { return a == Integer(1) || a == Integer(-1); }

    Element unit_inverse(const Element& a) const {
        if (!is_unit(a)) raise(errc::not_invertible, a.str() + " is not a unit in Z");
        return a;
    }

    Element divexact(const Element& a, const Element& b) const {
        auto [q, r] = Integer::divmod(a, b);
        if (!r.is_zero()) raise(errc::domain_error, "inexact integer division");
        return q;
    }

    Element from_int(long long k) const { return Integer(k); }
    Element from_integer(const Integer& z) const { return z; }
    std::string to_string(const Element& a) const { return a.str(); }
    Element parse(std::string_view s) const { return Integer::parse(s); }

    std::string spec() const { return "Z"; }
    bool finite() const { return false; }
    bool characteristic_zero() const { return true; }
    bool same_ring(const IntegerRing&) const { return true; }

    std::vector<RingAutomorphism<IntegerRing>> automorphisms() const {
        return {identity_automorphism(*this)};
    }
};

// ---------------------------------------------------------------------------
// F_p
// ---------------------------------------------------------------------------

inline bool is_prime_u64(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

class PrimeField {
public:
    using Element = int64_t;

    explicit PrimeField(long long p) : p_(p) {
        if (p < 2 || p >= (1LL << 31))
            raise(errc::invalid_ring_spec, "prime field modulus out of range: " + std::to_string(p));
        if (!is_prime_u64(static_cast<uint64_t>(p)))
            raise(errc::invalid_ring_spec, std::to_string(p) + " is not prime");
    }

    long long modulus() const { return p_; }

    Element zero() const { return 0; }
    Element one() const { return 1 % p_; }
    Element add(Element a, Element b) const { return (a + b) % p_; }
    Element sub(Element a, Element b) const { return ((a - b) % p_ + p_) % p_; }
    Element neg(Element a) const { return a == 0 ? 0 : p_ - a; }
    Element mul(Element a, Element b) const {
        return static_cast<Element>(static_cast<__int128>(a) * b % p_);
    }
    bool equal(Element a, Element b) const { return a == b; }
    bool is_zero(Element a) const { return a == 0; }
    bool is_one(Element a) const { return a == one(); }
    bool is_unit(Element a) const { return a != 0; }

    Element unit_inverse(Element a) const {
        if (a == 0) raise(errc::not_invertible, "0 is not a unit in " + spec());
        long long t = 0, new_t = 1, r = p_, new_r = a;
        while (new_r != 0) {
            long long q = r / new_r;
            t -= q * new_t;
            std::swap(t, new_t);
            r -= q * new_r;
            std::swap(r, new_r);
        }
        return ((t % p_) + p_) % p_;
    }

    Element divexact(Element a, Element b) const { return mul(a, unit_inverse(b)); }

    Element from_int(long long k) const { return ((k % p_) + p_) % p_; }
    Element from_integer(const Integer& z) const {
        auto [q, r] = Integer::divmod(z, Integer(p_));
        long long v = r.to_ll();
        return v < 0 ? v + p_ : v;
    }
    std::string to_string(Element a) const { return std::to_string(a); }
    Element parse(std::string_view s) const { return from_integer(Integer::parse(s)); }

    std::string spec() const { return "Fp:" + std::to_string(p_); }
    bool finite() const { return true; }
    bool characteristic_zero() const { return false; }
    bool same_ring(const PrimeField& o) const { return p_ == o.p_; }

    // finite enumeration
    uint64_t size() const { return static_cast<uint64_t>(p_); }
    Element element_at(uint64_t i) const { return static_cast<Element>(i); }
    uint64_t index_of(Element a) const { return static_cast<uint64_t>(a); }

    std::vector<RingAutomorphism<PrimeField>> automorphisms() const {
        return {identity_automorphism(*this)};
    }

private:
    long long p_;
};

// ---------------------------------------------------------------------------
// Z[i]
// ---------------------------------------------------------------------------

struct GaussianInt {
    Integer re, im;
    friend bool operator==(const GaussianInt& a, const GaussianInt& b) {
        return a.re == b.re && a.im == b.im;
    }
};

class GaussianRing {
public:
    using Element = GaussianInt;

    Element zero() const { return {Integer(), Integer()}; }
    Element one() const { return {Integer(1), Integer()}; }
    Element imaginary_unit() const { return {Integer(), Integer(1)}; }
    Element make(Integer re, Integer im) const { return {std::move(re), std::move(im)}; }

    Element add(const Element& a, const Element& b) const { return {a.re + b.re, a.im + b.im}; }
    Element sub(const Element& a, const Element& b) const { return {a.re - b.re, a.im - b.im}; }
    Element neg(const Element& a) const { return {-a.re, -a.im}; }
    Element mul(const Element& a, const Element& b) const {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    bool equal(const Element& a, const Element& b) const { return a == b; }
    bool is_zero(const Element& a) const { return a.re.is_zero() && a.im.is_zero(); }
    bool is_one(const Element& a) const { return a.re.is_one() && a.im.is_zero(); }

    Integer norm(const Element& a) const { return a.re * a.re + a.im * a.im; }
    Element conj(const Element& a) const { return {a.re, -a.im}; }

    // units are exactly 1, -1, i, -i (norm one)
    bool is_unit(const Element& a) const { return norm(a).is_one(); }

    Element unit_inverse(const Element& a) const {
        if (!is_unit(a)) raise(errc::not_invertible, to_string(a) + " is not a unit in Z[i]");
        return conj(a);
    }

    // exact division a/b in Z[i]: a * conj(b) / N(b), both components exact
    Element divexact(const Element& a, const Element& b) const {
        if (is_zero(b)) raise(errc::domain_error, "Gaussian division by zero");
        Element num = mul(a, conj(b));
        Integer n = norm(b);
        auto [qr, rr] = Integer::divmod(num.re, n);
        auto [qi, ri] = Integer::divmod(num.im, n);
        if (!rr.is_zero() || !ri.is_zero()) raise(errc::domain_error, "inexact Gaussian division");
        return {qr, qi};
    }

    Element from_int(long long k) const { return {Integer(k), Integer()}; }
    Element from_integer(const Integer& z) const { return {z, Integer()}; }

    std::string to_string(const Element& a) const {
        if (a.im.is_zero()) return a.re.str();
        std::string im_part;
        if (a.im.is_one())
            im_part = "i";
        else if (a.im == Integer(-1))
            im_part = "-i";
        else
            im_part = a.im.str() + "i";
        if (a.re.is_zero()) return im_part;
        if (!a.im.is_negative()) return a.re.str() + "+" + im_part;
        return a.re.str() + im_part; // im_part already carries '-'
    }

    // accepts "a", "bi", "a+bi", "a-bi", "i", "-i", "+i"
    Element parse(std::string_view s) const {
        if (s.empty()) raise(errc::parse_error, "empty Gaussian literal");
        Integer re, im;
        bool seen_re = false, seen_im = false;
        size_t i = 0;
        while (i < s.size()) {
            size_t start = i;
            if (s[i] == '+' || s[i] == '-') ++i;
            while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i;
            bool imaginary = i < s.size() && s[i] == 'i';
            std::string digits(s.substr(start, i - start));
            if (imaginary) ++i;
            if (imaginary) {
                if (seen_im) raise(errc::parse_error, "duplicate imaginary part in '" + std::string(s) + "'");
                if (digits.empty() || digits == "+")
                    im = Integer(1);
                else if (digits == "-")
                    im = Integer(-1);
                else
                    im = Integer::parse(digits);
                seen_im = true;
            } else {
                if (seen_re || digits.empty() || digits == "+" || digits == "-")
                    raise(errc::parse_error, "bad Gaussian literal '" + std::string(s) + "'");
                re = Integer::parse(digits);
                seen_re = true;
            }
        }
        if (!seen_re && !seen_im) raise(errc::parse_error, "bad Gaussian literal '" + std::string(s) + "'");
        return {re, im};
    }

    std::string spec() const { return "Zi"; }
    bool finite() const { return false; }
    bool characteristic_zero() const { return true; }
    bool same_ring(const GaussianRing&) const { return true; }

    std::vector<RingAutomorphism<GaussianRing>> automorphisms() const {
        RingAutomorphism<GaussianRing> conjugation{
            "conj", 2, [](const Element& x) { return Element{x.re, -x.im}; }};
        return {identity_automorphism(*this), conjugation};
    }
};

// ---------------------------------------------------------------------------
// B[x]
// ---------------------------------------------------------------------------

template <typename B>
class PolynomialRing {
public:
    using Base = B;
    using Element = UniPoly<B>;

    explicit PolynomialRing(B base, std::string var = "x")
        : base_(std::move(base)), var_(std::move(var)) {}

    const B& base() const { return base_; }
    const std::string& variable() const { return var_; }

    Element zero() const { return {}; }
    Element one() const { return poly_constant(base_, base_.one()); }
    Element variable_poly() const { return poly_monomial(base_, base_.one(), 1); }
    Element constant(const typename B::Element& a) const { return poly_constant(base_, a); }

    Element add(const Element& a, const Element& b) const { return poly_add(base_, a, b); }
    Element sub(const Element& a, const Element& b) const { return poly_sub(base_, a, b); }
    Element neg(const Element& a) const { return poly_neg(base_, a); }
    Element mul(const Element& a, const Element& b) const { return poly_mul(base_, a, b); }
    bool equal(const Element& a, const Element& b) const { return poly_equal(base_, a, b); }
    bool is_zero(const Element& a) const { return poly_degree(base_, a) < 0; }
    bool is_one(const Element& a) const {
        return poly_degree(base_, a) == 0 && base_.is_one(a.c[0]);
    }

    long degree(const Element& a) const { return poly_degree(base_, a); }

    // units of B[x] over an integral domain B are the units of B
    bool is_unit(const Element& a) const {
        return poly_degree(base_, a) == 0 && base_.is_unit(a.c[0]);
    }

    Element unit_inverse(const Element& a) const {
        if (!is_unit(a)) raise(errc::not_invertible, to_string(a) + " is not a unit in " + spec());
        return poly_constant(base_, base_.unit_inverse(a.c[0]));
    }

    Element divexact(const Element& a, const Element& b) const {
        return poly_divexact(base_, a, b);
    }

    Element from_int(long long k) const { return poly_constant(base_, base_.from_int(k)); }
    Element from_integer(const Integer& z) const { return poly_constant(base_, base_.from_integer(z)); }
    std::string to_string(const Element& a) const { return poly_to_string(base_, a, var_); }
    Element parse(std::string_view s) const { return poly_parse(base_, s, var_); }

    std::string spec() const { return "poly:" + base_.spec(); }
    bool finite() const { return false; }
    bool characteristic_zero() const { return base_.characteristic_zero(); }
    bool same_ring(const PolynomialRing& o) const {
        return var_ == o.var_ && base_.same_ring(o.base_);
    }

    // identity plus coefficientwise lifts of the base ring's automorphisms
    std::vector<RingAutomorphism<PolynomialRing>> automorphisms() const {
        std::vector<RingAutomorphism<PolynomialRing>> out{identity_automorphism(*this)};
        for (const auto& a : base_.automorphisms()) {
            if (a.is_identity_name()) continue;
            auto base_map = a.map;
            RingAutomorphism<PolynomialRing> lifted;
            lifted.name = a.name;
            lifted.claimed_order = a.claimed_order;
            lifted.map = [base_map](const Element& f) {
                Element g = f;
                for (auto& c : g.c) c = base_map(c);
                return g;
            };
            out.push_back(std::move(lifted));
        }
        return out;
    }

private:
    B base_;
    std::string var_;
};

static_assert(Ring<IntegerRing>);
static_assert(Ring<PrimeField>);
static_assert(Ring<GaussianRing>);
static_assert(Ring<PolynomialRing<IntegerRing>>);
static_assert(Ring<PolynomialRing<GaussianRing>>);

// Finite rings additionally enumerate their elements.
template <typename R>
concept FiniteRing = Ring<R> && requires(const R& r, const typename R::Element& a, uint64_t i) {
    { r.size() } -> std::same_as<uint64_t>;
    { r.element_at(i) } -> std::same_as<typename R::Element>;
    { r.index_of(a) } -> std::same_as<uint64_t>;
};

static_assert(FiniteRing<PrimeField>);

// ---------------------------------------------------------------------------
// automorphism lookup / order
// ---------------------------------------------------------------------------

template <Ring R>
RingAutomorphism<R> find_automorphism(const R& ring, std::string_view name) {
    std::string n = name.empty() ? "id" : std::string(name);
    for (auto& a : ring.automorphisms())
        if (a.name == n) return a;
    raise(errc::invalid_ring_spec, "ring " + ring.spec() + " has no automorphism named '" + n + "'");
}

// Element streams: index -> element maps yielding pairwise-distinct elements,
// nullopt once exhausted. These feed the distinct-image sampler and the witness
// generators, which need a deterministic supply of distinct ring elements.
template <Ring R>
using ElementStream = std::function<std::optional<typename R::Element>(uint64_t)>;

// start, start+1, start+2, ... through the canonical image of Z; only
// pairwise distinct in characteristic zero.
template <Ring R>
ElementStream<R> counting_stream(const R& ring, long long start = 0) {
    if (!ring.characteristic_zero())
        raise(errc::domain_error, "counting stream needs characteristic zero, got " + ring.spec());
    return [ring, start](uint64_t i) -> std::optional<typename R::Element> {
        return ring.from_int(start + static_cast<long long>(i));
    };
}

// All of F_p in residue order.
inline ElementStream<PrimeField> enumeration_stream(const PrimeField& ring) {
    return [ring](uint64_t i) -> std::optional<PrimeField::Element> {
        if (i >= ring.size()) return std::nullopt;
        return ring.element_at(i);
    };
}

// Z[i] ordered by shells max(|a|,|b|) = 0, 1, 2, ... and lexicographically by
// (a, b) within a shell.
inline ElementStream<GaussianRing> gaussian_stream(const GaussianRing& ring,
                                                   bool include_zero = true) {
    return [ring, include_zero](uint64_t i) -> std::optional<GaussianInt> {
        uint64_t idx = include_zero ? i : i + 1;
        if (idx == 0) return ring.zero();
        // shell s > 0 holds (2s+1)^2 - (2s-1)^2 = 8s points; shells 1..s-1
        // plus the origin hold (2s-1)^2 points in total.
        uint64_t s = 1;
        while ((2 * s + 1) * (2 * s + 1) <= idx) ++s;
        uint64_t off = idx - (2 * s - 1) * (2 * s - 1);
        long long ss = static_cast<long long>(s);
        long long side = 2 * ss + 1;
        // enumerate the shell in lex (a, b) order: a = -s edge, interior rows
        // with b = +-s, then a = +s edge
        long long a, b;
        if (off < static_cast<uint64_t>(side)) {
            a = -ss;
            b = -ss + static_cast<long long>(off);
        } else if (off < static_cast<uint64_t>(side) + 2 * (static_cast<uint64_t>(side) - 2)) {
            uint64_t k = off - static_cast<uint64_t>(side);
            a = -ss + 1 + static_cast<long long>(k / 2);
            b = (k % 2 == 0) ? -ss : ss;
        } else {
            uint64_t k = off - static_cast<uint64_t>(side) - 2 * (static_cast<uint64_t>(side) - 2);
            a = ss;
            b = -ss + static_cast<long long>(k);
        }
        return ring.make(Integer(a), Integer(b));
    };
}

// Default probe sets used by automorphism_order and identity detection.
inline std::vector<Integer> probe_elements(const IntegerRing& ring, size_t count) {
    std::vector<Integer> out;
    for (size_t i = 0; i < count; ++i) out.push_back(ring.from_int(static_cast<long long>(i) - 8));
    return out;
}

inline std::vector<PrimeField::Element> probe_elements(const PrimeField& ring, size_t count) {
    std::vector<PrimeField::Element> out;
    uint64_t n = std::min<uint64_t>(ring.size(), count);
    for (uint64_t i = 0; i < n; ++i) out.push_back(ring.element_at(i));
    return out;
}

inline std::vector<GaussianInt> probe_elements(const GaussianRing& ring, size_t count) {
    std::vector<GaussianInt> out;
    auto stream = gaussian_stream(ring);
    for (uint64_t i = 0; i < count; ++i) out.push_back(*stream(i));
    return out;
}

template <typename B>
std::vector<UniPoly<B>> probe_elements(const PolynomialRing<B>& ring, size_t count) {
    std::vector<UniPoly<B>> out;
    auto base_probes = probe_elements(ring.base(), count);
    // constants plus a few low-degree monomials built from them
    for (size_t i = 0; i < base_probes.size() && out.size() < count; ++i)
        out.push_back(ring.constant(base_probes[i]));
    for (size_t k = 1; k <= 3 && out.size() < count; ++k)
        for (size_t i = 0; i < base_probes.size() && out.size() < count; ++i)
            out.push_back(poly_monomial(ring.base(), base_probes[i], k));
    return out;
}

// Least m <= cap with delta^m fixing every probe element, or nullopt.
// Probes are the finite enumeration when available, otherwise a counting
// prefix; the found order is cross-checked on a second, wider probe set.
template <Ring R>
std::optional<int> automorphism_order(const R& ring, const RingAutomorphism<R>& delta, int cap,
                                      const std::vector<typename R::Element>& extra_probes = {}) {
    if (cap < 1) raise(errc::domain_error, "automorphism order cap must be >= 1");
    std::vector<typename R::Element> probes = probe_elements(ring, 64);
    for (const auto& e : extra_probes) probes.push_back(e);
    auto fixes_all = [&](const std::vector<typename R::Element>& xs, int power) {
        for (const auto& x : xs) {
            auto y = x;
            for (int k = 0; k < power; ++k) y = delta(y);
            if (!ring.equal(y, x)) return false;
        }
        return true;
    };
    for (int m = 1; m <= cap; ++m) {
        if (fixes_all(probes, m)) {
            auto wide = probe_elements(ring, 256);
            if (fixes_all(wide, m)) return m;
        }
    }
    return std::nullopt;
}

// Detects the identity automorphism on the probe set; used to simplify
// compositions like conj.conj back to id in normalized automorphism output.
template <Ring R>
RingAutomorphism<R> simplify_automorphism(const R& ring, RingAutomorphism<R> delta) {
    if (delta.is_identity_name()) return delta;
    for (const auto& x : probe_elements(ring, 128))
        if (!ring.equal(delta(x), x)) return delta;
    return identity_automorphism(ring);
}

} // namespace tconj
