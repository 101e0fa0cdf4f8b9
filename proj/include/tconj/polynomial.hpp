// Univariate polynomials with coefficients in an arbitrary exact ring R.
// The coefficient vector is little-endian (c[k] multiplies x^k) and carries
// no trailing zeros; the zero polynomial is the empty vector with degree
// sentinel -1. PolynomialRing in rings.hpp wraps this representation to make
// R[x] itself usable as a coefficient ring.
#pragma once

#include <string>
#include <vector>

#include "tconj/error.hpp"

namespace tconj {

template <typename R>
struct UniPoly {
    std::vector<typename R::Element> c;
};

template <typename R>
long poly_degree(const R& ring, const UniPoly<R>& f) {
    for (size_t i = f.c.size(); i-- > 0;)
        if (!ring.is_zero(f.c[i])) return static_cast<long>(i);
    return -1;
}

template <typename R>
UniPoly<R> poly_trim(const R& ring, UniPoly<R> f) {
    while (!f.c.empty() && ring.is_zero(f.c.back())) f.c.pop_back();
    return f;
}

template <typename R>
UniPoly<R> poly_zero(const R&) {
    return {};
}

template <typename R>
UniPoly<R> poly_constant(const R& ring, const typename R::Element& a) {
    if (ring.is_zero(a)) return {};
    return {{a}};
}

// the monomial a * x^k
template <typename R>
UniPoly<R> poly_monomial(const R& ring, const typename R::Element& a, size_t k) {
    if (ring.is_zero(a)) return {};
    UniPoly<R> f;
    f.c.assign(k + 1, ring.zero());
    f.c[k] = a;
    return f;
}

template <typename R>
UniPoly<R> poly_add(const R& ring, const UniPoly<R>& f, const UniPoly<R>& g) {
    UniPoly<R> r;
    size_t n = std::max(f.c.size(), g.c.size());
    r.c.reserve(n);
    for (size_t i = 0; i < n; ++i) {
        auto a = i < f.c.size() ? f.c[i] : ring.zero();
        auto b = i < g.c.size() ? g.c[i] : ring.zero();
        r.c.push_back(ring.add(a, b));
    }
    return poly_trim(ring, std::move(r));
}

template <typename R>
UniPoly<R> poly_neg(const R& ring, const UniPoly<R>& f) {
    UniPoly<R> r = f;
    for (auto& a : r.c) a = ring.neg(a);
    return r;
}

template <typename R>
UniPoly<R> poly_sub(const R& ring, const UniPoly<R>& f, const UniPoly<R>& g) {
    return poly_add(ring, f, poly_neg(ring, g));
}

template <typename R>
UniPoly<R> poly_mul(const R& ring, const UniPoly<R>& f, const UniPoly<R>& g) {
    if (f.c.empty() || g.c.empty()) return {};
    UniPoly<R> r;
    r.c.assign(f.c.size() + g.c.size() - 1, ring.zero());
    for (size_t i = 0; i < f.c.size(); ++i)
        for (size_t j = 0; j < g.c.size(); ++j)
            r.c[i + j] = ring.add(r.c[i + j], ring.mul(f.c[i], g.c[j]));
    return poly_trim(ring, std::move(r));
}

template <typename R>
UniPoly<R> poly_pow(const R& ring, const UniPoly<R>& f, unsigned long long e) {
    UniPoly<R> acc = poly_constant(ring, ring.one());
    UniPoly<R> sq = f;
    while (e != 0) {
        if (e & 1ULL) acc = poly_mul(ring, acc, sq);
        e >>= 1;
        if (e != 0) sq = poly_mul(ring, sq, sq);
    }
    return acc;
}

template <typename R>
typename R::Element poly_eval(const R& ring, const UniPoly<R>& f, const typename R::Element& x) {
    auto acc = ring.zero();
    for (size_t i = f.c.size(); i-- > 0;) acc = ring.add(ring.mul(acc, x), f.c[i]);
    return acc;
}

template <typename R>
bool poly_equal(const R& ring, const UniPoly<R>& f, const UniPoly<R>& g) {
    long df = poly_degree(ring, f), dg = poly_degree(ring, g);
    if (df != dg) return false;
    for (long i = 0; i <= df; ++i)
        if (!ring.equal(f.c[static_cast<size_t>(i)], g.c[static_cast<size_t>(i)])) return false;
    return true;
}

// Exact division in R[x]: requires g | f over the integral domain R.
// Works top-down; every leading-coefficient division is exact when the
// quotient exists, and a nonzero remainder is reported as domain_error.
template <typename R>
UniPoly<R> poly_divexact(const R& ring, const UniPoly<R>& f, const UniPoly<R>& g) {
    long dg = poly_degree(ring, g);
    if (dg < 0) raise(errc::domain_error, "polynomial division by zero");
    UniPoly<R> rem = poly_trim(ring, f);
    long dr = poly_degree(ring, rem);
    if (dr < 0) return {};
    if (dr < dg) raise(errc::domain_error, "inexact polynomial division");
    UniPoly<R> q;
    q.c.assign(static_cast<size_t>(dr - dg) + 1, ring.zero());
    const auto& lead_g = g.c[static_cast<size_t>(dg)];
    while ((dr = poly_degree(ring, rem)) >= dg) {
        auto coeff = ring.divexact(rem.c[static_cast<size_t>(dr)], lead_g);
        size_t shift = static_cast<size_t>(dr - dg);
        q.c[shift] = coeff;
        rem = poly_sub(ring, rem, poly_mul(ring, poly_monomial(ring, coeff, shift), g));
    }
    if (poly_degree(ring, rem) >= 0) raise(errc::domain_error, "inexact polynomial division");
    return poly_trim(ring, std::move(q));
}

// Emission follows the element-literal grammar: terms in descending degree,
// '^' exponent marker. Coefficients from a base ring whose literals contain
// '+' or '-' internally (Gaussian integers, nested polynomials) are emitted
// parenthesised so the term structure stays unambiguous.
template <typename R>
std::string poly_to_string(const R& ring, const UniPoly<R>& f, const std::string& var) {
    long d = poly_degree(ring, f);
    if (d < 0) return "0";
    std::string out;
    bool first = true;
    for (long i = d; i >= 0; --i) {
        const auto& a = f.c[static_cast<size_t>(i)];
        if (ring.is_zero(a)) continue;
        std::string lit = ring.to_string(a);
        bool negated = false;
        if (!first && lit.size() > 1 && lit[0] == '-' &&
            lit.find('+', 1) == std::string::npos && lit.find('-', 1) == std::string::npos) {
            lit = lit.substr(1);
            negated = true;
        }
        // parenthesise coefficients whose literal has internal term structure
        // or mentions the variable itself (nested polynomial coefficients)
        bool needs_parens = lit.find('+') != std::string::npos ||
                            lit.find('-', 1) != std::string::npos ||
                            lit.find(var) != std::string::npos;
        if (!first) out += negated ? " - " : " + ";
        std::string coeff;
        if (i == 0) {
            coeff = needs_parens ? "(" + lit + ")" : lit;
        } else if (lit == "1") {
            coeff = "";
        } else if (lit == "-1" && !needs_parens) {
            coeff = "-";
        } else {
            coeff = needs_parens ? "(" + lit + ")" : lit;
        }
        out += coeff;
        if (i > 0) {
            out += var;
            if (i > 1) out += "^" + std::to_string(i);
        }
        first = false;
    }
    return out.empty() ? "0" : out;
}

namespace detail {

inline void skip_ws(std::string_view s, size_t& i) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
}

} // namespace detail

// Parses the grammar "c_k x^k + ... + c_0". A coefficient is either a
// parenthesised base-ring literal or a bare literal free of '+', '-', and
// the variable name. "x", "-x^2", "3x" and "(1+2i)x^2" are all accepted.
template <typename R>
UniPoly<R> poly_parse(const R& ring, std::string_view s, const std::string& var) {
    UniPoly<R> out;
    size_t i = 0;
    detail::skip_ws(s, i);
    if (i == s.size()) raise(errc::parse_error, "empty polynomial literal");
    bool first = true;
    while (i < s.size()) {
        int sign = 1;
        detail::skip_ws(s, i);
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
            sign = s[i] == '-' ? -1 : 1;
            ++i;
            detail::skip_ws(s, i);
        } else if (!first) {
            raise(errc::parse_error, "expected '+' or '-' between polynomial terms");
        }
        first = false;

        std::string coeff_lit;
        bool have_coeff = false;
        if (i < s.size() && s[i] == '(') {
            size_t depth = 1;
            size_t j = i + 1;
            while (j < s.size() && depth > 0) {
                if (s[j] == '(') ++depth;
                if (s[j] == ')') --depth;
                ++j;
            }
            if (depth != 0) raise(errc::parse_error, "unbalanced parentheses in polynomial literal");
            coeff_lit = std::string(s.substr(i + 1, j - i - 2));
            have_coeff = true;
            i = j;
        } else {
            size_t j = i;
            while (j < s.size() && s[j] != '+' && s[j] != '-' && s[j] != ' ' &&
                   s.compare(j, var.size(), var) != 0)
                ++j;
            if (j > i) {
                coeff_lit = std::string(s.substr(i, j - i));
                have_coeff = true;
                i = j;
            }
        }
        detail::skip_ws(s, i);

        size_t exponent = 0;
        if (i < s.size() && s.compare(i, var.size(), var) == 0) {
            i += var.size();
            exponent = 1;
            if (i < s.size() && s[i] == '^') {
                ++i;
                size_t j = i;
                while (j < s.size() && s[j] >= '0' && s[j] <= '9') ++j;
                if (j == i) raise(errc::parse_error, "missing exponent after '^'");
                exponent = static_cast<size_t>(std::stoull(std::string(s.substr(i, j - i))));
                i = j;
            }
        } else if (!have_coeff) {
            raise(errc::parse_error, "empty polynomial term");
        }

        auto coeff = have_coeff ? ring.parse(coeff_lit) : ring.one();
        if (sign < 0) coeff = ring.neg(coeff);
        out = poly_add(ring, out, poly_monomial(ring, coeff, exponent));
        detail::skip_ws(s, i);
    }
    return out;
}

} // namespace tconj
