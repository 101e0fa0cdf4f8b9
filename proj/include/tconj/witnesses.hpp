// Separating invariants and explicit witness families. The two necessary
// conditions for twisted conjugacy with equal determinants -- equal n-th
// trace powers (even contragredient parity) and equal antitrace squares
// (odd parity, 2x2 blocks) -- are evaluated on folded matrices B = XD; the
// family generators produce arbitrarily long prefixes of matrix families on
// which those invariants are pairwise distinct, certifying R(phi) >= N.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tconj/error.hpp"
#include "tconj/matrix.hpp"
#include "tconj/polynomial.hpp"
#include "tconj/rings.hpp"
#include "tconj/sampler.hpp"
#include "tconj/twisted.hpp"

namespace tconj {

enum class Parity { even, odd };

inline std::string parity_name(Parity p) { return p == Parity::even ? "even" : "odd"; }

template <Ring R>
typename R::Element ring_pow(const R& ring, const typename R::Element& base,
                             unsigned long long e) {
    auto acc = ring.one();
    auto sq = base;
    while (e != 0) {
        if (e & 1ULL) acc = ring.mul(acc, sq);
        e >>= 1;
        if (e != 0) sq = ring.mul(sq, sq);
    }
    return acc;
}

// psi_m for the even parity is tr(P_x^m) with P_x = [[x,1],[-1,0]] and has
// degree exactly m; for the odd parity it is tr((P_x Lambda(P_x))^m) with
// P_x = [[1,x],[0,1]], i.e. the trace of [[1-x^2,x],[-x,1]]^m, of degree 2m.
// Computed symbolically over Z[x] by matrix powering.
inline UniPoly<IntegerRing> psi_poly(unsigned m, Parity parity) {
    if (m == 0) raise(errc::domain_error, "psi_poly needs m >= 1");
    IntegerRing z;
    PolynomialRing<IntegerRing> zx(z);
    using PM = Matrix<PolynomialRing<IntegerRing>>;
    PM p(zx, 2, 2);
    if (parity == Parity::even) {
        p.at(0, 0) = zx.variable_poly();
        p.at(0, 1) = zx.one();
        p.at(1, 0) = zx.neg(zx.one());
        p.at(1, 1) = zx.zero();
        return p.pow(m).trace();
    }
    p.at(0, 0) = zx.one();
    p.at(0, 1) = zx.variable_poly();
    p.at(1, 0) = zx.zero();
    p.at(1, 1) = zx.one();
    PM core = p * contragredient(p);
    return core.pow(m).trace();
}

// Transports an integer polynomial into any ring through the canonical map.
template <Ring R>
UniPoly<R> poly_into_ring(const R& ring, const UniPoly<IntegerRing>& f) {
    UniPoly<R> out;
    out.c.reserve(f.c.size());
    for (const auto& coeff : f.c) out.c.push_back(ring.from_integer(coeff));
    return poly_trim(ring, std::move(out));
}

// ---------------------------------------------------------------------------
// invariants
// ---------------------------------------------------------------------------

template <Ring R>
struct InvariantSpec {
    enum class Kind { trace_power, antitrace_square, orbit_trace_power };

    Kind kind;
    size_t n = 0; // trace exponent = full matrix dimension
    std::optional<RingAutomorphism<R>> delta;
    unsigned m = 1;
    Parity parity = Parity::even;
    std::optional<typename R::Element> d;

    static InvariantSpec trace_power(size_t n) { return {Kind::trace_power, n, {}, 1, Parity::even, {}}; }

    static InvariantSpec antitrace_square() {
        return {Kind::antitrace_square, 2, {}, 1, Parity::even, {}};
    }

    static InvariantSpec orbit_trace_power(size_t n, RingAutomorphism<R> delta, unsigned m,
                                           Parity parity, typename R::Element d) {
        return {Kind::orbit_trace_power, n, std::move(delta), m, parity, std::move(d)};
    }

    std::string describe() const {
        switch (kind) {
            case Kind::trace_power: return "tr^" + std::to_string(n);
            case Kind::antitrace_square: return "atr2";
            case Kind::orbit_trace_power:
                return "orbit(tr^" + std::to_string(n) + "," + delta->name + ",m=" +
                       std::to_string(m) + "," + parity_name(parity) + ")";
        }
        return "?";
    }
};

// Evaluates the invariant on one matrix. TracePower expects an n x n input;
// AntitraceSquare a 2x2 matrix or diag(*, W-hat) with zero off-blocks;
// OrbitTracePower the delta-fixed (n-1) x (n-1) core X of an X(d) member,
// assembling X^m(d~) internally before taking the n-th trace power.
template <Ring R>
typename R::Element invariant_eval(const InvariantSpec<R>& spec, const Matrix<R>& w) {
    const R& ring = w.ring();
    switch (spec.kind) {
        case InvariantSpec<R>::Kind::trace_power: {
            if (w.n() != spec.n)
                raise(errc::dimension_mismatch, "trace power invariant dimension mismatch");
            return ring_pow(ring, w.trace(), spec.n);
        }
        case InvariantSpec<R>::Kind::antitrace_square: {
            if (w.n() == 2) return ring_pow(ring, w.antitrace(), 2);
            auto blocks = block_split(w, 2);
            for (size_t i = 0; i < blocks.tr.rows(); ++i)
                for (size_t j = 0; j < blocks.tr.cols(); ++j)
                    if (!ring.is_zero(blocks.tr.at(i, j)) || !ring.is_zero(blocks.bl.at(j, i)))
                        raise(errc::shape_violation,
                              "antitrace square needs zero off-diagonal blocks");
            return ring_pow(ring, blocks.br.antitrace(), 2);
        }
        case InvariantSpec<R>::Kind::orbit_trace_power: {
            if (w.n() + 1 != spec.n)
                raise(errc::shape_violation, "orbit invariant expects the (n-1)-dimensional core");
            auto [powed, dt] = spec.parity == Parity::even
                                   ? orbit_power_even(w, *spec.d, *spec.delta, spec.m)
                                   : orbit_power_odd(w, *spec.d, *spec.delta, spec.m);
            return ring_pow(ring, corner_extend(powed, dt).trace(), spec.n);
        }
    }
    raise(errc::domain_error, "unreachable invariant kind");
}

// ---------------------------------------------------------------------------
// witness families
// ---------------------------------------------------------------------------

template <Ring R>
struct WitnessFamily {
    WitnessFamily(int theorem_, int case_no_, size_t n_, R ring_, typename R::Element d_)
        : theorem(theorem_), case_no(case_no_), n(n_), ring(std::move(ring_)), d(std::move(d_)) {}

    int theorem;
    int case_no;
    size_t n;
    R ring;
    typename R::Element d;
    std::vector<typename R::Element> params; // the chosen b_i or a_i
    std::vector<Matrix<R>> members;
    std::optional<RingAutomorphism<R>> delta; // theorem 2 only
    unsigned m = 1;                           // theorem 2 only

    Parity parity() const { return case_no == 1 ? Parity::even : Parity::odd; }
};

namespace detail {

// smallest-first deterministic streams for witness parameters: 1, 2, 3, ...
// over counting rings, graded-lexicographic nonzero elements over Z[i]
template <Ring R>
ElementStream<R> witness_stream(const R& ring) {
    if constexpr (std::is_same_v<R, GaussianRing>)
        return gaussian_stream(ring, /*include_zero=*/false);
    else
        return counting_stream(ring, 1);
}

} // namespace detail

// Theorem-1-style families over an infinite integral domain. Case 1 members
// realize arbitrary trace b_i at fixed determinant d; case 2 members are
// diag(I_{n-2}, [[d, b_i],[0,1]]) with b_i != 0, nonsymmetric bottom blocks,
// and pairwise-distinct antitrace squares.
template <Ring R>
WitnessFamily<R> gen_theorem1(const R& ring, int case_no, size_t n, const typename R::Element& d,
                              uint64_t count, std::optional<ElementStream<R>> stream = {}) {
    if (ring.finite())
        raise(errc::ring_not_infinite, ring.spec() + " is finite; the family needs an infinite domain");
    if (n < 3) raise(errc::dimension_too_small, "witness families need n >= 3");
    if (case_no != 1 && case_no != 2) raise(errc::domain_error, "case must be 1 or 2");

    WitnessFamily<R> fam(1, case_no, n, ring, d);
    if (count == 0) return fam;

    auto src = stream ? *stream : detail::witness_stream(ring);
    UniPoly<R> f = poly_monomial(ring, ring.one(), case_no == 1 ? n : 2);
    auto sampled = distinct_image_sampler(ring, f, src, count);
    fam.params = sampled.elements;

    for (const auto& b : fam.params) {
        Matrix<R> mtx = Matrix<R>::identity(ring, n);
        if (case_no == 1) {
            mtx.at(0, 0) = ring.add(b, ring.from_int(2 - static_cast<long long>(n)));
            mtx.at(0, 1) = d;
            mtx.at(1, 0) = ring.neg(ring.one());
            mtx.at(1, 1) = ring.zero();
        } else {
            mtx.at(n - 2, n - 2) = d;
            mtx.at(n - 2, n - 1) = b;
            mtx.at(n - 1, n - 1) = ring.one();
        }
        fam.members.push_back(std::move(mtx));
    }
    return fam;
}

// Theorem-2-style families A_i(d) over a characteristic-zero domain with a
// torsion ring automorphism delta. The parameters a_i come from the
// delta-fixed prime subring (the image of Z) and are separated through
// f(x) = (psi(x) + (n-3) + d~)^n, so the composite orbit invariants are
// pairwise distinct by construction.
template <Ring R>
WitnessFamily<R> gen_theorem2(const R& ring, int case_no, size_t n, const typename R::Element& d,
                              const RingAutomorphism<R>& delta, unsigned m, uint64_t count) {
    if (!ring.characteristic_zero())
        raise(errc::characteristic_not_zero, ring.spec() + " does not contain Z");
    if (n < 3) raise(errc::dimension_too_small, "witness families need n >= 3");
    if (case_no != 1 && case_no != 2) raise(errc::domain_error, "case must be 1 or 2");
    if (m == 0) raise(errc::unknown_order, "delta orbit length m must be >= 1");
    Parity parity = case_no == 1 ? Parity::even : Parity::odd;

    // delta^m (even) resp. delta^{2m} (odd) must restrict to the identity
    unsigned period = parity == Parity::even ? m : 2 * m;
    for (const auto& x : probe_elements(ring, 64)) {
        auto y = x;
        for (unsigned k = 0; k < period; ++k) y = delta(y);
        if (!ring.equal(y, x))
            raise(errc::unknown_order, "delta^" + std::to_string(period) +
                                           " is not the identity on " + ring.spec());
    }
    if (parity == Parity::odd && !ring.is_unit(d))
        raise(errc::not_invertible, ring.to_string(d) + " is not a unit in " + ring.spec());

    WitnessFamily<R> fam(2, case_no, n, ring, d);
    fam.delta = delta;
    fam.m = m;
    if (count == 0) return fam;

    // d~ from the matching orbit product
    typename R::Element dt = ring.one();
    if (parity == Parity::even) {
        auto cur = d;
        for (unsigned k = 0; k < m; ++k) {
            dt = ring.mul(dt, cur);
            cur = delta(cur);
        }
    } else {
        auto pos = d;
        auto neg = ring.unit_inverse(d);
        for (unsigned k = 0; k < 2 * m; ++k) {
            dt = ring.mul(dt, k % 2 == 0 ? pos : neg);
            pos = delta(pos);
            neg = delta(neg);
        }
    }

    UniPoly<R> psi = poly_into_ring(ring, psi_poly(m, parity));
    auto shift = ring.add(ring.from_int(static_cast<long long>(n) - 3), dt);
    UniPoly<R> f = poly_pow(ring, poly_add(ring, psi, poly_constant(ring, shift)), n);
    auto sampled = distinct_image_sampler(ring, f, counting_stream(ring, 1), count);
    fam.params = sampled.elements;

    for (const auto& a : fam.params) {
        Matrix<R> core = Matrix<R>::identity(ring, n - 1);
        if (parity == Parity::even) {
            core.at(0, 0) = a;
            core.at(0, 1) = ring.one();
            core.at(1, 0) = ring.neg(ring.one());
            core.at(1, 1) = ring.zero();
        } else {
            core.at(0, 1) = a;
        }
        fam.members.push_back(corner_extend(core, d));
    }
    return fam;
}

// The invariant that the family was generated to separate.
template <Ring R>
InvariantSpec<R> default_invariant(const WitnessFamily<R>& fam) {
    if (fam.theorem == 1)
        return fam.case_no == 1 ? InvariantSpec<R>::trace_power(fam.n)
                                : InvariantSpec<R>::antitrace_square();
    return InvariantSpec<R>::orbit_trace_power(fam.n, *fam.delta, fam.m, fam.parity(), fam.d);
}

// ---------------------------------------------------------------------------
// separation certificates
// ---------------------------------------------------------------------------

template <Ring R>
struct SeparationCertificate {
    std::vector<typename R::Element> values;
    bool separated = true;
    std::optional<std::pair<size_t, size_t>> collision;

    // a separated certificate over N members witnesses R(phi) >= N
    size_t bound() const { return values.size(); }
};

template <Ring R>
SeparationCertificate<R> certify_separation(const WitnessFamily<R>& fam,
                                            const InvariantSpec<R>& spec) {
    const R& ring = fam.ring;
    SeparationCertificate<R> cert;
    cert.values.reserve(fam.members.size());
    for (const auto& member : fam.members) {
        if (spec.kind == InvariantSpec<R>::Kind::orbit_trace_power) {
            // members are X(d) = diag(core, d); the orbit invariant takes the core
            size_t full = member.n();
            if (full != spec.n) raise(errc::shape_violation, "member dimension mismatch");
            for (size_t k = 0; k + 1 < full; ++k)
                if (!ring.is_zero(member.at(full - 1, k)) || !ring.is_zero(member.at(k, full - 1)))
                    raise(errc::shape_violation, "member is not of corner form X(d)");
            if (spec.d && !ring.equal(member.at(full - 1, full - 1), *spec.d))
                raise(errc::shape_violation, "member corner differs from the invariant's d");
            Matrix<R> core(ring, full - 1, full - 1);
            for (size_t i = 0; i + 1 < full; ++i)
                for (size_t j = 0; j + 1 < full; ++j) core.at(i, j) = member.at(i, j);
            cert.values.push_back(invariant_eval(spec, core));
        } else {
            cert.values.push_back(invariant_eval(spec, member));
        }
    }
    for (size_t i = 0; i < cert.values.size() && cert.separated; ++i)
        for (size_t j = i + 1; j < cert.values.size(); ++j)
            if (ring.equal(cert.values[i], cert.values[j])) {
                cert.separated = false;
                cert.collision = {i, j};
                break;
            }
    return cert;
}

// ---------------------------------------------------------------------------
// exhaustive oracles over finite groups
// ---------------------------------------------------------------------------

template <FiniteRing R>
struct ObstructionVerdict {
    std::optional<Matrix<R>> conjugator;
    uint64_t checked = 0;
    // invertibility of B_j - B_j^T (2x2 bottom block nonsymmetric), the
    // precondition of the block argument; reported when B_j has the
    // diag(*, 2x2) shape
    std::optional<bool> bottom_nonsymmetric;
};

// Scans every C in G for B_i = C B_j gamma(C) C^T. A found conjugator is
// re-verified before being returned.
template <FiniteRing R>
ObstructionVerdict<R> obstruction_exhaustive(const Matrix<R>& b_i, const Matrix<R>& b_j,
                                             const FiniteMatrixGroup<R>& g,
                                             const CentralMap<R>& gamma,
                                             uint64_t cap = group_candidate_cap()) {
    if (g.size() > cap)
        raise(errc::too_large, "group of order " + std::to_string(g.size()) + " exceeds cap");
    if (b_i.n() != g.dimension() || b_j.n() != g.dimension())
        raise(errc::dimension_mismatch, "witness dimension does not match the group");

    ObstructionVerdict<R> out;
    const R& ring = b_i.ring();
    if (b_j.n() >= 3) {
        auto blocks = block_split(b_j, 2);
        bool block_diag = true;
        for (size_t i = 0; i < blocks.tr.rows() && block_diag; ++i)
            for (size_t j = 0; j < blocks.tr.cols(); ++j)
                if (!ring.is_zero(blocks.tr.at(i, j)) || !ring.is_zero(blocks.bl.at(j, i))) {
                    block_diag = false;
                    break;
                }
        if (block_diag) out.bottom_nonsymmetric = !ring.is_zero(blocks.br.antitrace());
    } else if (b_j.n() == 2) {
        out.bottom_nonsymmetric = !ring.is_zero(b_j.antitrace());
    }

    for (const auto& c : g.elements()) {
        ++out.checked;
        auto z = gamma.scalar_of(c);
        Matrix<R> rhs = (c * b_j * c.transpose()).scalar_mul(z);
        if (rhs == b_i) {
            Matrix<R> verify = c * b_j * central_apply(gamma, c) * c.transpose();
            if (verify != b_i) raise(errc::domain_error, "conjugator failed re-verification");
            out.conjugator = c;
            return out;
        }
    }
    return out;
}

template <FiniteRing R>
struct ImplicationReport {
    size_t classes = 0;
    uint64_t pairs_same_det = 0;
    std::vector<std::pair<uint32_t, uint32_t>> violations;
};

namespace detail {

template <FiniteRing R, typename Value>
ImplicationReport<R> implication_scan(const FiniteMatrixGroup<R>& g, const TwistedPartition& part,
                                      const Value& value_of) {
    ImplicationReport<R> out;
    out.classes = part.classes.size();
    const R& ring = g.ring();
    std::vector<typename R::Element> dets, values;
    dets.reserve(g.size());
    values.reserve(g.size());
    for (const auto& x : g.elements()) {
        dets.push_back(x.det());
        values.push_back(value_of(x));
    }
    for (const auto& cls : part.classes)
        for (size_t a = 0; a < cls.size(); ++a)
            for (size_t b = a + 1; b < cls.size(); ++b) {
                uint32_t i = cls[a], j = cls[b];
                if (!ring.equal(dets[i], dets[j])) continue;
                ++out.pairs_same_det;
                if (!ring.equal(values[i], values[j])) out.violations.emplace_back(i, j);
            }
    return out;
}

} // namespace detail

// Even shape phi = phi_D Gamma: every twisted pair X ~ Y with equal
// determinants must satisfy (tr XD)^n = (tr YD)^n.
template <FiniteRing R>
ImplicationReport<R> oracle_implication_even(const FiniteMatrixGroup<R>& g, const Matrix<R>& d,
                                             const CentralMap<R>& gamma) {
    StandardAutomorphism<R> phi(d, 0, gamma, identity_automorphism(g.ring()));
    auto part = twisted_classes(g, phi);
    size_t n = g.dimension();
    return detail::implication_scan(g, part, [&](const Matrix<R>& x) {
        return ring_pow(g.ring(), (x * d).trace(), n);
    });
}

// Odd shape phi = phi_D Lambda Gamma over 2x2 groups: every twisted pair
// with equal determinants must satisfy (atr XD)^2 = (atr YD)^2.
template <FiniteRing R>
ImplicationReport<R> oracle_implication_odd(const FiniteMatrixGroup<R>& g, const Matrix<R>& d,
                                            const CentralMap<R>& gamma) {
    if (g.dimension() != 2)
        raise(errc::dimension_mismatch, "the antitrace implication is a 2x2 statement");
    StandardAutomorphism<R> phi(d, 1, gamma, identity_automorphism(g.ring()));
    auto part = twisted_classes(g, phi);
    return detail::implication_scan(g, part, [&](const Matrix<R>& x) {
        return ring_pow(g.ring(), (x * d).antitrace(), 2);
    });
}

} // namespace tconj
