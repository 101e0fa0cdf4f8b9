// Twisted conjugacy machinery: the action x = c y phi(c)^{-1}, exhaustive
// Reidemeister class enumeration over finite matrix groups with a Burnside
// cross-check, a brute-force conjugator search, and the delta-orbit
// "multiplied equality" products that drive the torsion-automorphism
// separation argument.
#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tconj/automorphism.hpp"
#include "tconj/error.hpp"
#include "tconj/matrix.hpp"
#include "tconj/rings.hpp"
#include "tconj/rng.hpp"

namespace tconj {

enum class GroupKind { GL, SL };

inline std::string group_kind_name(GroupKind k) { return k == GroupKind::GL ? "GL" : "SL"; }

inline uint64_t group_candidate_cap() {
    if (const char* env = std::getenv("TCONJ_GROUP_CAP")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
    }
    return 20000000ULL; // reaches GL_3(F_5): 5^9 candidates
}

// Exhaustively enumerated GL_n or SL_n over a finite ring, in odometer
// (row-major lexicographic) order. Closure under products is verified
// exhaustively for small groups and by seeded sampling above that; inverse
// closure is always verified in full.
template <FiniteRing R>
class FiniteMatrixGroup {
public:
    using Key = std::vector<uint64_t>;

    static FiniteMatrixGroup enumerate(const R& ring, size_t n, GroupKind kind,
                                       uint64_t cap = group_candidate_cap()) {
        uint64_t candidates = 1;
        for (size_t k = 0; k < n * n; ++k) {
            if (candidates > cap / ring.size())
                raise(errc::too_large, "group enumeration would scan " + ring.spec() + "^" +
                                           std::to_string(n * n) + " > cap " + std::to_string(cap));
            candidates *= ring.size();
        }

        FiniteMatrixGroup g(ring, n, kind);
        std::vector<uint64_t> odo(n * n, 0);
        Matrix<R> m(ring, n, n);
        while (true) {
            for (size_t k = 0; k < n * n; ++k) m.at(k / n, k % n) = ring.element_at(odo[k]);
            auto d = m.det();
            bool keep = kind == GroupKind::GL ? ring.is_unit(d) : ring.is_one(d);
            if (keep) {
                g.index_.emplace(g.key_of(m), static_cast<uint32_t>(g.elems_.size()));
                g.elems_.push_back(m);
            }
            size_t k = n * n;
            while (k > 0) {
                --k;
                if (++odo[k] < ring.size()) break;
                odo[k] = 0;
                if (k == 0) goto done;
            }
        }
    done:
        g.verify_closure();
        return g;
    }

    const R& ring() const { return ring_; }
    size_t dimension() const { return n_; }
    GroupKind kind() const { return kind_; }
    size_t size() const { return elems_.size(); }
    const std::vector<Matrix<R>>& elements() const { return elems_; }
    const Matrix<R>& operator[](size_t i) const { return elems_[i]; }

    std::optional<uint32_t> index_of(const Matrix<R>& m) const {
        auto it = index_.find(key_of(m));
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    uint32_t require_index(const Matrix<R>& m) const {
        auto i = index_of(m);
        if (!i) raise(errc::domain_error, "matrix is not a group member");
        return *i;
    }

private:
    Key key_of(const Matrix<R>& m) const {
        Key k;
        k.reserve(n_ * n_);
        for (size_t i = 0; i < n_; ++i)
            for (size_t j = 0; j < n_; ++j) k.push_back(ring_.index_of(m.at(i, j)));
        return k;
    }

    void verify_closure() const {
        if (elems_.empty()) raise(errc::domain_error, "empty group enumeration");
        for (const auto& a : elems_)
            if (!index_.count(key_of(a.inverse())))
                raise(errc::domain_error, "group is not closed under inverses");
        const uint64_t sz = elems_.size();
        if (sz * sz <= 4000000ULL) {
            for (const auto& a : elems_)
                for (const auto& b : elems_)
                    if (!index_.count(key_of(a * b)))
                        raise(errc::domain_error, "group is not closed under products");
        } else {
            Rng rng(0x5eed);
            for (int k = 0; k < 100000; ++k) {
                const auto& a = elems_[rng.below(sz)];
                const auto& b = elems_[rng.below(sz)];
                if (!index_.count(key_of(a * b)))
                    raise(errc::domain_error, "group is not closed under products");
            }
        }
    }

    FiniteMatrixGroup(R ring, size_t n, GroupKind kind)
        : ring_(std::move(ring)), n_(n), kind_(kind) {}

    R ring_;
    size_t n_;
    GroupKind kind_;
    std::vector<Matrix<R>> elems_;
    std::map<Key, uint32_t> index_;
};

// c y phi(c)^{-1}; with c = I this is y, with phi = id ordinary conjugation.
template <Ring R, typename Phi>
Matrix<R> twisted_act(const Matrix<R>& c, const Matrix<R>& y, const Phi& phi) {
    return c * y * phi(c).inverse();
}

struct TwistedPartition {
    std::vector<std::vector<uint32_t>> classes; // disjoint, sorted, covering
    std::vector<uint32_t> class_of;             // element index -> class id

    size_t reidemeister_number() const { return classes.size(); }
};

namespace detail {

template <FiniteRing R, typename Phi>
std::vector<Matrix<R>> twisted_translators(const FiniteMatrixGroup<R>& g, const Phi& phi) {
    std::vector<Matrix<R>> tinv;
    tinv.reserve(g.size());
    for (const auto& c : g.elements()) tinv.push_back(phi(c).inverse());
    return tinv;
}

template <FiniteRing R, typename Phi>
void require_automorphism(const FiniteMatrixGroup<R>& g, const Phi& phi) {
    auto verdict = check_automorphism<R>(phi, g.elements());
    if (!verdict.ok)
        raise(errc::not_automorphism, "map is not an automorphism of the group: " + verdict.reason);
}

} // namespace detail

// Orbit partition of the action c . y = c y phi(c)^{-1}. The orbit of y is
// exactly {c y phi(c)^{-1} : c in G}, so each class costs |G| products.
template <FiniteRing R, typename Phi>
TwistedPartition twisted_classes(const FiniteMatrixGroup<R>& g, const Phi& phi) {
    detail::require_automorphism(g, phi);
    auto tinv = detail::twisted_translators(g, phi);
    TwistedPartition part;
    part.class_of.assign(g.size(), UINT32_MAX);
    for (uint32_t y = 0; y < g.size(); ++y) {
        if (part.class_of[y] != UINT32_MAX) continue;
        uint32_t cid = static_cast<uint32_t>(part.classes.size());
        part.classes.emplace_back();
        for (uint32_t c = 0; c < g.size(); ++c) {
            Matrix<R> x = g[c] * g[y] * tinv[c];
            uint32_t xi = g.require_index(x);
            if (part.class_of[xi] == UINT32_MAX) {
                part.class_of[xi] = cid;
                part.classes[cid].push_back(xi);
            } else if (part.class_of[xi] != cid) {
                raise(errc::domain_error, "twisted orbits are not disjoint");
            }
        }
        std::sort(part.classes[cid].begin(), part.classes[cid].end());
    }
    return part;
}

// (1/|G|) sum_g |Fix(g)| with Fix(g) = {x : g x phi(g)^{-1} = x}; equals the
// class count by Burnside's lemma and serves as an independent oracle for
// the partition enumerator.
template <FiniteRing R, typename Phi>
uint64_t burnside_reidemeister(const FiniteMatrixGroup<R>& g, const Phi& phi) {
    detail::require_automorphism(g, phi);
    auto tinv = detail::twisted_translators(g, phi);
    uint64_t fixed = 0;
    for (uint32_t c = 0; c < g.size(); ++c)
        for (uint32_t y = 0; y < g.size(); ++y)
            if (g[c] * g[y] * tinv[c] == g[y]) ++fixed;
    if (fixed % g.size() != 0)
        raise(errc::domain_error, "Burnside sum is not divisible by the group order");
    return fixed / g.size();
}

// Some Z in G with X = Z Y phi(Z)^{-1}, or nullopt after exhausting G.
template <FiniteRing R, typename Phi>
std::optional<Matrix<R>> solve_twisted(const Matrix<R>& x, const Matrix<R>& y,
                                       const Phi& phi, const FiniteMatrixGroup<R>& g) {
    detail::require_automorphism(g, phi);
    for (const auto& z : g.elements()) {
        if (z * y * phi(z).inverse() == x) {
            if (twisted_act(z, y, phi) != x)
                raise(errc::domain_error, "twisted solution failed re-verification");
            return z;
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// delta-orbit products (multiplied twisted-conjugacy equalities)
// ---------------------------------------------------------------------------

template <Ring R>
void require_delta_fixed(const Matrix<R>& x, const RingAutomorphism<R>& delta) {
    if (entrywise(delta, x) != x)
        raise(errc::not_delta_fixed, "matrix entries are not fixed by " + delta.name);
}

// (X^m, d~) with d~ = d * delta(d) * ... * delta^{m-1}(d). Assembling
// X^m(d~) is the caller's corner_extend.
template <Ring R>
std::pair<Matrix<R>, typename R::Element> orbit_power_even(const Matrix<R>& x,
                                                           const typename R::Element& d,
                                                           const RingAutomorphism<R>& delta,
                                                           unsigned m) {
    if (m == 0) raise(errc::domain_error, "orbit power needs m >= 1");
    require_delta_fixed(x, delta);
    const R& ring = x.ring();
    auto dt = ring.one();
    auto cur = d;
    for (unsigned k = 0; k < m; ++k) {
        dt = ring.mul(dt, cur);
        cur = delta(cur);
    }
    return {x.pow(m), dt};
}

// ((X Lambda(X))^m, d~) with the alternating product
// d~ = d delta(d^{-1}) delta^2(d) ... delta^{2m-1}(d^{-1}); d must be a unit.
template <Ring R>
std::pair<Matrix<R>, typename R::Element> orbit_power_odd(const Matrix<R>& x,
                                                          const typename R::Element& d,
                                                          const RingAutomorphism<R>& delta,
                                                          unsigned m) {
    if (m == 0) raise(errc::domain_error, "orbit power needs m >= 1");
    require_delta_fixed(x, delta);
    const R& ring = x.ring();
    if (!ring.is_unit(d))
        raise(errc::not_invertible, ring.to_string(d) + " is not a unit in " + ring.spec());
    auto dt = ring.one();
    auto pos = d;
    auto neg = ring.unit_inverse(d);
    for (unsigned k = 0; k < 2 * m; ++k) {
        dt = ring.mul(dt, k % 2 == 0 ? pos : neg);
        pos = delta(pos);
        neg = delta(neg);
    }
    Matrix<R> core = x * contragredient(x);
    return {core.pow(m), dt};
}

template <Ring R>
struct MultipliedIdentity {
    bool holds = false;
    Matrix<R> lhs, rhs;
    typename R::Element t_scalar;
};

namespace detail {

template <Ring R>
void require_delta_power_identity(const R& ring, const RingAutomorphism<R>& delta, unsigned power) {
    for (const auto& x : probe_elements(ring, 64)) {
        auto y = x;
        for (unsigned k = 0; k < power; ++k) y = delta(y);
        if (!ring.equal(y, x))
            raise(errc::unknown_order,
                  "delta^" + std::to_string(power) + " is not the identity on " + ring.spec());
    }
}

} // namespace detail

// Even-parity multiplied identity: defines X(d) := Z Y(d) gamma(db(Z^-1)) db(Z^-1)
// from a delta-fixed core Y and any invertible Z, forms the product of its m
// delta-iterates, and compares with Z T Y^m(d~) Z^{-1} where Y^m(d~) comes
// from orbit_power_even and T is the scalar product of the twisted gamma
// values. Exact equality certifies the derivation.
template <Ring R>
MultipliedIdentity<R> multiplied_identity_even(const Matrix<R>& z, const Matrix<R>& y_core,
                                               const typename R::Element& d,
                                               const RingAutomorphism<R>& delta, unsigned m,
                                               const CentralMap<R>& gamma) {
    const R& ring = z.ring();
    detail::require_delta_power_identity(ring, delta, m);
    require_delta_fixed(y_core, delta);
    Matrix<R> z_inv = z.inverse();
    Matrix<R> y_d = corner_extend(y_core, d);
    Matrix<R> dz_inv = entrywise(delta, z_inv);
    auto z0 = gamma.scalar_of(dz_inv);
    Matrix<R> w = z * y_d * dz_inv.scalar_mul(z0);

    Matrix<R> lhs = w;
    Matrix<R> v = w;
    for (unsigned k = 1; k < m; ++k) {
        v = entrywise(delta, v);
        lhs = lhs * v;
    }

    auto [ym, dt] = orbit_power_even(y_core, d, delta, m);
    auto t = ring.one();
    auto cur = z0;
    for (unsigned k = 0; k < m; ++k) {
        t = ring.mul(t, cur);
        cur = delta(cur);
    }
    Matrix<R> rhs = z * corner_extend(ym, dt).scalar_mul(t) * z_inv;
    return {lhs == rhs, lhs, rhs, t};
}

// Odd-parity analogue: X(d) := Z Y(d) gamma(db(Z)) db(Z)^T, iterated by
// Lambda o delta-bar for 2m steps against Z (Y Lambda(Y))^m(d~) T Z^{-1}.
template <Ring R>
MultipliedIdentity<R> multiplied_identity_odd(const Matrix<R>& z, const Matrix<R>& y_core,
                                              const typename R::Element& d,
                                              const RingAutomorphism<R>& delta, unsigned m,
                                              const CentralMap<R>& gamma) {
    const R& ring = z.ring();
    detail::require_delta_power_identity(ring, delta, 2 * m);
    require_delta_fixed(y_core, delta);
    Matrix<R> z_inv = z.inverse();
    Matrix<R> y_d = corner_extend(y_core, d);
    auto z_even = gamma.scalar_of(entrywise(delta, z));
    auto z_odd = gamma.scalar_of(entrywise(delta, z_inv));
    Matrix<R> w = z * y_d * entrywise(delta, z).transpose().scalar_mul(z_even);

    Matrix<R> lhs = w;
    Matrix<R> v = w;
    for (unsigned k = 1; k < 2 * m; ++k) {
        v = contragredient(entrywise(delta, v));
        lhs = lhs * v;
    }

    auto [cm, dt] = orbit_power_odd(y_core, d, delta, m);
    auto t = ring.one();
    auto cur_even = z_even;
    auto cur_odd = z_odd;
    for (unsigned k = 0; k < 2 * m; ++k) {
        t = ring.mul(t, k % 2 == 0 ? cur_even : cur_odd);
        cur_even = delta(cur_even);
        cur_odd = delta(cur_odd);
    }
    Matrix<R> rhs = z * corner_extend(cm, dt).scalar_mul(t) * z_inv;
    return {lhs == rhs, lhs, rhs, t};
}

} // namespace tconj
