// The four standard automorphism generators of GL_n/SL_n over a ring K --
// inner phi_D, entrywise ring automorphism, contragredient Lambda, central
// homothety Gamma -- together with free words over them and the rewriting
// engine that reduces any word to the normal form phi_D Lambda^r Gamma
// delta-bar with r in {0,1}.
//
// A word is the composition read left to right: the *rightmost* generator
// acts on the matrix first, so [L, I[D]] means Lambda after phi_D.
#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "tconj/error.hpp"
#include "tconj/matrix.hpp"
#include "tconj/rings.hpp"
#include "tconj/rng.hpp"

namespace tconj {

// gamma: G -> Z(G), a homomorphism into the scalar matrices. Three
// representable shapes: the trivial map, A |-> det(A)^e I, and an explicit
// finite table. The family is closed under every rewrite the normal form
// needs: conjugation twists, the contragredient twist, ring-automorphism
// twists, and pointwise composition.
template <Ring R>
class CentralMap {
public:
    using Element = typename R::Element;

    struct Trivial {};
    struct DetPower {
        long long e;
    };
    struct Table {
        std::vector<std::pair<Matrix<R>, Element>> entries;
    };

    static CentralMap trivial(const R& ring) { return CentralMap(ring, Trivial{}); }

    static CentralMap det_power(const R& ring, long long e) {
        if (e == 0) return trivial(ring);
        return CentralMap(ring, DetPower{e});
    }

    // Exhaustively verified table: every value must be a unit and
    // gamma(AB) = gamma(A)gamma(B) must hold for all pairs of the domain
    // (which therefore has to be product-closed).
    static CentralMap table(const R& ring, std::vector<std::pair<Matrix<R>, Element>> entries) {
        CentralMap m = table_unchecked(ring, std::move(entries));
        const auto& tab = std::get<Table>(m.node_).entries;
        for (const auto& [key, val] : tab)
            if (!ring.is_unit(val))
                raise(errc::domain_error, "central map value " + ring.to_string(val) + " is not a unit");
        for (const auto& [a, za] : tab)
            for (const auto& [b, zb] : tab) {
                auto ab = a * b;
                auto found = m.lookup(ab);
                if (!found)
                    raise(errc::domain_error, "central map domain is not closed under products");
                if (!ring.equal(*found, ring.mul(za, zb)))
                    raise(errc::domain_error, "central map table is not a homomorphism");
            }
        return m;
    }

    // No verification; exists so tests can build deliberately corrupted maps
    // and so internal twists can skip re-checking.
    static CentralMap table_unchecked(const R& ring,
                                      std::vector<std::pair<Matrix<R>, Element>> entries) {
        return CentralMap(ring, Table{std::move(entries)});
    }

    bool is_trivial() const { return std::holds_alternative<Trivial>(node_); }

    // gamma(A) as a ring element
    Element scalar_of(const Matrix<R>& a) const {
        if (auto* dp = std::get_if<DetPower>(&node_)) {
            Element d = a.det();
            if (dp->e >= 0) return pow_element(d, static_cast<unsigned long long>(dp->e));
            if (!ring_.is_unit(d))
                raise(errc::not_invertible, "negative det power needs a unit determinant");
            return pow_element(ring_.unit_inverse(d), static_cast<unsigned long long>(-dp->e));
        }
        if (auto* tab = std::get_if<Table>(&node_)) {
            (void)tab;
            auto found = lookup(a);
            if (!found) raise(errc::domain_error, "matrix outside central map table domain");
            return *found;
        }
        return ring_.one();
    }

    // gamma(A) * I, the value in the center Z(G)
    Matrix<R> scalar_matrix_of(const Matrix<R>& a) const {
        return Matrix<R>::scalar(ring_, a.n(), scalar_of(a));
    }

    // gamma o phi_D (precomposition with conjugation); det powers are
    // conjugation-invariant, table keys move by D^{-1} . D.
    CentralMap twist_inner(const Matrix<R>& d, const Matrix<R>& d_inv) const {
        if (auto* tab = std::get_if<Table>(&node_)) {
            std::vector<std::pair<Matrix<R>, Element>> out;
            out.reserve(tab->entries.size());
            for (const auto& [key, val] : tab->entries) out.emplace_back(d_inv * key * d, val);
            return table_unchecked(ring_, std::move(out));
        }
        return *this;
    }

    // B |-> gamma(Lambda(B))^{-1}; det powers are fixed because
    // det(Lambda(B)) = det(B)^{-1} and the scalar gets inverted again.
    CentralMap twist_lambda() const {
        if (auto* tab = std::get_if<Table>(&node_)) {
            std::vector<std::pair<Matrix<R>, Element>> out;
            out.reserve(tab->entries.size());
            for (const auto& [key, val] : tab->entries)
                out.emplace_back(contragredient(key), ring_.unit_inverse(val));
            return table_unchecked(ring_, std::move(out));
        }
        return *this;
    }

    // delta-bar o gamma o delta-bar^{-1}
    CentralMap twist_delta(const RingAutomorphism<R>& delta) const {
        if (auto* tab = std::get_if<Table>(&node_)) {
            std::vector<std::pair<Matrix<R>, Element>> out;
            out.reserve(tab->entries.size());
            for (const auto& [key, val] : tab->entries)
                out.emplace_back(entrywise(delta, key), delta(val));
            return table_unchecked(ring_, std::move(out));
        }
        return *this;
    }

    // Gamma_a o Gamma_b as a central map: A |-> gamma_a(gamma_b(A) A) * gamma_b(A).
    // For two det powers over n x n matrices the exponents combine to
    // e_a + e_b + n e_a e_b.
    static CentralMap compose(const CentralMap& a, const CentralMap& b, size_t n) {
        const R& ring = a.ring_;
        if (a.is_trivial()) return b;
        if (b.is_trivial()) return a;
        auto* dpa = std::get_if<DetPower>(&a.node_);
        auto* dpb = std::get_if<DetPower>(&b.node_);
        if (dpa && dpb)
            return det_power(ring,
                             dpa->e + dpb->e + static_cast<long long>(n) * dpa->e * dpb->e);
        // At least one side is a table: evaluate pointwise. b acts first, so
        // its domain is the composite's domain; when b is a (total) det
        // power, fall back to a's table.
        auto* tab_b = std::get_if<Table>(&b.node_);
        const Table& dom = tab_b ? *tab_b : std::get<Table>(a.node_);
        std::vector<std::pair<Matrix<R>, Element>> out;
        out.reserve(dom.entries.size());
        for (const auto& [key, ignored] : dom.entries) {
            (void)ignored;
            Element zb = b.scalar_of(key);
            Matrix<R> moved = key.scalar_mul(zb);
            Element za = a.scalar_of(moved);
            out.emplace_back(key, ring.mul(za, zb));
        }
        return table_unchecked(ring, std::move(out));
    }

    std::string describe() const {
        if (is_trivial()) return "trivial";
        if (auto* dp = std::get_if<DetPower>(&node_)) return "det^" + std::to_string(dp->e);
        return "table(" + std::to_string(std::get<Table>(node_).entries.size()) + ")";
    }

    const R& ring() const { return ring_; }

private:
    CentralMap(R ring, std::variant<Trivial, DetPower, Table> node)
        : ring_(std::move(ring)), node_(std::move(node)) {}

    Element pow_element(const Element& base, unsigned long long e) const {
        Element acc = ring_.one(), sq = base;
        while (e != 0) {
            if (e & 1ULL) acc = ring_.mul(acc, sq);
            e >>= 1;
            if (e != 0) sq = ring_.mul(sq, sq);
        }
        return acc;
    }

    std::optional<Element> lookup(const Matrix<R>& key) const {
        const auto& tab = std::get<Table>(node_);
        for (const auto& [k, v] : tab.entries)
            if (k == key) return v;
        return std::nullopt;
    }

    R ring_;
    std::variant<Trivial, DetPower, Table> node_;
};

// Gamma's value gamma(A) as a scalar matrix; Gamma's action on A is
// central_apply(gamma, A) * A.
template <Ring R>
Matrix<R> central_apply(const CentralMap<R>& gamma, const Matrix<R>& a) {
    return gamma.scalar_matrix_of(a);
}

// ---------------------------------------------------------------------------
// generators and words
// ---------------------------------------------------------------------------

enum class GenKind { inner, ring_aut, contragredient, central };

template <Ring R>
struct AutoGenerator {
    GenKind kind;
    std::optional<Matrix<R>> d, d_inv;        // inner
    std::optional<RingAutomorphism<R>> delta; // ring_aut
    std::optional<CentralMap<R>> gamma;       // central

    static AutoGenerator inner(const Matrix<R>& d) {
        Matrix<R> inv = d.inverse(); // throws not_invertible unless det is a unit
        return {GenKind::inner, d, inv, std::nullopt, std::nullopt};
    }

    static AutoGenerator ring_aut(RingAutomorphism<R> delta) {
        return {GenKind::ring_aut, std::nullopt, std::nullopt, std::move(delta), std::nullopt};
    }

    static AutoGenerator contragredient_gen() {
        return {GenKind::contragredient, std::nullopt, std::nullopt, std::nullopt, std::nullopt};
    }

    static AutoGenerator central(CentralMap<R> gamma) {
        return {GenKind::central, std::nullopt, std::nullopt, std::nullopt, std::move(gamma)};
    }

    Matrix<R> apply(const Matrix<R>& a) const {
        switch (kind) {
            case GenKind::inner: return *d * a * *d_inv;
            case GenKind::ring_aut: return entrywise(*delta, a);
            case GenKind::contragredient: return contragredient(a);
            case GenKind::central: return a.scalar_mul(gamma->scalar_of(a));
        }
        raise(errc::domain_error, "unreachable generator kind");
    }
};

template <Ring R>
struct AutomorphismWord {
    R ring;
    size_t dim;
    std::vector<AutoGenerator<R>> gens;

    // rightmost generator acts first
    Matrix<R> apply(const Matrix<R>& a) const {
        if (a.n() != dim) raise(errc::dimension_mismatch, "word dimension mismatch");
        Matrix<R> cur = a;
        for (size_t i = gens.size(); i-- > 0;) cur = gens[i].apply(cur);
        return cur;
    }
};

// ---------------------------------------------------------------------------
// normal form
// ---------------------------------------------------------------------------

// phi = phi_D Lambda^r Gamma delta-bar, applied as
// A |-> phi_D(Lambda^r(Gamma(delta-bar(A)))).
template <Ring R>
class StandardAutomorphism {
public:
    StandardAutomorphism(Matrix<R> d, int r, CentralMap<R> gamma, RingAutomorphism<R> delta)
        : d_(std::move(d)), d_inv_(d_.inverse()), r_(r), gamma_(std::move(gamma)),
          delta_(std::move(delta)) {
        if (r_ != 0 && r_ != 1) raise(errc::domain_error, "contragredient exponent must be 0 or 1");
    }

    static StandardAutomorphism identity(const R& ring, size_t n) {
        return StandardAutomorphism(Matrix<R>::identity(ring, n), 0, CentralMap<R>::trivial(ring),
                                    identity_automorphism(ring));
    }

    const Matrix<R>& d() const { return d_; }
    const Matrix<R>& d_inverse() const { return d_inv_; }
    int r() const { return r_; }
    const CentralMap<R>& gamma() const { return gamma_; }
    const RingAutomorphism<R>& delta() const { return delta_; }

    Matrix<R> apply(const Matrix<R>& a) const {
        Matrix<R> cur = entrywise(delta_, a);
        if (!gamma_.is_trivial()) cur = cur.scalar_mul(gamma_.scalar_of(cur));
        if (r_ == 1) cur = contragredient(cur);
        return d_ * cur * d_inv_;
    }

    Matrix<R> operator()(const Matrix<R>& a) const { return apply(a); }

    AutomorphismWord<R> to_word() const {
        AutomorphismWord<R> w{d_.ring(), d_.n(), {}};
        w.gens.push_back(AutoGenerator<R>::inner(d_));
        if (r_ == 1) w.gens.push_back(AutoGenerator<R>::contragredient_gen());
        w.gens.push_back(AutoGenerator<R>::central(gamma_));
        w.gens.push_back(AutoGenerator<R>::ring_aut(delta_));
        return w;
    }

private:
    Matrix<R> d_, d_inv_;
    int r_;
    CentralMap<R> gamma_;
    RingAutomorphism<R> delta_;
};

// Rewrites a free word into the normal form by folding generators in from
// the right, using the relations
//   Lambda phi_D = phi_{Lambda(D)} Lambda        delta phi_D = phi_{delta(D)} delta
//   Gamma phi_D  = phi_D Gamma'                  (gamma' = gamma o phi_D)
//   Lambda Gamma = Gamma'' Lambda                (gamma''(B) = gamma(Lambda(B))^{-1})
//   delta Gamma  = Gamma''' delta                (gamma''' = delta gamma delta^{-1})
//   Lambda delta = delta Lambda,  Lambda^2 = id, phi_D phi_E = phi_{DE}
// plus pointwise composition of central maps.
template <Ring R>
StandardAutomorphism<R> normalize(const AutomorphismWord<R>& word) {
    const R& ring = word.ring;
    size_t n = word.dim;
    Matrix<R> d = Matrix<R>::identity(ring, n);
    Matrix<R> d_inv = d;
    int r = 0;
    CentralMap<R> gamma = CentralMap<R>::trivial(ring);
    RingAutomorphism<R> delta = identity_automorphism(ring);

    for (size_t i = word.gens.size(); i-- > 0;) {
        const AutoGenerator<R>& g = word.gens[i];
        switch (g.kind) {
            case GenKind::inner:
                d = *g.d * d;
                d_inv = d_inv * *g.d_inv;
                break;
            case GenKind::contragredient: {
                Matrix<R> new_d = d_inv.transpose(); // Lambda(D)
                d_inv = d.transpose();
                d = std::move(new_d);
                r ^= 1;
                break;
            }
            case GenKind::ring_aut:
                d = entrywise(*g.delta, d);
                d_inv = entrywise(*g.delta, d_inv);
                gamma = gamma.twist_delta(*g.delta);
                delta = simplify_automorphism(ring, compose_automorphisms(ring, *g.delta, delta));
                break;
            case GenKind::central: {
                CentralMap<R> moved = g.gamma->twist_inner(d, d_inv);
                if (r == 1) moved = moved.twist_lambda();
                gamma = CentralMap<R>::compose(moved, gamma, n);
                break;
            }
        }
    }
    return StandardAutomorphism<R>(d, r, gamma, delta);
}

// ---------------------------------------------------------------------------
// automorphism verification
// ---------------------------------------------------------------------------

template <Ring R>
struct AutomorphismCheck {
    bool ok = true;
    std::optional<std::pair<Matrix<R>, Matrix<R>>> counterexample;
    std::string reason;
    uint64_t pairs_checked = 0;
};

// Verifies phi(AB) = phi(A)phi(B) on all pairs of `domain` (or a seeded
// sample when the square exceeds max_pairs) and, when `domain_is_group`,
// that phi permutes the domain. Sampled verification cannot prove
// bijectivity over an infinite ring; it is evidence, not proof.
template <Ring R, typename Phi>
AutomorphismCheck<R> check_automorphism(const Phi& phi, const std::vector<Matrix<R>>& domain,
                                        bool domain_is_group = true, uint64_t max_pairs = 250000,
                                        uint64_t seed = 0) {
    AutomorphismCheck<R> out;
    if (domain.empty()) {
        out.ok = false;
        out.reason = "empty domain";
        return out;
    }
    std::vector<Matrix<R>> images;
    images.reserve(domain.size());
    for (const auto& a : domain) images.push_back(phi(a));

    const uint64_t total = static_cast<uint64_t>(domain.size()) * domain.size();
    if (total <= max_pairs) {
        for (size_t i = 0; i < domain.size() && out.ok; ++i)
            for (size_t j = 0; j < domain.size(); ++j) {
                ++out.pairs_checked;
                if (phi(domain[i] * domain[j]) != images[i] * images[j]) {
                    out.ok = false;
                    out.counterexample = {domain[i], domain[j]};
                    out.reason = "phi(AB) != phi(A)phi(B)";
                    break;
                }
            }
    } else {
        Rng rng(seed);
        for (uint64_t k = 0; k < max_pairs; ++k) {
            const auto& a = domain[rng.below(domain.size())];
            const auto& b = domain[rng.below(domain.size())];
            ++out.pairs_checked;
            if (phi(a * b) != phi(a) * phi(b)) {
                out.ok = false;
                out.counterexample = {a, b};
                out.reason = "phi(AB) != phi(A)phi(B)";
                break;
            }
        }
    }
    if (!out.ok) return out;

    if (domain_is_group) {
        // phi must permute the domain: every image is a member and images
        // are pairwise distinct
        std::vector<std::string> keys;
        keys.reserve(domain.size());
        for (const auto& a : domain) keys.push_back(matrix_literal(a));
        std::sort(keys.begin(), keys.end());
        std::vector<std::string> image_keys;
        image_keys.reserve(images.size());
        for (const auto& a : images) image_keys.push_back(matrix_literal(a));
        for (size_t i = 0; i < image_keys.size(); ++i) {
            if (!std::binary_search(keys.begin(), keys.end(), image_keys[i])) {
                out.ok = false;
                out.counterexample = {domain[i], domain[i]};
                out.reason = "image leaves the group";
                return out;
            }
        }
        std::sort(image_keys.begin(), image_keys.end());
        if (std::adjacent_find(image_keys.begin(), image_keys.end()) != image_keys.end()) {
            out.ok = false;
            out.reason = "phi is not injective on the domain";
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// word DSL: whitespace-separated tokens  I[<matrix>]  L  C[det^<e>]  R[<name>]
// ---------------------------------------------------------------------------

template <Ring R>
AutomorphismWord<R> parse_word(const R& ring, size_t n, std::string_view dsl) {
    AutomorphismWord<R> word{ring, n, {}};
    std::vector<std::string> tokens;
    std::string cur;
    int depth = 0;
    for (char ch : dsl) {
        if (ch == '[') ++depth;
        if (ch == ']') --depth;
        if ((ch == ' ' || ch == '\t') && depth == 0) {
            if (!cur.empty()) tokens.push_back(std::move(cur));
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    if (depth != 0) raise(errc::parse_error, "unbalanced brackets in automorphism word");
    if (!cur.empty()) tokens.push_back(std::move(cur));

    auto bracket_body = [](const std::string& tok, size_t prefix) -> std::string {
        if (tok.size() < prefix + 2 || tok[prefix] != '[' || tok.back() != ']')
            raise(errc::parse_error, "malformed token '" + tok + "'");
        return tok.substr(prefix + 1, tok.size() - prefix - 2);
    };

    for (const auto& tok : tokens) {
        if (tok == "L") {
            word.gens.push_back(AutoGenerator<R>::contragredient_gen());
        } else if (tok.rfind("I[", 0) == 0 || tok == "I") {
            Matrix<R> d = parse_matrix(ring, bracket_body(tok, 1));
            if (d.n() != n) raise(errc::dimension_mismatch, "inner matrix dimension mismatch");
            word.gens.push_back(AutoGenerator<R>::inner(d));
        } else if (tok.rfind("C[", 0) == 0) {
            std::string body = bracket_body(tok, 1);
            if (body.rfind("det^", 0) != 0)
                raise(errc::parse_error, "central token must be C[det^<e>], got '" + tok + "'");
            long long e = 0;
            try {
                e = std::stoll(body.substr(4));
            } catch (...) {
                raise(errc::parse_error, "bad central exponent in '" + tok + "'");
            }
            word.gens.push_back(AutoGenerator<R>::central(CentralMap<R>::det_power(ring, e)));
        } else if (tok.rfind("R[", 0) == 0) {
            word.gens.push_back(
                AutoGenerator<R>::ring_aut(find_automorphism(ring, bracket_body(tok, 1))));
        } else {
            raise(errc::parse_error, "unknown automorphism token '" + tok + "'");
        }
    }
    return word;
}

template <Ring R>
std::string word_to_dsl(const AutomorphismWord<R>& word) {
    std::string out;
    for (const auto& g : word.gens) {
        if (!out.empty()) out += ' ';
        switch (g.kind) {
            case GenKind::inner: out += "I[" + matrix_literal(*g.d) + "]"; break;
            case GenKind::contragredient: out += "L"; break;
            case GenKind::central: out += "C[" + g.gamma->describe() + "]"; break;
            case GenKind::ring_aut: out += "R[" + g.delta->name + "]"; break;
        }
    }
    return out;
}

} // namespace tconj
