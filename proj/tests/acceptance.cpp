// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// fails. Each criterion enforces both its exact-arithmetic check and its
// runtime budget.
#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "tconj/tconj.hpp"

using namespace tconj;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

// ---------------------------------------------------------------------- 1

template <Ring R>
uint64_t lemma2_failures(const R& ring, uint64_t seed, int trials, long long bound) {
    Rng rng(seed);
    uint64_t failures = 0;
    for (int t = 0; t < trials; ++t) {
        auto x = random_matrix(ring, 2, 2, rng, bound);
        auto a = random_matrix(ring, 2, 2, rng, bound);
        if (!ring.equal(congruence_antitrace(x, a), ring.mul(a.antitrace(), x.det()))) ++failures;
    }
    return failures;
}

Outcome criterion1() {
    auto start = Clock::now();
    uint64_t failures = 0;
    failures += lemma2_failures(IntegerRing{}, 11, 10000, 1000);
    failures += lemma2_failures(PrimeField{2}, 12, 10000, 0);
    failures += lemma2_failures(PrimeField{3}, 13, 10000, 0);
    failures += lemma2_failures(PrimeField{101}, 14, 10000, 0);
    failures += lemma2_failures(GaussianRing{}, 15, 10000, 1000);
    failures += lemma2_failures(PolynomialRing<IntegerRing>{IntegerRing{}}, 16, 10000, 1000);

    // exhaustive over all 2x2 pairs from F_2
    PrimeField f2(2);
    std::vector<Matrix<PrimeField>> all;
    for (int64_t a = 0; a < 2; ++a)
        for (int64_t b = 0; b < 2; ++b)
            for (int64_t c = 0; c < 2; ++c)
                for (int64_t d = 0; d < 2; ++d)
                    all.push_back(Matrix<PrimeField>::from_ints(f2, {{a, b}, {c, d}}));
    uint64_t pairs = 0;
    for (const auto& x : all)
        for (const auto& a : all) {
            ++pairs;
            if (!f2.equal(congruence_antitrace(x, a), f2.mul(a.antitrace(), x.det()))) ++failures;
        }

    double secs = seconds_since(start);
    std::ostringstream os;
    os << "60000 sampled + " << pairs << " exhaustive pairs, " << failures << " failures, "
       << secs << " s";
    return {failures == 0 && pairs == 256 && secs < 30.0, os.str()};
}

// ---------------------------------------------------------------------- 2

Outcome criterion2() {
    auto start = Clock::now();
    IntegerRing z;
    PolynomialRing<IntegerRing> zx(z);
    bool ok = true;

    // second route: the trace recurrence tr(M^m) = tr(M) tr(M^{m-1}) - tr(M^{m-2})
    auto sweep = [&](Parity parity, unsigned max_m, long factor) {
        UniPoly<IntegerRing> tr1 =
            parity == Parity::even ? zx.variable_poly() : zx.parse("-x^2 + 2");
        UniPoly<IntegerRing> prev = zx.from_int(2), cur = tr1;
        for (unsigned m = 1; m <= max_m; ++m) {
            auto psi = psi_poly(m, parity);
            if (poly_degree(z, psi) != factor * static_cast<long>(m)) ok = false;
            if (!poly_equal(z, psi, cur)) ok = false;
            auto next = zx.sub(zx.mul(tr1, cur), prev);
            prev = cur;
            cur = next;
        }
    };
    sweep(Parity::even, 64, 1);
    sweep(Parity::odd, 32, 2);

    if (!zx.equal(psi_poly(2, Parity::even), zx.parse("x^2 - 2"))) ok = false;
    if (!zx.equal(psi_poly(2, Parity::odd), zx.parse("x^4 - 4x^2 + 2"))) ok = false;

    double secs = seconds_since(start);
    std::ostringstream os;
    os << "deg tr(P^m) = m for m <= 64, deg tr((P Lambda P)^m) = 2m for m <= 32, "
       << "recurrence route agrees, " << secs << " s";
    return {ok && secs < 10.0, os.str()};
}

// ---------------------------------------------------------------------- 3

Outcome criterion3() {
    bool ok = true;
    std::ostringstream os;
    double worst = 0;
    IntegerRing z;
    GaussianRing zi;
    auto conj = find_automorphism(zi, "conj");
    int configs = 0;
    for (int case_no : {1, 2}) {
        for (size_t n : {3, 4, 5}) {
            {
                auto start = Clock::now();
                auto fam = gen_theorem1(z, case_no, n, z.one(), 1000);
                auto cert = certify_separation(fam, default_invariant(fam));
                double secs = seconds_since(start);
                worst = std::max(worst, secs);
                if (!cert.separated || cert.bound() != 1000 || secs >= 60.0) ok = false;
                ++configs;
            }
            {
                auto start = Clock::now();
                auto fam = gen_theorem2(zi, case_no, n, zi.one(), conj, 2, 1000);
                auto cert = certify_separation(fam, default_invariant(fam));
                double secs = seconds_since(start);
                worst = std::max(worst, secs);
                if (!cert.separated || cert.bound() != 1000 || secs >= 60.0) ok = false;
                ++configs;
            }
        }
    }
    os << configs << " configs x 1000 witnesses all separated, worst config " << worst << " s";
    return {ok && configs == 12, os.str()};
}

// ------------------------------------------------------------------- 4, 5

struct OracleSetup {
    std::vector<FiniteMatrixGroup<PrimeField>> groups;
    std::vector<FiniteMatrixGroup<PrimeField>> gl_pools; // D is drawn from GL
    std::vector<std::string> names;
};

OracleSetup oracle_setup() {
    PrimeField f2(2), f3(3);
    OracleSetup s;
    s.groups.push_back(FiniteMatrixGroup<PrimeField>::enumerate(f2, 2, GroupKind::GL));
    s.gl_pools.push_back(FiniteMatrixGroup<PrimeField>::enumerate(f2, 2, GroupKind::GL));
    s.names.push_back("GL2(F2)");
    s.groups.push_back(FiniteMatrixGroup<PrimeField>::enumerate(f3, 2, GroupKind::GL));
    s.gl_pools.push_back(FiniteMatrixGroup<PrimeField>::enumerate(f3, 2, GroupKind::GL));
    s.names.push_back("GL2(F3)");
    s.groups.push_back(FiniteMatrixGroup<PrimeField>::enumerate(f3, 2, GroupKind::SL));
    s.gl_pools.push_back(FiniteMatrixGroup<PrimeField>::enumerate(f3, 2, GroupKind::GL));
    s.names.push_back("SL2(F3)");
    return s;
}

// the (D, gamma exponent) configurations of criteria 4 and 5, per group;
// criterion 6 re-runs the burnside cross-check on exactly these
std::vector<std::vector<std::pair<Matrix<PrimeField>, long long>>> sampled_configs(
    const OracleSetup& setup, Parity shape) {
    Rng rng(shape == Parity::even ? 4001 : 5001);
    std::vector<std::vector<std::pair<Matrix<PrimeField>, long long>>> out;
    for (size_t gi = 0; gi < setup.groups.size(); ++gi) {
        const auto& pool = setup.gl_pools[gi];
        std::vector<std::pair<Matrix<PrimeField>, long long>> configs;
        for (int k = 0; k < 5; ++k) {
            const auto& d = pool[rng.below(pool.size())];
            for (long long e : {0LL, 1LL}) configs.emplace_back(d, e);
        }
        out.push_back(std::move(configs));
    }
    return out;
}

Outcome criterion_implications(Parity shape) {
    auto setup = oracle_setup();
    auto configs = sampled_configs(setup, shape);
    uint64_t violations = 0, pairs = 0;
    for (size_t gi = 0; gi < setup.groups.size(); ++gi) {
        const auto& g = setup.groups[gi];
        for (const auto& [d, e] : configs[gi]) {
            auto gamma = CentralMap<PrimeField>::det_power(g.ring(), e);
            auto report = shape == Parity::even ? oracle_implication_even(g, d, gamma)
                                                : oracle_implication_odd(g, d, gamma);
            violations += report.violations.size();
            pairs += report.pairs_same_det;
        }
    }
    std::ostringstream os;
    os << "3 groups x 5 D x {trivial, det^1}: " << pairs << " same-det twisted pairs, "
       << violations << " violations";
    return {violations == 0 && pairs > 0, os.str()};
}

// ---------------------------------------------------------------------- 6

Outcome criterion6() {
    auto setup = oracle_setup();
    auto even_configs = sampled_configs(setup, Parity::even);
    auto odd_configs = sampled_configs(setup, Parity::odd);
    bool ok = true;
    uint64_t configs = 0, psi_checks = 0;
    Rng rng(6001);
    for (size_t gi = 0; gi < setup.groups.size(); ++gi) {
        const auto& g = setup.groups[gi];
        const auto& pool = setup.gl_pools[gi];
        const auto& ring = g.ring();

        // exactly the (G, phi) pairs of criteria 4 and 5, plus id and Lambda
        std::vector<StandardAutomorphism<PrimeField>> phis;
        for (const auto& [d, e] : even_configs[gi])
            phis.emplace_back(d, 0, CentralMap<PrimeField>::det_power(ring, e),
                              identity_automorphism(ring));
        for (const auto& [d, e] : odd_configs[gi])
            phis.emplace_back(d, 1, CentralMap<PrimeField>::det_power(ring, e),
                              identity_automorphism(ring));
        phis.push_back(StandardAutomorphism<PrimeField>::identity(ring, 2));
        phis.emplace_back(Matrix<PrimeField>::identity(ring, 2), 1,
                          CentralMap<PrimeField>::trivial(ring), identity_automorphism(ring));

        for (const auto& phi : phis) {
            auto fn = [&](const Matrix<PrimeField>& a) { return phi.apply(a); };
            auto part = twisted_classes(g, fn);
            if (burnside_reidemeister(g, fn) != part.reidemeister_number()) ok = false;
            ++configs;
        }

        // R(id) on GL2(F2) = 3
        if (setup.names[gi] == "GL2(F2)") {
            auto ident = [](const Matrix<PrimeField>& a) { return a; };
            if (twisted_classes(g, ident).reidemeister_number() != 3) ok = false;
        }

        // invariance under conjugation of the automorphism: 10 sampled psi
        // against phi = the first sampled shape and phi = Lambda
        std::vector<StandardAutomorphism<PrimeField>> bases{
            phis.front(), StandardAutomorphism<PrimeField>(
                              Matrix<PrimeField>::identity(ring, 2), 1,
                              CentralMap<PrimeField>::trivial(ring), identity_automorphism(ring))};
        for (const auto& base : bases) {
            auto base_fn = [&](const Matrix<PrimeField>& a) { return base.apply(a); };
            size_t r_phi = twisted_classes(g, base_fn).reidemeister_number();
            for (int k = 0; k < 10; ++k) {
                auto e = pool[rng.below(pool.size())];
                bool with_lambda = rng.coin();
                auto e_inv = e.inverse();
                auto psi = [&](const Matrix<PrimeField>& a) {
                    auto x = e * a * e_inv;
                    return with_lambda ? contragredient(x) : x;
                };
                auto psi_inv = [&](const Matrix<PrimeField>& a) {
                    auto x = with_lambda ? contragredient(a) : a;
                    return e_inv * x * e;
                };
                auto conj_phi = [&](const Matrix<PrimeField>& a) {
                    return psi(base.apply(psi_inv(a)));
                };
                if (twisted_classes(g, conj_phi).reidemeister_number() != r_phi) ok = false;
                ++psi_checks;
            }
        }
    }
    std::ostringstream os;
    os << configs << " (G, phi) Burnside agreements, R(id) on GL2(F2) = 3, " << psi_checks
       << " conjugation-invariance checks";
    return {ok, os.str()};
}

// ---------------------------------------------------------------------- 7

Outcome criterion7() {
    auto start = Clock::now();
    GaussianRing zi;
    auto conj = find_automorphism(zi, "conj");
    auto trivial = CentralMap<GaussianRing>::trivial(zi);
    const GaussianInt units[4] = {zi.parse("1"), zi.parse("-1"), zi.parse("i"), zi.parse("-i")};
    Rng rng(7001);
    uint64_t even_ok = 0, odd_ok = 0;
    for (int t = 0; t < 500; ++t) {
        auto zmat = random_gaussian_unimodular_bounded(zi, 3, rng, 3);
        auto ycore = random_integer_unimodular_bounded(zi, 2, rng, 3);
        auto d = random_element(zi, rng, 3);
        auto even = multiplied_identity_even(zmat, ycore, d, conj, 2, trivial);
        if (even.holds && zi.equal(even.t_scalar, zi.one())) ++even_ok;
        auto du = units[rng.below(4)];
        auto odd = multiplied_identity_odd(zmat, ycore, du, conj, 2, trivial);
        if (odd.holds && zi.equal(odd.t_scalar, zi.one())) ++odd_ok;
    }
    double secs = seconds_since(start);
    std::ostringstream os;
    os << even_ok << "/500 even and " << odd_ok << "/500 odd identities exact, T scalar, " << secs
       << " s";
    return {even_ok == 500 && odd_ok == 500 && secs < 60.0, os.str()};
}

// ---------------------------------------------------------------------- 8

Outcome criterion8() {
    auto start = Clock::now();
    IntegerRing z;
    PrimeField f3(3);
    auto fam = gen_theorem1(z, 2, 3, z.one(), 20);
    auto g = FiniteMatrixGroup<PrimeField>::enumerate(f3, 3, GroupKind::GL);
    auto trivial = CentralMap<PrimeField>::trivial(f3);

    std::vector<Matrix<PrimeField>> reduced;
    std::vector<PrimeField::Element> atr2;
    for (const auto& w : fam.members) {
        auto red = map_matrix(w, f3, [&](const Integer& e) { return f3.from_integer(e); });
        reduced.push_back(red);
        atr2.push_back(ring_pow(f3, block_split(red, 2).br.antitrace(), 2));
    }
    uint64_t pairs = 0, found = 0;
    for (size_t i = 0; i < reduced.size(); ++i)
        for (size_t j = i + 1; j < reduced.size(); ++j) {
            if (f3.equal(atr2[i], atr2[j])) continue;
            ++pairs;
            auto verdict = obstruction_exhaustive(reduced[i], reduced[j], g, trivial);
            if (verdict.conjugator) ++found;
            if (verdict.checked != g.size()) found = 1000; // scan must be exhaustive
        }
    double secs = seconds_since(start);
    std::ostringstream os;
    os << pairs << " distinct-atr2 pairs x " << g.size() << " candidates, " << found
       << " conjugators found, " << secs << " s";
    return {found == 0 && pairs > 0 && g.size() == 11232 && secs < 300.0, os.str()};
}

// ---------------------------------------------------------------------- 9

Outcome criterion9() {
    PrimeField f3(3);
    Rng rng(9001);
    bool ok = true;
    int words = 200;
    for (int t = 0; t < words; ++t) {
        AutomorphismWord<PrimeField> w{f3, 3, {}};
        size_t len = 1 + rng.below(6);
        for (size_t k = 0; k < len; ++k) {
            switch (rng.below(4)) {
                case 0:
                    w.gens.push_back(AutoGenerator<PrimeField>::inner(random_invertible(f3, 3, rng)));
                    break;
                case 1: w.gens.push_back(AutoGenerator<PrimeField>::contragredient_gen()); break;
                case 2:
                    w.gens.push_back(AutoGenerator<PrimeField>::central(
                        CentralMap<PrimeField>::det_power(f3, static_cast<long long>(rng.below(3)))));
                    break;
                default:
                    w.gens.push_back(
                        AutoGenerator<PrimeField>::ring_aut(identity_automorphism(f3)));
            }
        }
        auto sf = normalize(w);
        if (sf.r() != 0 && sf.r() != 1) ok = false;
        for (int s = 0; s < 50; ++s) {
            auto a = random_invertible(f3, 3, rng);
            if (w.apply(a) != sf.apply(a)) ok = false;
        }
    }
    std::ostringstream os;
    os << words << " random words (length <= 6) over GL3(F3), 50 pointwise samples each";
    return {ok, os.str()};
}

// --------------------------------------------------------------------- 10

Outcome criterion10() {
    IntegerRing z;
    bool ok = true;
    std::ostringstream os;
    for (unsigned n : {2, 3, 5}) {
        UniPoly<IntegerRing> f = poly_monomial(z, z.one(), n);
        for (uint64_t k : {1, 10, 100, 1000}) {
            auto got = distinct_image_sampler(z, f, counting_stream(z, 1), k);
            uint64_t bound = (k - 1) * n + 1;
            if (got.elements.size() != k || got.scanned > bound) ok = false;
        }
    }
    os << "f = x^n for n in {2,3,5}, k up to 1000: scanned <= (k-1)n+1";
    return {ok, os.str()};
}

} // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        std::function<Outcome()> fn;
    };
    std::vector<Criterion> criteria{
        {1, "lemma 2 identity over six rings", criterion1},
        {2, "psi degree claims", criterion2},
        {3, "certificate lower bounds (12 configs x 1000)", criterion3},
        {4, "oracle implication, even shape", [] { return criterion_implications(Parity::even); }},
        {5, "oracle implication, odd shape", [] { return criterion_implications(Parity::odd); }},
        {6, "burnside agreement and invariance", criterion6},
        {7, "theorem 2 multiplied identities (500 even + 500 odd)", criterion7},
        {8, "block obstruction over GL3(F3)", criterion8},
        {9, "normal form on 200 random words", criterion9},
        {10, "lemma 1 scan bound", criterion10},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        auto start = Clock::now();
        Outcome outcome;
        try {
            outcome = c.fn();
        } catch (const std::exception& e) {
            outcome = {false, std::string("exception: ") + e.what()};
        }
        double secs = seconds_since(start);
        std::printf("criterion %2d [%s]: %s (%.2f s) -- %s\n", c.id,
                    outcome.pass ? "PASS" : "FAIL", c.name, secs, outcome.detail.c_str());
        std::fflush(stdout);
        if (!outcome.pass) ++failures;
    }
    if (failures == 0)
        std::printf("all %zu acceptance criteria passed\n", criteria.size());
    else
        std::printf("%d acceptance criteria FAILED\n", failures);
    return failures == 0 ? 0 : 1;
}
