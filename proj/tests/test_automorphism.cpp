#include <catch2/catch.hpp>

#include "tconj/automorphism.hpp"
#include "tconj/sampling.hpp"
#include "tconj/twisted.hpp"
#include "test_support.hpp"

using namespace tconj;
using test_support::throws_code;

namespace {

using FpMat = Matrix<PrimeField>;
using FpGen = AutoGenerator<PrimeField>;
using FpWord = AutomorphismWord<PrimeField>;

std::vector<FpMat> sample_invertible(const PrimeField& f, size_t n, int count, uint64_t seed) {
    Rng rng(seed);
    std::vector<FpMat> out;
    for (int t = 0; t < count; ++t) out.push_back(random_invertible(f, n, rng));
    return out;
}

} // namespace

TEST_CASE("generator actions") {
    PrimeField f5(5);
    auto d = FpMat::from_ints(f5, {{1, 1}, {0, 1}});
    auto a = FpMat::from_ints(f5, {{2, 0}, {1, 3}});
    CHECK(FpGen::inner(d).apply(a) == d * a * d.inverse());
    IntegerRing z;
    auto u = Matrix<IntegerRing>::from_ints(z, {{1, 1}, {0, 1}});
    CHECK(AutoGenerator<IntegerRing>::contragredient_gen().apply(u) ==
          Matrix<IntegerRing>::from_ints(z, {{1, 0}, {-1, 1}}));
    // central det-power over F5: diag(2,1) has det 2, so the image is diag(4,2)
    auto diag = FpMat::from_ints(f5, {{2, 0}, {0, 1}});
    CHECK(FpGen::central(CentralMap<PrimeField>::det_power(f5, 1)).apply(diag) ==
          FpMat::from_ints(f5, {{4, 0}, {0, 2}}));
    // inner generators require a unit determinant
    CHECK(throws_code([&] { AutoGenerator<IntegerRing>::inner(
                                Matrix<IntegerRing>::from_ints(z, {{2, 0}, {0, 1}})); },
                      errc::not_invertible));
}

TEST_CASE("central_apply returns the scalar value in the center") {
    PrimeField f5(5);
    auto a = FpMat::from_ints(f5, {{2, 0}, {0, 1}}); // det 2
    CHECK(central_apply(CentralMap<PrimeField>::trivial(f5), a) == FpMat::identity(f5, 2));
    CHECK(central_apply(CentralMap<PrimeField>::det_power(f5, 1), a) ==
          FpMat::scalar(f5, 2, f5.from_int(2)));
    CHECK(central_apply(CentralMap<PrimeField>::det_power(f5, 0), a) == FpMat::identity(f5, 2));
    // negative exponents use the unit inverse of the determinant
    CHECK(central_apply(CentralMap<PrimeField>::det_power(f5, -1), a) ==
          FpMat::scalar(f5, 2, f5.from_int(3)));
}

TEST_CASE("words act with the rightmost generator first") {
    PrimeField f3(3);
    auto d = FpMat::from_ints(f3, {{1, 1}, {0, 1}});
    FpWord w{f3, 2, {FpGen::contragredient_gen(), FpGen::inner(d)}};
    for (const auto& a : sample_invertible(f3, 2, 20, 42))
        REQUIRE(w.apply(a) == contragredient(d * a * d.inverse()));
}

TEST_CASE("normalize: contragredient conjugates the inner matrix") {
    PrimeField f3(3);
    auto d = FpMat::from_ints(f3, {{1, 1}, {0, 1}});
    FpWord w{f3, 2, {FpGen::contragredient_gen(), FpGen::inner(d)}};
    auto sf = normalize(w);
    CHECK(sf.d() == contragredient(d));
    CHECK(sf.r() == 1);
    CHECK(sf.gamma().is_trivial());
    CHECK(sf.delta().name == "id");
    for (const auto& a : sample_invertible(f3, 2, 30, 1))
        REQUIRE(w.apply(a) == sf.apply(a));
}

TEST_CASE("normalize: lambda squared vanishes") {
    PrimeField f3(3);
    FpWord w{f3, 2, {FpGen::contragredient_gen(), FpGen::contragredient_gen()}};
    auto sf = normalize(w);
    CHECK(sf.d() == FpMat::identity(f3, 2));
    CHECK(sf.r() == 0);
    CHECK(sf.gamma().is_trivial());
    for (const auto& a : sample_invertible(f3, 2, 30, 2)) REQUIRE(sf.apply(a) == a);
}

TEST_CASE("normalize: central map is twisted through the inner part") {
    PrimeField f3(3);
    auto d = FpMat::from_ints(f3, {{1, 2}, {1, 1}});
    auto gamma = CentralMap<PrimeField>::det_power(f3, 1);
    FpWord w{f3, 2, {FpGen::central(gamma), FpGen::inner(d)}};
    auto sf = normalize(w);
    CHECK(sf.d() == d);
    CHECK(sf.r() == 0);
    CHECK(sf.gamma().describe() == "det^1"); // det powers are conjugation-invariant
    for (const auto& a : sample_invertible(f3, 2, 30, 3))
        REQUIRE(w.apply(a) == sf.apply(a));
}

TEST_CASE("each rewrite relation preserves the action") {
    PrimeField f3(3);
    auto samples = sample_invertible(f3, 2, 25, 99);
    auto d = FpMat::from_ints(f3, {{1, 1}, {0, 1}});
    auto e = FpMat::from_ints(f3, {{2, 1}, {1, 1}});
    auto d_inv = d.inverse();
    auto gamma = CentralMap<PrimeField>::det_power(f3, 1);

    for (const auto& a : samples) {
        // Lambda phi_D = phi_{Lambda(D)} Lambda
        REQUIRE(contragredient(d * a * d_inv) ==
                contragredient(d) * contragredient(a) * contragredient(d).inverse());
        // Gamma phi_D = phi_D Gamma' with gamma' = gamma o phi_D
        auto lhs3 = (d * a * d_inv).scalar_mul(gamma.scalar_of(d * a * d_inv));
        auto g3 = gamma.twist_inner(d, d_inv);
        REQUIRE(lhs3 == d * a.scalar_mul(g3.scalar_of(a)) * d_inv);
        // Lambda Gamma = Gamma'' Lambda with gamma''(B) = gamma(Lambda(B))^{-1}
        auto lhs4 = contragredient(a.scalar_mul(gamma.scalar_of(a)));
        auto g4 = gamma.twist_lambda();
        auto la = contragredient(a);
        REQUIRE(lhs4 == la.scalar_mul(g4.scalar_of(la)));
        // Lambda^2 = id
        REQUIRE(contragredient(contragredient(a)) == a);
        // phi_D phi_E = phi_{DE}
        REQUIRE(d * (e * a * e.inverse()) * d_inv == (d * e) * a * (d * e).inverse());
        // central composition Gamma_1 Gamma_2
        auto g1 = CentralMap<PrimeField>::det_power(f3, 1);
        auto g2 = CentralMap<PrimeField>::det_power(f3, 2);
        auto b = a.scalar_mul(g2.scalar_of(a));
        auto lhs9 = b.scalar_mul(g1.scalar_of(b));
        auto composed = CentralMap<PrimeField>::compose(g1, g2, 2);
        REQUIRE(lhs9 == a.scalar_mul(composed.scalar_of(a)));
    }

    // delta relations over the gaussian integers
    GaussianRing zi;
    auto conj = find_automorphism(zi, "conj");
    auto gd = parse_matrix(zi, "1,i;0,1");
    auto gd_inv = gd.inverse();
    auto ggamma = CentralMap<GaussianRing>::det_power(zi, 1);
    Rng rng(123);
    for (int t = 0; t < 25; ++t) {
        auto a = random_unimodular(zi, 2, rng);
        // delta phi_D = phi_{delta(D)} delta
        REQUIRE(entrywise(conj, gd * a * gd_inv) ==
                entrywise(conj, gd) * entrywise(conj, a) * entrywise(conj, gd_inv));
        // delta Gamma = Gamma''' delta with gamma''' = delta gamma delta^{-1}
        auto lhs5 = entrywise(conj, a.scalar_mul(ggamma.scalar_of(a)));
        auto g5 = ggamma.twist_delta(conj);
        auto da = entrywise(conj, a);
        REQUIRE(lhs5 == da.scalar_mul(g5.scalar_of(da)));
        // Lambda delta = delta Lambda
        REQUIRE(contragredient(entrywise(conj, a)) == entrywise(conj, contragredient(a)));
    }
}

TEST_CASE("normalize random words agrees pointwise and is idempotent") {
    PrimeField f3(3);
    Rng rng(2024);
    for (int t = 0; t < 40; ++t) {
        FpWord w{f3, 2, {}};
        size_t len = 1 + rng.below(5);
        for (size_t k = 0; k < len; ++k) {
            switch (rng.below(3)) {
                case 0: w.gens.push_back(FpGen::inner(random_invertible(f3, 2, rng))); break;
                case 1: w.gens.push_back(FpGen::contragredient_gen()); break;
                default:
                    w.gens.push_back(FpGen::central(CentralMap<PrimeField>::det_power(
                        f3, static_cast<long long>(rng.below(3)))));
            }
        }
        auto sf = normalize(w);
        REQUIRE((sf.r() == 0 || sf.r() == 1));
        for (const auto& a : sample_invertible(f3, 2, 10, 3000 + t))
            REQUIRE(w.apply(a) == sf.apply(a));
        // idempotence: normalizing the normal form's own word reproduces it
        auto sf2 = normalize(sf.to_word());
        CHECK(sf2.d() == sf.d());
        CHECK(sf2.r() == sf.r());
        CHECK(sf2.gamma().describe() == sf.gamma().describe());
        CHECK(sf2.delta().name == sf.delta().name);
    }
}

TEST_CASE("normalize composes ring automorphisms and simplifies conj.conj") {
    GaussianRing zi;
    auto conj = find_automorphism(zi, "conj");
    AutomorphismWord<GaussianRing> w{
        zi, 2, {AutoGenerator<GaussianRing>::ring_aut(conj),
                AutoGenerator<GaussianRing>::ring_aut(conj)}};
    auto sf = normalize(w);
    CHECK(sf.delta().name == "id");
    AutomorphismWord<GaussianRing> w2{
        zi, 2, {AutoGenerator<GaussianRing>::contragredient_gen(),
                AutoGenerator<GaussianRing>::ring_aut(conj)}};
    auto sf2 = normalize(w2);
    CHECK(sf2.r() == 1);
    CHECK(sf2.delta().name == "conj");
    Rng rng(5);
    for (int t = 0; t < 50; ++t) {
        auto a = random_unimodular(zi, 2, rng);
        REQUIRE(w2.apply(a) == sf2.apply(a));
    }
}

TEST_CASE("normalize agrees pointwise over an infinite ring") {
    GaussianRing zi;
    auto conj = find_automorphism(zi, "conj");
    Rng rng(314);
    for (int t = 0; t < 8; ++t) {
        AutomorphismWord<GaussianRing> w{zi, 3, {}};
        size_t len = 1 + rng.below(5);
        for (size_t k = 0; k < len; ++k) {
            switch (rng.below(4)) {
                case 0:
                    w.gens.push_back(
                        AutoGenerator<GaussianRing>::inner(random_unimodular(zi, 3, rng)));
                    break;
                case 1:
                    w.gens.push_back(AutoGenerator<GaussianRing>::contragredient_gen());
                    break;
                case 2:
                    w.gens.push_back(AutoGenerator<GaussianRing>::central(
                        CentralMap<GaussianRing>::det_power(zi, 1)));
                    break;
                default: w.gens.push_back(AutoGenerator<GaussianRing>::ring_aut(conj));
            }
        }
        auto sf = normalize(w);
        REQUIRE((sf.r() == 0 || sf.r() == 1));
        for (int s = 0; s < 50; ++s) {
            auto a = random_unimodular(zi, 3, rng);
            REQUIRE(w.apply(a) == sf.apply(a));
        }
    }
}

TEST_CASE("table central maps survive normalization twists") {
    PrimeField f3(3);
    auto gl = FiniteMatrixGroup<PrimeField>::enumerate(f3, 2, GroupKind::GL);
    std::vector<std::pair<FpMat, PrimeField::Element>> entries;
    for (const auto& m : gl.elements()) entries.emplace_back(m, m.det());
    auto gamma_t = CentralMap<PrimeField>::table(f3, entries);
    auto d = FpMat::from_ints(f3, {{1, 2}, {1, 1}});

    // inner twist: gamma o phi_D, exercised through the rewriting engine
    FpWord w1{f3, 2, {FpGen::central(gamma_t), FpGen::inner(d)}};
    auto sf1 = normalize(w1);
    for (const auto& a : gl.elements()) REQUIRE(w1.apply(a) == sf1.apply(a));

    // contragredient twist: gamma(Lambda(B))^{-1}
    FpWord w2{f3, 2, {FpGen::central(gamma_t), FpGen::contragredient_gen()}};
    auto sf2 = normalize(w2);
    for (const auto& a : gl.elements()) REQUIRE(w2.apply(a) == sf2.apply(a));

    // composition of two tables
    FpWord w3{f3, 2, {FpGen::central(gamma_t), FpGen::central(gamma_t)}};
    auto sf3 = normalize(w3);
    for (const auto& a : gl.elements()) REQUIRE(w3.apply(a) == sf3.apply(a));

    // delta twist over Z[i]: a table on the order-4 group of unit scalar
    // matrices, conjugated through the ring automorphism
    GaussianRing zi;
    auto conj = find_automorphism(zi, "conj");
    using ZiMat = Matrix<GaussianRing>;
    using ZiGen = AutoGenerator<GaussianRing>;
    std::vector<ZiMat> units_group;
    std::vector<std::pair<ZiMat, GaussianInt>> zi_entries;
    auto cur = zi.one();
    for (int k = 0; k < 4; ++k) {
        auto mtx = ZiMat::scalar(zi, 2, cur);
        units_group.push_back(mtx);
        zi_entries.emplace_back(mtx, mtx.det()); // det(i^k I) = (-1)^k
        cur = zi.mul(cur, zi.imaginary_unit());
    }
    auto zi_table = CentralMap<GaussianRing>::table(zi, zi_entries);
    AutomorphismWord<GaussianRing> w4{
        zi, 2, {ZiGen::ring_aut(conj), ZiGen::central(zi_table)}};
    auto sf4 = normalize(w4);
    for (const auto& a : units_group) REQUIRE(w4.apply(a) == sf4.apply(a));
}

TEST_CASE("words over the four generators preserve SL") {
    PrimeField f3(3);
    auto sl = FiniteMatrixGroup<PrimeField>::enumerate(f3, 2, GroupKind::SL);
    auto d = FpMat::from_ints(f3, {{1, 1}, {1, 2}});
    FpWord w{f3, 2, {FpGen::central(CentralMap<PrimeField>::det_power(f3, 1)),
                     FpGen::contragredient_gen(), FpGen::inner(d)}};
    for (const auto& a : sl.elements()) REQUIRE(w.apply(a).det() == f3.one());
}

TEST_CASE("check_automorphism verdicts") {
    PrimeField f3(3), f2(2);
    auto gl3 = FiniteMatrixGroup<PrimeField>::enumerate(f3, 2, GroupKind::GL);
    auto gl2 = FiniteMatrixGroup<PrimeField>::enumerate(f2, 2, GroupKind::GL);

    auto ident = [](const FpMat& a) { return a; };
    CHECK(check_automorphism<PrimeField>(ident, gl3.elements()).ok);

    // det-power central map on GL_2(F_2): det is identically 1, so the word
    // acts as the identity and passes
    auto gamma2 = CentralMap<PrimeField>::det_power(f2, 1);
    auto central2 = [&](const FpMat& a) { return a.scalar_mul(gamma2.scalar_of(a)); };
    CHECK(check_automorphism<PrimeField>(central2, gl2.elements()).ok);

    // a corrupted table central map must fail with a counterexample
    std::vector<std::pair<FpMat, PrimeField::Element>> entries;
    for (const auto& m : gl3.elements()) entries.emplace_back(m, m.det());
    CHECK_NOTHROW(CentralMap<PrimeField>::table(f3, entries));
    entries[7].second = f3.mul(entries[7].second, f3.from_int(2)); // corrupt one value
    auto corrupted = CentralMap<PrimeField>::table_unchecked(f3, entries);
    CHECK(throws_code([&] { CentralMap<PrimeField>::table(f3, entries); }, errc::domain_error));
    auto phi_bad = [&](const FpMat& a) { return a.scalar_mul(corrupted.scalar_of(a)); };
    auto verdict = check_automorphism<PrimeField>(phi_bad, gl3.elements());
    CHECK_FALSE(verdict.ok);
    CHECK(verdict.counterexample.has_value());
    // the counterexample is a genuine witness
    auto [ca, cb] = *verdict.counterexample;
    CHECK(phi_bad(ca * cb) != phi_bad(ca) * phi_bad(cb));

    // a non-injective map is rejected by the bijectivity pass
    auto collapse = [&](const FpMat&) { return FpMat::identity(f3, 2); };
    CHECK_FALSE(check_automorphism<PrimeField>(collapse, gl3.elements()).ok);
}

TEST_CASE("table central maps reject off-domain queries") {
    PrimeField f3(3);
    auto sl = FiniteMatrixGroup<PrimeField>::enumerate(f3, 2, GroupKind::SL);
    std::vector<std::pair<FpMat, PrimeField::Element>> entries;
    for (const auto& m : sl.elements()) entries.emplace_back(m, f3.one());
    auto gamma = CentralMap<PrimeField>::table(f3, entries);
    CHECK(f3.equal(gamma.scalar_of(sl[3]), f3.one()));
    auto outside = FpMat::from_ints(f3, {{2, 0}, {0, 1}}); // det 2, not in SL
    CHECK(throws_code([&] { gamma.scalar_of(outside); }, errc::domain_error));
    CHECK(throws_code([&] { central_apply(gamma, outside); }, errc::domain_error));

    // composing a table over SL with one over GL evaluates pointwise on the
    // wider domain, so the SL lookup falls off its table
    auto gl = FiniteMatrixGroup<PrimeField>::enumerate(f3, 2, GroupKind::GL);
    std::vector<std::pair<FpMat, PrimeField::Element>> gl_entries;
    for (const auto& m : gl.elements()) gl_entries.emplace_back(m, f3.one());
    auto gamma_gl = CentralMap<PrimeField>::table(f3, gl_entries);
    CHECK(throws_code([&] { CentralMap<PrimeField>::compose(gamma, gamma_gl, 2); },
                      errc::domain_error));
    // the other direction stays inside the SL table and composes fine
    CHECK_NOTHROW(CentralMap<PrimeField>::compose(gamma_gl, gamma, 2));
}

TEST_CASE("word DSL round trip") {
    PrimeField f3(3);
    auto w = parse_word(f3, 2, "L I[1,1;0,1] C[det^1]");
    REQUIRE(w.gens.size() == 3);
    CHECK(w.gens[0].kind == GenKind::contragredient);
    CHECK(w.gens[1].kind == GenKind::inner);
    CHECK(w.gens[2].kind == GenKind::central);
    CHECK(word_to_dsl(w) == "L I[1,1;0,1] C[det^1]");
    auto empty = parse_word(f3, 2, "");
    CHECK(empty.gens.empty());
    for (const auto& a : sample_invertible(f3, 2, 5, 8)) CHECK(empty.apply(a) == a);

    GaussianRing zi;
    auto wz = parse_word(zi, 2, "R[conj] I[1,1+i;0,1]");
    CHECK(wz.gens[0].kind == GenKind::ring_aut);
    CHECK(word_to_dsl(wz) == "R[conj] I[1,1+i;0,1]");

    CHECK(throws_code([&] { parse_word(f3, 2, "X"); }, errc::parse_error));
    CHECK(throws_code([&] { parse_word(f3, 2, "C[dot^1]"); }, errc::parse_error));
    CHECK(throws_code([&] { parse_word(f3, 2, "I[1,1;0,1"); }, errc::parse_error));
    CHECK(throws_code([&] { parse_word(f3, 3, "I[1,1;0,1]"); }, errc::dimension_mismatch));
}
