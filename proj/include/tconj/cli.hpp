// Command-line frontend. Every subcommand emits one structured record
// (JSON by default, TSV for tabular payloads) with a provenance echo of its
// inputs and seed; identical invocations produce byte-identical output.
// Exit codes: 0 = ok, 1 = a checked property was violated, 2 = usage or
// input error.
#pragma once

#include <iostream>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tconj/automorphism.hpp"
#include "tconj/error.hpp"
#include "tconj/matrix.hpp"
#include "tconj/ring_dispatch.hpp"
#include "tconj/rings.hpp"
#include "tconj/sampler.hpp"
#include "tconj/sampling.hpp"
#include "tconj/twisted.hpp"
#include "tconj/witnesses.hpp"

namespace tconj::cli {

using Json = nlohmann::ordered_json;

constexpr int exit_ok = 0;
constexpr int exit_violated = 1;
constexpr int exit_usage = 2;

namespace detail {

inline void emit(std::ostream& out, const Json& record) { out << record.dump(2) << "\n"; }

inline int finish(std::ostream& out, Json record, bool ok) {
    record["status"] = ok ? "ok" : "violated";
    // move status to the front for readability
    Json ordered;
    ordered["status"] = record["status"];
    for (auto& [key, value] : record.items())
        if (key != "status") ordered[key] = value;
    emit(out, ordered);
    return ok ? exit_ok : exit_violated;
}

inline GroupKind parse_kind(const std::string& kind) {
    if (kind == "GL") return GroupKind::GL;
    if (kind == "SL") return GroupKind::SL;
    raise(errc::parse_error, "group kind must be GL or SL, got '" + kind + "'");
}

template <Ring R>
CentralMap<R> parse_gamma(const R& ring, const std::string& text) {
    if (text.empty() || text == "trivial") return CentralMap<R>::trivial(ring);
    if (text.rfind("det^", 0) == 0) {
        try {
            return CentralMap<R>::det_power(ring, std::stoll(text.substr(4)));
        } catch (const Error&) {
            throw;
        } catch (...) {
            raise(errc::parse_error, "bad central map '" + text + "'");
        }
    }
    raise(errc::parse_error, "central map must be 'trivial' or 'det^<e>', got '" + text + "'");
}

template <Ring R>
Json family_to_json(const WitnessFamily<R>& fam) {
    Json j;
    j["theorem"] = fam.theorem;
    j["case"] = fam.case_no;
    j["n"] = fam.n;
    j["ring"] = fam.ring.spec();
    j["d"] = fam.ring.to_string(fam.d);
    if (fam.delta) {
        j["delta"] = fam.delta->name;
        j["m"] = fam.m;
        j["parity"] = parity_name(fam.parity());
    }
    Json params = Json::array(), matrices = Json::array();
    for (const auto& p : fam.params) params.push_back(fam.ring.to_string(p));
    for (const auto& m : fam.members) matrices.push_back(matrix_literal(m));
    j["params"] = params;
    j["matrices"] = matrices;
    return j;
}

template <Ring R>
WitnessFamily<R> family_from_json(const R& ring, const Json& j) {
    WitnessFamily<R> fam(j.at("theorem").get<int>(), j.at("case").get<int>(),
                          j.at("n").get<size_t>(), ring,
                          ring.parse(j.at("d").get<std::string>()));
    if (j.contains("delta")) {
        fam.delta = find_automorphism(ring, j.at("delta").get<std::string>());
        fam.m = j.at("m").get<unsigned>();
    }
    for (const auto& p : j.at("params")) fam.params.push_back(ring.parse(p.get<std::string>()));
    for (const auto& m : j.at("matrices")) fam.members.push_back(parse_matrix(ring, m.get<std::string>()));
    for (const auto& m : fam.members)
        if (m.n() != fam.n) raise(errc::dimension_mismatch, "family member dimension mismatch");
    return fam;
}

template <Ring R>
Json standard_form_to_json(const StandardAutomorphism<R>& sf) {
    Json j;
    j["d"] = matrix_literal(sf.d());
    j["r"] = sf.r();
    j["gamma"] = sf.gamma().describe();
    j["delta"] = sf.delta().name;
    return j;
}

// ---------------------------------------------------------------------------

struct CommonFlags {
    std::string ring_spec;
    std::string format = "json";
    uint64_t seed = 0;
};

inline int cmd_lemma2(const CommonFlags& common, uint64_t trials, long long bound,
                      bool exhaustive, std::ostream& out) {
    return with_ring(common.ring_spec, [&](auto ring) -> int {
        using R = decltype(ring);
        Json rec;
        rec["command"] = "lemma2";
        rec["seed"] = common.seed;
        rec["inputs"] = {{"ring", common.ring_spec},
                         {"trials", trials},
                         {"bound", bound},
                         {"exhaustive", exhaustive}};
        uint64_t failures = 0, checked = 0;
        if (exhaustive) {
            if constexpr (std::is_same_v<R, PrimeField>) {
                if (ring.size() > 5) raise(errc::too_large, "exhaustive mode supports p <= 5");
                std::vector<Matrix<R>> all;
                size_t p = ring.size();
                for (size_t a = 0; a < p; ++a)
                    for (size_t b = 0; b < p; ++b)
                        for (size_t c = 0; c < p; ++c)
                            for (size_t d = 0; d < p; ++d) {
                                Matrix<R> m(ring, 2, 2);
                                m.at(0, 0) = ring.element_at(a);
                                m.at(0, 1) = ring.element_at(b);
                                m.at(1, 0) = ring.element_at(c);
                                m.at(1, 1) = ring.element_at(d);
                                all.push_back(m);
                            }
                for (const auto& x : all)
                    for (const auto& a : all) {
                        ++checked;
                        if (!ring.equal(congruence_antitrace(x, a),
                                        ring.mul(a.antitrace(), x.det())))
                            ++failures;
                    }
            } else {
                raise(errc::invalid_ring_spec, "exhaustive lemma2 check needs a finite ring");
            }
        } else {
            Rng rng(common.seed);
            for (uint64_t t = 0; t < trials; ++t) {
                ++checked;
                Matrix<R> x = random_matrix(ring, 2, 2, rng, bound);
                Matrix<R> a = random_matrix(ring, 2, 2, rng, bound);
                if (!ring.equal(congruence_antitrace(x, a), ring.mul(a.antitrace(), x.det())))
                    ++failures;
            }
        }
        rec["payload"] = {{"trials", checked}, {"failures", failures}};
        return finish(out, rec, failures == 0);
    });
}

inline int cmd_lemma1(const CommonFlags& common, const std::string& poly_lit, uint64_t count,
                      uint64_t budget, const std::string& stream_name, std::ostream& out) {
    return with_ring(common.ring_spec, [&](auto ring) -> int {
        using R = decltype(ring);
        UniPoly<R> f = poly_parse(ring, poly_lit, "x");
        ElementStream<R> stream;
        if (stream_name == "gauss") {
            if constexpr (std::is_same_v<R, GaussianRing>)
                stream = gaussian_stream(ring, true);
            else
                raise(errc::invalid_ring_spec, "stream 'gauss' needs ring Zi");
        } else if (stream_name == "nat0" || stream_name == "nat1") {
            long long start = stream_name == "nat1" ? 1 : 0;
            if constexpr (std::is_same_v<R, PrimeField>)
                stream = enumeration_stream(ring);
            else
                stream = counting_stream(ring, start);
        } else {
            raise(errc::parse_error, "stream must be nat0, nat1, or gauss");
        }
        auto sampled = distinct_image_sampler(ring, f, stream, count, budget);
        Json rec;
        rec["command"] = "lemma1";
        rec["seed"] = common.seed;
        rec["inputs"] = {{"ring", common.ring_spec},
                         {"poly", poly_lit},
                         {"count", count},
                         {"budget", budget},
                         {"stream", stream_name}};
        Json elems = Json::array(), images = Json::array();
        for (const auto& e : sampled.elements) elems.push_back(ring.to_string(e));
        for (const auto& e : sampled.images) images.push_back(ring.to_string(e));
        rec["payload"] = {{"degree", poly_degree(ring, f)},
                          {"scanned", sampled.scanned},
                          {"scan_bound", sampler_scan_bound<R>(poly_degree(ring, f), count)},
                          {"elements", elems},
                          {"images", images}};
        return finish(out, rec, true);
    });
}

inline int cmd_psideg(const CommonFlags& common, const std::string& parity_name_in,
                      unsigned max_m, std::ostream& out) {
    Parity parity;
    if (parity_name_in == "even")
        parity = Parity::even;
    else if (parity_name_in == "odd")
        parity = Parity::odd;
    else
        raise(errc::parse_error, "parity must be 'even' or 'odd'");
    if (max_m == 0) max_m = parity == Parity::even ? 64 : 32;

    IntegerRing z;
    PolynomialRing<IntegerRing> zx(z);
    bool all_match = true;
    Json table = Json::array();
    std::vector<std::pair<unsigned, long>> rows;
    for (unsigned m = 1; m <= max_m; ++m) {
        auto psi = psi_poly(m, parity);
        long deg = poly_degree(z, psi);
        long expected = parity == Parity::even ? static_cast<long>(m) : 2L * m;
        if (deg != expected) all_match = false;
        table.push_back({m, deg});
        rows.emplace_back(m, deg);
    }
    if (common.format == "tsv") {
        out << "m\tdegree\texpected\n";
        for (auto [m, deg] : rows)
            out << m << "\t" << deg << "\t" << (parity == Parity::even ? m : 2 * m) << "\n";
        return all_match ? exit_ok : exit_violated;
    }
    Json rec;
    rec["command"] = "psideg";
    rec["seed"] = common.seed;
    rec["inputs"] = {{"parity", parity_name_in}, {"max_m", max_m}};
    Json spots;
    if (max_m >= 2)
        spots["m2"] = zx.to_string(psi_poly(2, parity));
    rec["payload"] = {{"expected_degree", parity == Parity::even ? "m" : "2m"},
                      {"degrees", table},
                      {"all_match", all_match},
                      {"spot_values", spots}};
    return finish(out, rec, all_match);
}

inline int cmd_witness(const CommonFlags& common, int theorem, int case_no, size_t n,
                       const std::string& d_lit, uint64_t count, const std::string& delta_name,
                       unsigned m, std::ostream& out) {
    return with_ring(common.ring_spec, [&](auto ring) -> int {
        using R = decltype(ring);
        auto d = ring.parse(d_lit);
        WitnessFamily<R> fam = [&] {
            if (theorem == 1) return gen_theorem1(ring, case_no, n, d, count);
            if (theorem == 2) {
                auto delta = find_automorphism(ring, delta_name);
                return gen_theorem2(ring, case_no, n, d, delta, m, count);
            }
            raise(errc::parse_error, "theorem must be 1 or 2");
        }();
        Json rec;
        rec["command"] = "witness";
        rec["seed"] = common.seed;
        rec["inputs"] = {{"ring", common.ring_spec}, {"theorem", theorem}, {"case", case_no},
                         {"n", n},                   {"d", d_lit},         {"count", count},
                         {"delta", delta_name},      {"m", m}};
        rec["payload"] = {{"family", family_to_json(fam)},
                          {"default_invariant", default_invariant(fam).describe()}};
        return finish(out, rec, true);
    });
}

inline int cmd_certify(const CommonFlags& common, const std::string& invariant_name,
                       const std::string& in_path, std::istream& in, std::ostream& out) {
    Json doc;
    try {
        if (in_path.empty() || in_path == "-") {
            doc = Json::parse(in);
        } else {
            std::ifstream file(in_path);
            if (!file) raise(errc::parse_error, "cannot open '" + in_path + "'");
            doc = Json::parse(file);
        }
    } catch (const Json::exception& e) {
        raise(errc::parse_error, std::string("bad family JSON: ") + e.what());
    }
    if (doc.contains("payload") && doc["payload"].contains("family"))
        doc = doc["payload"]["family"];
    else if (doc.contains("family"))
        doc = doc["family"];
    std::string ring_spec = doc.at("ring").get<std::string>();

    return with_ring(ring_spec, [&](auto ring) -> int {
        using R = decltype(ring);
        WitnessFamily<R> fam = family_from_json(ring, doc);
        InvariantSpec<R> spec = [&] {
            if (invariant_name == "auto") return default_invariant(fam);
            if (invariant_name == "trn") return InvariantSpec<R>::trace_power(fam.n);
            if (invariant_name == "atr2") return InvariantSpec<R>::antitrace_square();
            if (invariant_name == "orbit") {
                if (!fam.delta)
                    raise(errc::parse_error, "orbit invariant needs theorem-2 family metadata");
                return default_invariant(fam);
            }
            raise(errc::parse_error, "invariant must be auto, trn, atr2, or orbit");
        }();
        auto cert = certify_separation(fam, spec);
        Json rec;
        rec["command"] = "certify";
        rec["seed"] = common.seed;
        rec["inputs"] = {{"invariant", spec.describe()}, {"in", in_path.empty() ? "-" : in_path}};
        Json values = Json::array();
        for (const auto& v : cert.values) values.push_back(ring.to_string(v));
        Json payload = {{"verdict", cert.separated ? "separated" : "collision"},
                        {"count", cert.values.size()},
                        {"values", values}};
        if (cert.separated)
            payload["bound"] = "R >= " + std::to_string(cert.bound());
        else
            payload["collision"] = {cert.collision->first, cert.collision->second};
        rec["payload"] = payload;
        return finish(out, rec, cert.separated);
    });
}

inline int cmd_reidemeister(const CommonFlags& common, size_t n, const std::string& kind_name,
                            const std::string& word_dsl, std::ostream& out) {
    return with_ring(common.ring_spec, [&](auto ring) -> int {
        using R = decltype(ring);
        if constexpr (!FiniteRing<R>) {
            raise(errc::invalid_ring_spec, "reidemeister needs a finite ring, got " + ring.spec());
        } else {
            auto g = FiniteMatrixGroup<R>::enumerate(ring, n, parse_kind(kind_name));
            auto word = parse_word(ring, n, word_dsl);
            auto sf = normalize(word);
            auto phi = [&](const Matrix<R>& a) { return sf.apply(a); };
            auto part = twisted_classes(g, phi);
            auto burn = burnside_reidemeister(g, phi);
            bool agree = part.reidemeister_number() == burn;
            if (common.format == "tsv") {
                out << "class\tsize\trepresentative\n";
                for (size_t c = 0; c < part.classes.size(); ++c)
                    out << c << "\t" << part.classes[c].size() << "\t"
                        << matrix_literal(g[part.classes[c].front()]) << "\n";
                return agree ? exit_ok : exit_violated;
            }
            Json rec;
            rec["command"] = "reidemeister";
            rec["seed"] = common.seed;
            rec["inputs"] = {{"ring", common.ring_spec},
                             {"n", n},
                             {"kind", kind_name},
                             {"auto", word_dsl}};
            Json classes = Json::array();
            for (const auto& cls : part.classes)
                classes.push_back({{"size", cls.size()},
                                   {"representative", matrix_literal(g[cls.front()])}});
            rec["payload"] = {{"group_order", g.size()},
                              {"normal_form", standard_form_to_json(sf)},
                              {"partition", part.reidemeister_number()},
                              {"burnside", burn},
                              {"classes", classes}};
            return finish(out, rec, agree);
        }
    });
}

inline int cmd_normalform(const CommonFlags& common, size_t n, const std::string& word_dsl,
                          uint64_t samples, std::ostream& out) {
    return with_ring(common.ring_spec, [&](auto ring) -> int {
        using R = decltype(ring);
        auto word = parse_word(ring, n, word_dsl);
        auto sf = normalize(word);
        Rng rng(common.seed);
        uint64_t mismatches = 0;
        for (uint64_t s = 0; s < samples; ++s) {
            Matrix<R> a = [&] {
                if constexpr (FiniteRing<R>)
                    return random_invertible(ring, n, rng);
                else
                    return random_unimodular(ring, n, rng);
            }();
            if (word.apply(a) != sf.apply(a)) ++mismatches;
        }
        Json rec;
        rec["command"] = "normalform";
        rec["seed"] = common.seed;
        rec["inputs"] = {{"ring", common.ring_spec}, {"n", n}, {"auto", word_dsl},
                         {"samples", samples}};
        rec["payload"] = {{"normal_form", standard_form_to_json(sf)},
                          {"samples", samples},
                          {"mismatches", mismatches}};
        return finish(out, rec, mismatches == 0);
    });
}

inline int cmd_oracle_implication(const CommonFlags& common, size_t n, const std::string& kind_name,
                                  const std::string& shape, unsigned num_d,
                                  const std::string& gammas, std::ostream& out) {
    return with_ring(common.ring_spec, [&](auto ring) -> int {
        using R = decltype(ring);
        if constexpr (!FiniteRing<R>) {
            raise(errc::invalid_ring_spec, "oracle needs a finite ring, got " + ring.spec());
        } else {
            if (shape != "even" && shape != "odd")
                raise(errc::parse_error, "shape must be 'even' or 'odd'");
            auto g = FiniteMatrixGroup<R>::enumerate(ring, n, parse_kind(kind_name));
            // twisting matrices D come from the full GL even when G = SL
            auto gl = FiniteMatrixGroup<R>::enumerate(ring, n, GroupKind::GL);
            std::vector<std::string> gamma_names;
            {
                std::stringstream ss(gammas);
                std::string item;
                while (std::getline(ss, item, ',')) gamma_names.push_back(item);
            }
            Rng rng(common.seed);
            Json configs = Json::array();
            uint64_t total_violations = 0;
            for (unsigned k = 0; k < num_d; ++k) {
                const Matrix<R>& d = gl[rng.below(gl.size())];
                for (const auto& gname : gamma_names) {
                    auto gamma = parse_gamma(ring, gname);
                    auto report = shape == "even" ? oracle_implication_even(g, d, gamma)
                                                  : oracle_implication_odd(g, d, gamma);
                    total_violations += report.violations.size();
                    configs.push_back({{"d", matrix_literal(d)},
                                       {"gamma", gamma.describe()},
                                       {"classes", report.classes},
                                       {"pairs_same_det", report.pairs_same_det},
                                       {"violations", report.violations.size()}});
                }
            }
            Json rec;
            rec["command"] = "oracle";
            rec["seed"] = common.seed;
            rec["inputs"] = {{"mode", "implication"}, {"ring", common.ring_spec},
                             {"n", n},                {"kind", kind_name},
                             {"shape", shape},        {"num_d", num_d},
                             {"gammas", gammas}};
            rec["payload"] = {{"configs", configs}, {"total_violations", total_violations}};
            return finish(out, rec, total_violations == 0);
        }
    });
}

inline int cmd_oracle_obstruction(const CommonFlags& common, size_t n, uint64_t count,
                                  const std::string& gamma_name, std::ostream& out) {
    return with_ring(common.ring_spec, [&](auto ring) -> int {
        using R = decltype(ring);
        if constexpr (!FiniteRing<R>) {
            raise(errc::invalid_ring_spec, "oracle needs a finite ring, got " + ring.spec());
        } else {
            IntegerRing z;
            auto fam = gen_theorem1(z, 2, n, z.one(), count);
            auto g = FiniteMatrixGroup<R>::enumerate(ring, n, GroupKind::GL);
            auto gamma = parse_gamma(ring, gamma_name);
            std::vector<Matrix<R>> reduced;
            std::vector<typename R::Element> atr2;
            for (const auto& w : fam.members) {
                auto red = map_matrix(w, ring, [&](const Integer& e) { return ring.from_integer(e); });
                reduced.push_back(red);
                atr2.push_back(ring_pow(ring, block_split(red, 2).br.antitrace(), 2));
            }
            uint64_t distinct_pairs = 0, found = 0;
            Json pairs = Json::array();
            for (size_t i = 0; i < reduced.size(); ++i)
                for (size_t j = i + 1; j < reduced.size(); ++j) {
                    if (ring.equal(atr2[i], atr2[j])) continue;
                    ++distinct_pairs;
                    auto verdict = obstruction_exhaustive(reduced[i], reduced[j], g, gamma);
                    if (verdict.conjugator) ++found;
                    pairs.push_back({{"i", i},
                                     {"j", j},
                                     {"verdict", verdict.conjugator ? "conjugator" : "no-conjugator"}});
                }
            Json rec;
            rec["command"] = "oracle";
            rec["seed"] = common.seed;
            rec["inputs"] = {{"mode", "obstruction"}, {"ring", common.ring_spec},
                             {"n", n},                {"count", count},
                             {"gamma", gamma_name}};
            rec["payload"] = {{"group_order", g.size()},
                              {"distinct_atr2_pairs", distinct_pairs},
                              {"conjugators_found", found},
                              {"pairs", pairs}};
            return finish(out, rec, found == 0);
        }
    });
}

inline int cmd_solve(const CommonFlags& common, size_t n, const std::string& kind_name,
                     const std::string& word_dsl, const std::string& x_lit,
                     const std::string& y_lit, std::ostream& out) {
    return with_ring(common.ring_spec, [&](auto ring) -> int {
        using R = decltype(ring);
        if constexpr (!FiniteRing<R>) {
            raise(errc::invalid_ring_spec, "solve needs a finite ring, got " + ring.spec());
        } else {
            auto g = FiniteMatrixGroup<R>::enumerate(ring, n, parse_kind(kind_name));
            auto sf = normalize(parse_word(ring, n, word_dsl));
            auto phi = [&](const Matrix<R>& a) { return sf.apply(a); };
            Matrix<R> x = parse_matrix(ring, x_lit);
            Matrix<R> y = parse_matrix(ring, y_lit);
            if (!g.index_of(x) || !g.index_of(y))
                raise(errc::domain_error, "x and y must be members of the group");
            auto zopt = solve_twisted(x, y, phi, g);
            Json rec;
            rec["command"] = "solve";
            rec["seed"] = common.seed;
            rec["inputs"] = {{"ring", common.ring_spec}, {"n", n},       {"kind", kind_name},
                             {"auto", word_dsl},         {"x", x_lit},   {"y", y_lit}};
            Json payload;
            payload["found"] = zopt.has_value();
            if (zopt) {
                payload["z"] = matrix_literal(*zopt);
                payload["verified"] = twisted_act(*zopt, y, phi) == x;
            }
            rec["payload"] = payload;
            return finish(out, rec, true);
        }
    });
}

} // namespace detail

// Parses argv-style arguments (without the program name) and runs one
// subcommand. Returns the process exit code.
inline int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
               std::ostream& err) {
    CLI::App app{"exact twisted-conjugacy computations for matrix groups over commutative rings"};
    app.require_subcommand(1);

    detail::CommonFlags common;

    auto add_common = [&](CLI::App* cmd, bool with_ring_flag = true) {
        if (with_ring_flag)
            cmd->add_option("--ring", common.ring_spec, "ring spec: Z | Fp:<p> | Zi | poly:<spec>")
                ->required();
        cmd->add_option("--seed", common.seed, "deterministic seed (default 0)");
        cmd->add_option("--format", common.format, "output format: json | tsv")
            ->check(CLI::IsMember({"json", "tsv"}));
    };

    // lemma2
    uint64_t trials = 10000;
    long long bound = 1000;
    bool exhaustive = false;
    auto* lemma2 = app.add_subcommand("lemma2", "check atr(XAX^T) = atr(A)det(X) on sampled pairs");
    add_common(lemma2);
    lemma2->add_option("--trials", trials, "number of sampled pairs");
    lemma2->add_option("--bound", bound, "entry height bound for sampling");
    lemma2->add_flag("--exhaustive", exhaustive, "scan all 2x2 pairs (finite rings, p <= 5)");

    // lemma1
    std::string poly_lit = "x^2";
    uint64_t count = 3, budget = 0;
    std::string stream_name = "nat1";
    auto* lemma1 = app.add_subcommand("lemma1", "distinct-image sampler demo");
    add_common(lemma1);
    lemma1->add_option("--poly", poly_lit, "polynomial in x over the ring");
    lemma1->add_option("--count", count, "number of distinct-image elements");
    lemma1->add_option("--budget", budget, "scan budget (0 = (count-1)deg(f)+1)");
    lemma1->add_option("--stream", stream_name, "element stream: nat0 | nat1 | gauss");

    // psideg
    std::string parity = "even";
    unsigned max_m = 0;
    auto* psideg = app.add_subcommand("psideg", "psi_m degree sweep");
    add_common(psideg, false);
    psideg->add_option("--parity", parity, "even | odd")->required();
    psideg->add_option("--max-m", max_m, "sweep bound (default 64 even / 32 odd)");

    // witness
    int theorem = 1, case_no = 1;
    size_t dim_n = 3;
    std::string d_lit = "1", delta_name = "id";
    unsigned order_m = 1;
    uint64_t wit_count = 10;
    auto* witness = app.add_subcommand("witness", "generate a witness family");
    add_common(witness);
    witness->add_option("--theorem", theorem, "1 | 2")->required();
    witness->add_option("--case", case_no, "1 | 2")->required();
    witness->add_option("--n", dim_n, "matrix dimension (>= 3)");
    witness->add_option("--d", d_lit, "determinant element literal");
    witness->add_option("--count", wit_count, "family size");
    witness->add_option("--delta", delta_name, "ring automorphism name (theorem 2)");
    witness->add_option("--m", order_m, "delta orbit length m (theorem 2)");

    // certify
    std::string invariant_name = "auto", in_path;
    auto* certify = app.add_subcommand("certify", "separation certificate for a family");
    add_common(certify, false);
    certify->add_option("--invariant", invariant_name, "auto | trn | atr2 | orbit");
    certify->add_option("--in", in_path, "family JSON file (default: stdin)");

    // reidemeister
    std::string kind_name = "GL", word_dsl;
    auto* reid = app.add_subcommand("reidemeister", "twisted class count over a finite group");
    add_common(reid);
    reid->add_option("--n", dim_n, "matrix dimension");
    reid->add_option("--kind", kind_name, "GL | SL");
    reid->add_option("--auto", word_dsl, "automorphism word; rightmost token acts first (empty = identity)");

    // normalform
    uint64_t samples = 50;
    auto* nform = app.add_subcommand("normalform", "reduce a word to phi_D Lambda^r Gamma delta");
    add_common(nform);
    nform->add_option("--n", dim_n, "matrix dimension");
    nform->add_option("--auto", word_dsl, "automorphism word");
    nform->add_option("--samples", samples, "pointwise verification sample count");

    // oracle
    std::string mode = "implication", shape = "even", gammas = "trivial,det^1", gamma_name = "trivial";
    unsigned num_d = 5;
    auto* oracle = app.add_subcommand("oracle", "exhaustive implication / obstruction checks");
    add_common(oracle);
    oracle->add_option("--mode", mode, "implication | obstruction");
    oracle->add_option("--n", dim_n, "matrix dimension");
    oracle->add_option("--kind", kind_name, "GL | SL (implication)");
    oracle->add_option("--shape", shape, "even | odd (implication)");
    oracle->add_option("--num-d", num_d, "sampled twisting matrices (implication)");
    oracle->add_option("--gammas", gammas, "comma list: trivial | det^<e> (implication)");
    oracle->add_option("--count", wit_count, "witness count (obstruction)");
    oracle->add_option("--gamma", gamma_name, "central map (obstruction)");

    // solve
    std::string x_lit, y_lit;
    auto* solve = app.add_subcommand("solve", "search a twisted conjugator in a finite group");
    add_common(solve);
    solve->add_option("--n", dim_n, "matrix dimension");
    solve->add_option("--kind", kind_name, "GL | SL");
    solve->add_option("--auto", word_dsl, "automorphism word");
    solve->add_option("--x", x_lit, "target matrix literal")->required();
    solve->add_option("--y", y_lit, "source matrix literal")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return exit_usage;
    }

    try {
        if (lemma2->parsed()) return detail::cmd_lemma2(common, trials, bound, exhaustive, out);
        if (lemma1->parsed())
            return detail::cmd_lemma1(common, poly_lit, count, budget, stream_name, out);
        if (psideg->parsed()) return detail::cmd_psideg(common, parity, max_m, out);
        if (witness->parsed())
            return detail::cmd_witness(common, theorem, case_no, dim_n, d_lit, wit_count,
                                       delta_name, order_m, out);
        if (certify->parsed()) return detail::cmd_certify(common, invariant_name, in_path, in, out);
        if (reid->parsed()) return detail::cmd_reidemeister(common, dim_n, kind_name, word_dsl, out);
        if (nform->parsed()) return detail::cmd_normalform(common, dim_n, word_dsl, samples, out);
        if (oracle->parsed()) {
            if (mode == "implication")
                return detail::cmd_oracle_implication(common, dim_n, kind_name, shape, num_d,
                                                      gammas, out);
            if (mode == "obstruction")
                return detail::cmd_oracle_obstruction(common, dim_n, wit_count, gamma_name, out);
            raise(errc::parse_error, "oracle mode must be 'implication' or 'obstruction'");
        }
        if (solve->parsed())
            return detail::cmd_solve(common, dim_n, kind_name, word_dsl, x_lit, y_lit, out);
        err << "usage error: no subcommand\n";
        return exit_usage;
    } catch (const Error& e) {
        Json rec;
        rec["status"] = "error";
        rec["error"] = {{"code", std::string(errc_name(e.code()))}, {"message", e.what()}};
        detail::emit(out, rec);
        return exit_usage;
    }
}

} // namespace tconj::cli
