#include "supverma/scenario.hpp"

#include <chrono>

#include "supverma/free_oracle.hpp"

namespace supverma {

using nlohmann::json;

const std::vector<std::string>& all_check_names() {
    static const std::vector<std::string> names = {"sigma",    "oracle", "grading", "transitivity", "phi",
                                                   "psi_dual", "thm36",  "forms",   "mixed"};
    return names;
}

Scenario scenario_from_json(const nlohmann::json& j) {
    Scenario sc;
    if (!j.is_object()) throw std::invalid_argument("scenario must be a JSON object");
    sc.params.p = j.at("p").get<uint32_t>();
    require_odd_prime(sc.params.p);
    sc.params.k = j.at("k").get<int>();
    sc.params.l = j.at("l").get<int>();
    sc.params.m = j.at("m").get<std::vector<int>>();
    if (sc.params.k < 1 || sc.params.l < 1) throw std::invalid_argument("k and l must be >= 1");
    if (static_cast<int>(sc.params.m.size()) != sc.params.k)
        throw std::invalid_argument("m must have exactly k entries");
    for (int mi : sc.params.m)
        if (mi < 1) throw std::invalid_argument("m entries must be >= 1");
    if (sc.params.l > 20) throw std::invalid_argument("l too large");

    sc.module_spec = j.value("module", "trivial");
    static const std::vector<std::string> specs = {"trivial",  "natural",    "dual_natural",
                                                   "adjoint0", "sigma_half", "custom"};
    if (std::find(specs.begin(), specs.end(), sc.module_spec) == specs.end())
        throw std::invalid_argument("unknown module spec: " + sc.module_spec);
    if (sc.module_spec == "custom") {
        sc.module_file = j.value("module_file", "");
        if (sc.module_file.empty()) throw std::invalid_argument("custom module requires module_file");
    }

    if (!j.contains("checks") || (j.at("checks").is_string() && j.at("checks") == "all"))
        sc.checks = all_check_names();
    else {
        for (const auto& c : j.at("checks")) {
            std::string name = c.get<std::string>();
            if (name == "all") {
                sc.checks = all_check_names();
                break;
            }
            if (std::find(all_check_names().begin(), all_check_names().end(), name) == all_check_names().end())
                throw std::invalid_argument("unknown check: " + name);
            sc.checks.push_back(name);
        }
    }
    sc.seed = j.value("seed", static_cast<uint64_t>(1));
    sc.plant = j.value("plant", "none");
    if (sc.plant != "none" && sc.plant != "corrupt_bracket")
        throw std::invalid_argument("unknown plant: " + sc.plant);

    // size guard on dim Ind = 2^l p^{sum m} dim V for the built-in modules
    double oc = 1;
    for (int mi : sc.params.m)
        for (int t = 0; t < mi; ++t) oc *= sc.params.p;
    oc *= 1 << sc.params.l;
    double dv = 1;
    int kl = sc.params.k + sc.params.l;
    if (sc.module_spec == "natural" || sc.module_spec == "dual_natural") dv = kl;
    if (sc.module_spec == "adjoint0") dv = static_cast<double>(kl) * kl;
    if (sc.module_spec != "custom" && oc * dv > 5000)
        throw std::invalid_argument("estimated dim Ind exceeds 5000; refusing this configuration");
    return sc;
}

nlohmann::json scenario_to_json(const Scenario& sc) {
    json j;
    j["p"] = sc.params.p;
    j["k"] = sc.params.k;
    j["l"] = sc.params.l;
    j["m"] = sc.params.m;
    j["module"] = sc.module_spec;
    if (!sc.module_file.empty()) j["module_file"] = sc.module_file;
    j["checks"] = sc.checks;
    j["seed"] = sc.seed;
    if (sc.plant != "none") j["plant"] = sc.plant;
    return j;
}

WittAlgebra build_scenario_algebra(const Scenario& sc) {
    WittAlgebra w = WittAlgebra::build(sc.params);
    if (sc.plant == "corrupt_bracket") {
        // scale one structure constant (and its anticommuted partner) so
        // anticommutativity survives but Jacobi does not
        for (size_t i = 0; i < w.dim(); ++i)
            for (size_t j = 0; j < w.dim(); ++j) {
                if (i == j || w.bracket(i, j).empty()) continue;
                w.mutable_bracket(i, j)[0].second =
                    fp_mul(w.bracket(i, j)[0].second, 2, w.params().p);
                w.mutable_bracket(j, i)[0].second =
                    fp_mul(w.bracket(j, i)[0].second, 2, w.params().p);
                return w;
            }
    }
    return w;
}

KModule build_scenario_module(const WittAlgebra& w, const Scenario& sc) {
    KModule v;
    if (sc.module_spec == "trivial")
        v = trivial_module(w);
    else if (sc.module_spec == "natural")
        v = natural_module(w);
    else if (sc.module_spec == "dual_natural")
        v = dual_natural_module(w);
    else if (sc.module_spec == "adjoint0")
        v = adjoint0_module(w);
    else if (sc.module_spec == "sigma_half")
        v = sigma_half_module(w);
    else
        v = kmodule_from_json(w, read_json_file(sc.module_file));
    double dim_ind = static_cast<double>(w.omonos().count()) * v.dim();
    if (dim_ind > 5000) throw std::invalid_argument("dim Ind exceeds 5000; refusing this configuration");
    return v;
}

namespace {

struct CheckContext {
    const Scenario& sc;
    const WittAlgebra& w;
    const UEnv& env;
    const KModule& v;
};

size_t expected_dim(const CheckContext& c) { return c.env.mono_count() * c.v.dim(); }

json run_sigma_check(const CheckContext& c, bool& pass) {
    const WittAlgebra& w = c.w;
    std::vector<uint32_t> sigma = compute_sigma(w);

    // independent route: full ad matrices on L/K and the supertrace map
    std::vector<BasisLabel> neg_labels;
    for (int i = 0; i < w.neg_dim(); ++i) neg_labels.push_back({w.name(i), {w.parity(i), -1}});
    GradedSpace lk(neg_labels, w.params().p);
    bool match = true, zero_odd = true, zero_pos = true;
    json table = json::object();
    for (size_t j = 0; j < w.k_dim(); ++j) {
        size_t x = w.k_global(j);
        FpMatrix rho(w.neg_dim(), w.neg_dim(), w.params().p);
        for (int i = 0; i < w.neg_dim(); ++i)
            for (const auto& [t, cc] : w.bracket(x, i))
                if (w.is_negative(t)) rho.set(t, i, cc);
        // supertrace() requires an even map; odd generators have zero
        // diagonal blocks, handled directly
        uint32_t oracle = 0;
        if (w.parity(x) == Parity::even)
            oracle = supertrace(SuperMap{lk, lk, rho, Parity::even, 0}).value;
        if (oracle != sigma[j]) match = false;
        if (w.parity(x) == Parity::odd && sigma[j] != 0) zero_odd = false;
        if (w.zdeg(x) > 0 && sigma[j] != 0) zero_pos = false;
        if (sigma[j]) table[w.name(x)] = sigma[j];
    }
    pass = match && zero_odd && zero_pos;
    return json{{"matches_independent_supertrace", match},
                {"vanishes_on_odd", zero_odd},
                {"vanishes_on_positive_degree", zero_pos},
                {"nonzero_values", table}};
}

json run_oracle_check(const CheckContext& c, bool& pass) {
    SplitMix64 rng(c.sc.seed);
    const size_t words = 500;
    size_t agreements = 0;
    for (size_t t = 0; t < words; ++t) {
        size_t len = 1 + rng.below(4);
        std::vector<int> word(len);
        for (auto& x : word) x = static_cast<int>(rng.below(c.w.dim()));
        size_t mono = rng.below(c.env.mono_count());
        auto left = c.env.left_mult_word(word, mono);
        auto free = normalize_free_on_mono(c.env, word, mono);
        if (word_terms_equal(left, free)) ++agreements;
    }
    pass = agreements == words;
    return json{{"words", words}, {"max_length", 4}, {"agreements", agreements}};
}

json run_grading_check(const CheckContext& c, bool& pass) {
    LModule coind = coinduce(c.env, c.v);
    LModule ind = induce(c.env, twist(c.w, c.v, +1));
    AlgebraCheck bc = check_l_module(c.w, coind);
    AlgebraCheck bi = check_l_module(c.w, ind);
    GradingReport gp = grade_P(c.w, coind);
    MuReport mu = mu_iso(c.w, coind, c.v);
    AlgebraCheck zc = check_z_annihilation(c.w, coind);
    AlgebraCheck zi = check_z_annihilation(c.w, ind);
    bool dims = coind.dim() == expected_dim(c) && ind.dim() == expected_dim(c);
    pass = bc.ok && bi.ok && gp.ok && mu.ok && zc.ok && zi.ok && dims;
    json details{{"dim", coind.dim()},
                 {"dim_formula_ok", dims},
                 {"coind_bracket_compatible", bc.ok},
                 {"ind_bracket_compatible", bi.ok},
                 {"positively_graded", gp.ok},
                 {"mu_is_l0_isomorphism", mu.ok},
                 {"z_annihilates_coind", zc.ok},
                 {"z_annihilates_ind", zi.ok}};
    for (const std::string& wtn : {bc.witness, bi.witness, gp.witness, mu.witness, zc.witness, zi.witness})
        if (!wtn.empty()) {
            details["witness"] = wtn;
            break;
        }
    return details;
}

json run_transitivity_check(const CheckContext& c, bool& pass) {
    LModule coind = coinduce(c.env, c.v);
    TransitivityReport tr = is_transitive(c.w, coind);

    LModule planted = append_trivial_line(c.w, coind, 1);
    TransitivityReport tp = is_transitive(c.w, planted);

    LModule ind = induce(c.env, twist(c.w, c.v, +1));
    TransitivityReport ti = is_transitive(c.w, ind);

    // the graded embedding psi: M -> Coind_K(M_0) is bijective on the
    // coinduced module itself and acquires a kernel on the planted one
    PsiEmbedResult pe = psi_embed(c.env, coind);
    bool psi_ok = pe.preconditions_ok && pe.equivariant && pe.injective && pe.degree_preserving &&
                  pe.image_is_degree0;
    PsiEmbedResult pp = psi_embed(c.env, planted);
    bool planted_psi_flagged = pp.preconditions_ok && !pp.injective;

    pass = tr.positively_graded && tr.transitive && tp.positively_graded && !tp.transitive &&
           !ti.positively_graded && psi_ok && planted_psi_flagged;
    json details{{"coind_transitive", tr.transitive},
                 {"planted_counterexample_flagged", tp.positively_graded && !tp.transitive},
                 {"planted_witness", tp.witness},
                 {"ind_rejected_as_not_positively_graded", !ti.positively_graded},
                 {"psi_embedding", json{{"equivariant", pe.equivariant},
                                        {"injective", pe.injective},
                                        {"degree_preserving", pe.degree_preserving},
                                        {"image_is_degree0_part", pe.image_is_degree0}}},
                 {"psi_flags_planted_module", planted_psi_flagged}};
    if (!tr.transitive) details["witness"] = tr.witness;
    if (!psi_ok && !pe.witness.empty()) details["psi_witness"] = pe.witness;
    return details;
}

json run_phi_check(const CheckContext& c, bool& pass) {
    PhiResult pr = build_phi(c.env, c.v);  // throws with witness on failure
    bool dims = pr.ind.dim() == expected_dim(c) && pr.coind.dim() == expected_dim(c);

    // naturality against a K-module endomorphism of V
    std::vector<size_t> kgens;
    std::vector<FpMatrix> acts;
    for (size_t j = 0; j < c.w.k_dim(); ++j) {
        kgens.push_back(c.w.k_global(j));
        acts.push_back(c.v.action[j]);
    }
    auto homs = hom_space(c.w, kgens, acts, c.v.space, acts, c.v.space, Parity::even);
    bool naturality = false;
    if (!homs.empty()) naturality = check_phi_naturality(c.env, c.v, c.v, homs[0].scaled(2));

    std::vector<uint32_t> sigma = compute_sigma(c.w);
    bool sigma_zero = std::all_of(sigma.begin(), sigma.end(), [](uint32_t s) { return s == 0; });
    json details{{"equivariant", pr.report.residual_entries == 0},
                 {"bijective", pr.report.bijective},
                 {"rank", pr.ind.dim()},
                 {"dim_formula_ok", dims},
                 {"naturality_square_commutes", naturality},
                 {"phi_parity", c.w.params().l % 2}};
    if (sigma_zero) {
        // Remark: with sigma = 0 the untwisted variant is an isomorphism
        // as well; unreachable for Witt algebras, recorded when it fires.
        details["untwisted_variant"] = "sigma = 0 (not expected for W(k,l,m))";
    }
    pass = pr.report.pass && dims && naturality;
    return details;
}

json run_psi_dual_check(const CheckContext& c, bool& pass) {
    PsiResult pr = build_psi_dual(c.env, c.v);
    bool inverse_ok = pr.psi.matrix * pr.inverse == FpMatrix::identity(pr.ind.dim(), c.w.params().p);
    bool dims = pr.ind_dual.dim() == pr.coind.dim() && pr.coind.dim() == expected_dim(c);
    pass = pr.report.pass && inverse_ok && dims;
    return json{{"equivariant", pr.report.residual_entries == 0},
                {"bijective", pr.report.bijective},
                {"explicit_preimage_inverts", inverse_ok},
                {"dim_formula_ok", dims}};
}

json run_thm36_check(const CheckContext& c, bool& pass) {
    SelfDualityResult main = check_self_duality(c.env, c.v, c.sc.seed);

    // engineered both-no configuration: the character c*sigma with
    // 2c+1 != 0 mod p is never isomorphic to its twisted dual
    uint32_t p = c.w.params().p;
    uint32_t cc = 1;
    while ((2 * cc + 1) % p == 0) ++cc;
    SelfDualityResult no = check_self_duality(c.env, character_module(c.w, cc), c.sc.seed + 1);

    // the half character is exactly self-twisted-dual: both yes
    SelfDualityResult yes = check_self_duality(c.env, sigma_half_module(c.w), c.sc.seed + 2);

    pass = main.agree() && no.agree() && !no.module_side && yes.agree() && yes.module_side;
    return json{{"module_side", main.module_side},
                {"induced_side", main.induced_side},
                {"sides_agree", main.agree()},
                {"hom_dim_module", main.hom_dim_module},
                {"hom_dim_induced", main.hom_dim_induced},
                {"probabilistic", main.probabilistic},
                {"engineered_no", json{{"character_c", cc},
                                       {"module_side", no.module_side},
                                       {"induced_side", no.induced_side}}},
                {"sigma_half_yes", json{{"module_side", yes.module_side},
                                        {"induced_side", yes.induced_side}}}};
}

json run_forms_check(const CheckContext& c, bool& pass) {
    const WittAlgebra& w = c.w;
    const uint32_t p = w.params().p;
    KModule vsd = dual_kmodule(w, twist(w, c.v, +1));
    std::vector<size_t> gens0(w.degree0());
    std::vector<FpMatrix> srcA, dstA;
    for (size_t g : gens0) {
        srcA.push_back(c.v.action[w.k_local(g)]);
        dstA.push_back(vsd.action[w.k_local(g)]);
    }

    json details;
    InvertibleSearch found;
    Parity found_parity = Parity::even;
    for (Parity q : {Parity::even, Parity::odd}) {
        auto homs = hom_space(w, gens0, srcA, c.v.space, dstA, vsd.space, q);
        InvertibleSearch s = contains_invertible(homs, p, c.sc.seed ^ 0x0f0f0f0fULL);
        if (s.exists && !found.exists) {
            found = s;
            found_parity = q;
        }
    }

    LModule ind = induce(c.env, twist(w, c.v, +1));
    if (found.exists) {
        FormFromZeta f = form_from_zeta(c.env, c.v, found.element, found_parity);
        ZetaFromForm back = zeta_from_form(c.env, c.v, f.ind, f.form);
        bool roundtrip = back.zeta == found.element && back.d_zeta == found_parity;
        // cross-check the form-existence criterion directly: some
        // symmetric or skew invariant nondegenerate form exists on Ind
        bool direct = false;
        for (bool skew : {false, true}) {
            auto space = invariant_symmetric_form_space(w, ind, skew);
            std::vector<FpMatrix> grams;
            for (auto& bf : space) grams.push_back(bf.gram);
            if (contains_invertible(grams, p, c.sc.seed ^ 0x1111ULL).exists) direct = true;
        }
        pass = f.invariant && f.nondegenerate && roundtrip && direct &&
               (f.symmetry == "super" || f.symmetry == "skew" || f.symmetry == "both");
        details = json{{"zeta_exists", true},
                       {"zeta_parity", parity_bit(found_parity)},
                       {"form_invariant", f.invariant},
                       {"form_nondegenerate", f.nondegenerate},
                       {"symmetry_type", f.symmetry},
                       {"zeta_roundtrip_exact", roundtrip},
                       {"direct_form_search_agrees", direct}};
    } else {
        // no verified zeta: the form-existence criterion says no
        // nondegenerate (skew-)supersymmetric invariant form on Ind either
        bool none_found = true;
        size_t space_dim = 0;
        for (bool skew : {false, true}) {
            auto space = invariant_symmetric_form_space(w, ind, skew);
            space_dim += space.size();
            std::vector<FpMatrix> grams;
            for (auto& bf : space) grams.push_back(bf.gram);
            if (contains_invertible(grams, p, c.sc.seed ^ 0x2222ULL).exists) none_found = false;
        }
        pass = none_found;
        details = json{{"zeta_exists", false},
                       {"symmetric_invariant_form_space_dim", space_dim},
                       {"no_nondegenerate_form_on_ind", none_found},
                       {"theorem_4_4_consistent", none_found}};
    }
    return details;
}

json run_mixed_check(const CheckContext& c, bool& pass) {
    MixedResult mr = verify_mixed(c.env, c.v);  // throws when no convention works
    bool dims = mr.mixed.dim() == expected_dim(c);
    pass = mr.found && mr.positively_graded && mr.transitive && mr.z_annihilated &&
           mr.bracket_compatible && dims;
    return json{{"sign_convention", mr.convention},
                {"signs", mr.signs},
                {"positively_graded", mr.positively_graded},
                {"transitive", mr.transitive},
                {"z_annihilated", mr.z_annihilated},
                {"bracket_compatible", mr.bracket_compatible},
                {"dim_formula_ok", dims}};
}

}  // namespace

RunResult run_scenario(const Scenario& sc) {
    using clock = std::chrono::steady_clock;
    RunResult out;
    json& report = out.report;
    report["tool"] = "supverma";
    report["version"] = kVersion;
    report["scenario"] = scenario_to_json(sc);
    report["conventions"] =
        json{{"coinduced_evaluation", "left normal form; theta parts act through the input module"},
             {"dual_basis", "plain dual; double dual equals the original after the parity involution"},
             {"phi", "Phi(y (x) v) = (-1)^{d(y) l} y . chi_v^{(pi,E)}"}};

    std::string summary;
    bool overall = true;
    auto timed = [&](const std::string& name, auto&& fn) {
        auto t0 = clock::now();
        bool pass = false;
        json details;
        try {
            details = fn(pass);
        } catch (const std::exception& e) {
            pass = false;
            details["error"] = e.what();
        }
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(clock::now() - t0).count();
        details["pass"] = pass;
        report["checks"][name] = details;
        summary += (pass ? "[PASS] " : "[FAIL] ") + name + " (" + std::to_string(ms) + " ms)\n";
        overall = overall && pass;
    };

    WittAlgebra w = build_scenario_algebra(sc);
    timed("algebra", [&](bool& pass) {
        AlgebraCheck anti = check_anticommutativity(w);
        AlgebraCheck jac = check_jacobi(w);
        AlgebraCheck neg = check_neg_abelian(w);
        AlgebraCheck grad = check_grading(w);
        AlgebraCheck der = check_derivation_oracle(w);
        AlgebraCheck nil = check_ad_nilpotency(w);
        AlgebraCheck gl0 = check_gl0(w);
        pass = anti.ok && jac.ok && neg.ok && grad.ok && der.ok && nil.ok && gl0.ok;
        json d{{"dim", w.dim()},
               {"anticommutativity", anti.ok},
               {"jacobi", jac.ok},
               {"neg_part_abelian", neg.ok},
               {"grading", grad.ok},
               {"derivation_oracle", der.ok},
               {"ad_nilpotency", nil.ok},
               {"gl0_identification", gl0.ok}};
        for (const std::string& wtn :
             {anti.witness, jac.witness, neg.witness, grad.witness, der.witness, nil.witness, gl0.witness})
            if (!wtn.empty()) {
                d["witness"] = wtn;
                break;
            }
        return d;
    });

    UEnv env(w);
    KModule v = build_scenario_module(w, sc);
    report["module"] = json{{"spec", sc.module_spec}, {"dim", v.dim()}};

    CheckContext ctx{sc, w, env, v};
    for (const std::string& name : sc.checks) {
        if (name == "sigma")
            timed(name, [&](bool& p) { return run_sigma_check(ctx, p); });
        else if (name == "oracle")
            timed(name, [&](bool& p) { return run_oracle_check(ctx, p); });
        else if (name == "grading")
            timed(name, [&](bool& p) { return run_grading_check(ctx, p); });
        else if (name == "transitivity")
            timed(name, [&](bool& p) { return run_transitivity_check(ctx, p); });
        else if (name == "phi")
            timed(name, [&](bool& p) { return run_phi_check(ctx, p); });
        else if (name == "psi_dual")
            timed(name, [&](bool& p) { return run_psi_dual_check(ctx, p); });
        else if (name == "thm36")
            timed(name, [&](bool& p) { return run_thm36_check(ctx, p); });
        else if (name == "forms")
            timed(name, [&](bool& p) { return run_forms_check(ctx, p); });
        else if (name == "mixed")
            timed(name, [&](bool& p) { return run_mixed_check(ctx, p); });
    }

    report["overall_pass"] = overall;
    out.overall_pass = overall;
    out.summary = summary + std::string("overall: ") + (overall ? "PASS" : "FAIL") + "\n";
    return out;
}

nlohmann::json dump_module_json(const Scenario& sc, const std::string& target) {
    WittAlgebra w = build_scenario_algebra(sc);
    UEnv env(w);
    KModule v = build_scenario_module(w, sc);
    if (target == "ind") return lmodule_to_json(w, induce(env, v));
    if (target == "ind_sigma") return lmodule_to_json(w, induce(env, twist(w, v, +1)));
    if (target == "coind") return lmodule_to_json(w, coinduce(env, v));
    if (target == "dual_ind") return lmodule_to_json(w, dual_lmodule(w, induce(env, v)));
    if (target == "mixed") return lmodule_to_json(w, verify_mixed(env, v).mixed);
    throw std::invalid_argument("unknown dump target: " + target +
                                " (expected ind|ind_sigma|coind|dual_ind|mixed)");
}

}  // namespace supverma
