#include "supverma/forms.hpp"

namespace supverma {

static bool symmetry_with_sign(const BilinearForm& f, bool skew) {
    const uint32_t p = f.space.modulus();
    for (size_t i = 0; i < f.space.dim(); ++i)
        for (size_t j = 0; j < f.space.dim(); ++j) {
            uint32_t rhs = fp_mul(koszul_sign(f.space.parity(i), f.space.parity(j), p), f.gram.at(j, i), p);
            if (skew) rhs = fp_neg(rhs, p);
            if (f.gram.at(i, j) != rhs) return false;
        }
    return true;
}

bool is_supersymmetric(const BilinearForm& f) { return symmetry_with_sign(f, false); }
bool is_skew_supersymmetric(const BilinearForm& f) { return symmetry_with_sign(f, true); }

std::string measured_symmetry(const BilinearForm& f) {
    bool s = is_supersymmetric(f), k = is_skew_supersymmetric(f);
    if (s && k) return "both";
    if (s) return "super";
    if (k) return "skew";
    return "neither";
}

InvarianceReport is_invariant(const WittAlgebra& w, const BilinearForm& f, const LModule& m) {
    const uint32_t p = w.params().p;
    for (size_t x = 0; x < w.dim(); ++x) {
        FpMatrix lhs = m.action[x].transpose() * f.gram;  // lambda(x.b_i, b_j)
        FpMatrix rhs = f.gram * m.action[x];              // lambda(b_i, x.b_j)
        for (size_t i = 0; i < f.space.dim(); ++i) {
            uint32_t s = koszul_sign(w.parity(x), f.space.parity(i), p);
            for (size_t j = 0; j < f.space.dim(); ++j)
                if (lhs.at(i, j) != fp_neg(fp_mul(s, rhs.at(i, j), p), p))
                    return {false, "invariance fails for " + w.name(x) + " at (" + m.space.label(i).name +
                                       ", " + m.space.label(j).name + ")"};
        }
    }
    return {};
}

size_t radical_dim(const BilinearForm& f) { return f.space.dim() - rank(f.gram); }

BilinearForm top_pairing_gram(const UEnv& env, const KModule& v, const FpMatrix& zeta) {
    const WittAlgebra& w = env.algebra();
    const uint32_t p = w.params().p;
    LModule ind = induce(env, twist(w, v, +1));

    const size_t nm = env.mono_count();
    const size_t dv = v.dim();
    const int l = w.params().l;
    const uint32_t full = (1u << l) - 1u;

    BilinearForm f{ind.space, FpMatrix(ind.dim(), ind.dim(), p)};
    for (size_t r1 = 0; r1 < nm; ++r1) {
        OMono m1 = env.monos().mono(r1);
        for (size_t r2 = 0; r2 < nm; ++r2) {
            OMono m2 = env.monos().mono(r2);
            bool alpha_ok = true;
            for (int i = 0; i < w.params().k; ++i)
                if (m1.alpha[i] + m2.alpha[i] != env.monos().caps()[i] - 1) alpha_ok = false;
            if (!alpha_ok) continue;
            if ((m1.umask & m2.umask) || (m1.umask | m2.umask) != full) continue;
            int d1 = m1.udeg() & 1, d2 = m2.udeg() & 1;
            // transpositions sorting the product xi^{t} xi^{u} (t from
            // the second argument, u from the first)
            int inv = 0;
            for (int jb = 1; jb <= l; ++jb)
                if (m2.umask & (1u << (jb - 1))) inv += __builtin_popcount(m1.umask & ((1u << (jb - 1)) - 1u));
            int n2 = m2.zdeg();
            for (size_t b1 = 0; b1 < dv; ++b1) {
                int dv1 = parity_bit(v.space.parity(b1));
                for (size_t b2 = 0; b2 < dv; ++b2) {
                    uint32_t zv = zeta.at(b2, b1);  // zeta(v1)(v2) in the plain dual basis
                    if (!zv) continue;
                    int e = n2 + inv + d1 * d2 + d1 * dv1 + l + dv1 * l;
                    f.gram.set(r1 * dv + b1, r2 * dv + b2, fp_mul(sign_pow(e, p), zv, p));
                }
            }
        }
    }
    return f;
}

ZetaCheck check_zeta(const WittAlgebra& w, const KModule& v, const FpMatrix& zeta, Parity d_zeta) {
    ZetaCheck r;
    const uint32_t p = w.params().p;
    KModule vsd = dual_kmodule(w, twist(w, v, +1));
    SuperMap zmap{v.space, vsd.space, zeta, d_zeta, 0};
    std::string hom_err = check_homogeneous(zmap);
    if (!hom_err.empty()) {
        r.witness = "zeta not homogeneous: " + hom_err;
        return r;
    }
    for (size_t a : w.degree0()) {
        uint32_t s = koszul_sign(w.parity(a), d_zeta, p);
        if (!(vsd.action[w.k_local(a)] * zeta == (zeta * v.action[w.k_local(a)]).scaled(s))) {
            r.witness = "zeta is not L_0-equivariant at " + w.name(a);
            return r;
        }
    }
    if (rank(zeta) != v.dim()) {
        r.witness = "zeta is not bijective";
        return r;
    }
    r.is_l0_isomorphism = true;
    // zeta(v)(w) = +-(-1)^{d(v)d(w)} zeta(w)(v): entry (b2,b1) vs (b1,b2)
    bool sym = true, skew = true;
    for (size_t b1 = 0; b1 < v.dim(); ++b1)
        for (size_t b2 = 0; b2 < v.dim(); ++b2) {
            uint32_t rhs =
                fp_mul(koszul_sign(v.space.parity(b1), v.space.parity(b2), p), zeta.at(b1, b2), p);
            if (zeta.at(b2, b1) != rhs) sym = false;
            if (zeta.at(b2, b1) != fp_neg(rhs, p)) skew = false;
        }
    r.supersymmetric = sym;
    r.skew = skew;
    return r;
}

FormFromZeta form_from_zeta(const UEnv& env, const KModule& v, const FpMatrix& zeta, Parity d_zeta) {
    const WittAlgebra& w = env.algebra();
    ZetaCheck zc = check_zeta(w, v, zeta, d_zeta);
    if (!zc.is_l0_isomorphism)
        throw std::invalid_argument("form_from_zeta: zeta fails its precondition: " + zc.witness);
    if (!zc.supersymmetric && !zc.skew)
        throw std::invalid_argument("form_from_zeta: zeta satisfies neither displayed symmetry");

    FormFromZeta r;
    r.form = top_pairing_gram(env, v, zeta);
    r.ind = induce(env, twist(w, v, +1));
    r.invariant = is_invariant(w, r.form, r.ind).invariant;
    r.nondegenerate = radical_dim(r.form) == 0;
    r.symmetry = measured_symmetry(r.form);
    return r;
}

ZetaFromForm zeta_from_form(const UEnv& env, const KModule& v, const LModule& ind, const BilinearForm& form) {
    const WittAlgebra& w = env.algebra();
    const uint32_t p = w.params().p;
    InvarianceReport inv = is_invariant(w, form, ind);
    if (!inv.invariant) throw std::invalid_argument("zeta_from_form: form is not invariant: " + inv.witness);
    if (radical_dim(form) != 0) throw std::invalid_argument("zeta_from_form: form is degenerate");

    const size_t dv = v.dim();
    const int l = w.params().l;
    OMono top;
    top.alpha.assign(w.params().k, 0);
    for (int i = 0; i < w.params().k; ++i) top.alpha[i] = env.monos().caps()[i] - 1;
    top.umask = (1u << l) - 1u;
    const size_t top_idx = env.monos().index(top);
    const size_t unit_idx = env.monos().index(OMono{std::vector<int>(w.params().k, 0), 0});

    // lambda(1 (x) v1, top (x) v2) = (-1)^{|pi| + d(v1) l} zeta(v1)(v2)
    int pi_total = 0;
    for (int i = 0; i < w.params().k; ++i) pi_total += env.monos().caps()[i] - 1;
    FpMatrix zeta(dv, dv, p);
    for (size_t b1 = 0; b1 < dv; ++b1) {
        int dv1 = parity_bit(v.space.parity(b1));
        uint32_t s = sign_pow(pi_total + dv1 * l, p);
        for (size_t b2 = 0; b2 < dv; ++b2)
            zeta.set(b2, b1, fp_mul(s, form.gram.at(unit_idx * dv + b1, top_idx * dv + b2), p));
    }
    for (Parity dz : {Parity::even, Parity::odd}) {
        ZetaCheck zc = check_zeta(w, v, zeta, dz);
        if (zc.is_l0_isomorphism && (zc.supersymmetric || zc.skew)) return {zeta, dz};
    }
    throw std::runtime_error("zeta_from_form: extraction does not verify (theorem violation)");
}

FpMatrix form_to_phi(const BilinearForm& f) { return f.gram.transpose(); }

BilinearForm phi_to_form(const GradedSpace& space, const FpMatrix& phi) {
    return {space, phi.transpose()};
}

std::vector<BilinearForm> invariant_symmetric_form_space(const WittAlgebra& w, const LModule& m, bool skew) {
    const uint32_t p = w.params().p;
    const size_t d = m.dim();
    LModule md = dual_lmodule(w, m);
    std::vector<size_t> gens(w.dim());
    for (size_t i = 0; i < w.dim(); ++i) gens[i] = i;

    std::vector<FpMatrix> grams;
    for (Parity q : {Parity::even, Parity::odd})
        for (const FpMatrix& h : hom_space(w, gens, m.action, m.space, md.action, md.space, q))
            grams.push_back(h.transpose());
    if (grams.empty()) return {};

    // impose the symmetry condition inside the invariant span
    FpMatrix rows(d * d, grams.size(), p);
    for (size_t c = 0; c < grams.size(); ++c)
        for (size_t i = 0; i < d; ++i)
            for (size_t j = 0; j < d; ++j) {
                uint32_t flip = fp_mul(koszul_sign(m.space.parity(i), m.space.parity(j), p),
                                       grams[c].at(j, i), p);
                if (skew) flip = fp_neg(flip, p);
                rows.set(i * d + j, c, fp_sub(grams[c].at(i, j), flip, p));
            }
    FpMatrix ker = kernel_basis(rows);
    std::vector<BilinearForm> out;
    for (size_t c = 0; c < ker.cols(); ++c) {
        FpMatrix g(d, d, p);
        for (size_t h = 0; h < grams.size(); ++h)
            if (ker.at(h, c)) g = g + grams[h].scaled(ker.at(h, c));
        out.push_back({m.space, std::move(g)});
    }
    return out;
}

BilinearForm symmetrize(const BilinearForm& f) {
    const uint32_t p = f.space.modulus();
    BilinearForm r{f.space, FpMatrix(f.space.dim(), f.space.dim(), p)};
    for (size_t i = 0; i < f.space.dim(); ++i)
        for (size_t j = 0; j < f.space.dim(); ++j) {
            uint32_t v = fp_add(
                f.gram.at(i, j),
                fp_mul(koszul_sign(f.space.parity(i), f.space.parity(j), p), f.gram.at(j, i), p), p);
            r.gram.set(i, j, v);
        }
    return r;
}

}  // namespace supverma
