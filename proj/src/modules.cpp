#include "supverma/modules.hpp"

#include <algorithm>

namespace supverma {

std::vector<uint32_t> compute_sigma(const WittAlgebra& w) {
    const uint32_t p = w.params().p;
    const int nd = w.neg_dim();
    std::vector<uint32_t> sigma(w.k_dim(), 0);
    for (size_t j = 0; j < w.k_dim(); ++j) {
        size_t x = w.k_global(j);
        uint32_t acc = 0;
        for (int i = 0; i < nd; ++i)
            for (const auto& [t, c] : w.bracket(x, i))
                if (t == i) acc = (w.parity(i) == Parity::even) ? fp_add(acc, c, p) : fp_sub(acc, c, p);
        sigma[j] = acc;
    }
    return sigma;
}

static std::string action_homogeneity_witness(const WittAlgebra& w, const GradedSpace& space,
                                              const FpMatrix& m, size_t x) {
    SuperMap f{space, space, m, w.parity(x), w.zdeg(x)};
    std::string err = check_homogeneous(f);
    if (!err.empty()) return "action of " + w.name(x) + " not homogeneous: " + err;
    return "";
}

AlgebraCheck check_k_module(const WittAlgebra& w, const KModule& v) {
    const uint32_t p = w.params().p;
    for (size_t j = 0; j < w.k_dim(); ++j) {
        std::string err = action_homogeneity_witness(w, v.space, v.action[j], w.k_global(j));
        if (!err.empty()) return {false, err};
    }
    for (size_t a = 0; a < w.k_dim(); ++a)
        for (size_t b = 0; b < w.k_dim(); ++b) {
            size_t x = w.k_global(a), y = w.k_global(b);
            uint32_t ks = koszul_sign(w.parity(x), w.parity(y), p);
            FpMatrix lhs = v.action[a] * v.action[b] - (v.action[b] * v.action[a]).scaled(ks);
            FpMatrix rhs(v.dim(), v.dim(), p);
            for (const auto& [t, c] : w.bracket(x, y)) rhs = rhs + v.action[w.k_local(t)].scaled(c);
            if (!(lhs == rhs))
                return {false, "K-module bracket compatibility fails on (" + w.name(x) + "," + w.name(y) + ")"};
        }
    return {};
}

AlgebraCheck check_l_module(const WittAlgebra& w, const LModule& m) {
    const uint32_t p = w.params().p;
    for (size_t x = 0; x < w.dim(); ++x) {
        std::string err = action_homogeneity_witness(w, m.space, m.action[x], x);
        if (!err.empty()) return {false, err};
    }
    for (size_t x = 0; x < w.dim(); ++x)
        for (size_t y = x; y < w.dim(); ++y) {
            uint32_t ks = koszul_sign(w.parity(x), w.parity(y), p);
            FpMatrix lhs = m.action[x] * m.action[y] - (m.action[y] * m.action[x]).scaled(ks);
            FpMatrix rhs(m.dim(), m.dim(), p);
            for (const auto& [t, c] : w.bracket(x, y)) rhs = rhs + m.action[t].scaled(c);
            if (!(lhs == rhs))
                return {false, "L-module bracket compatibility fails on (" + w.name(x) + "," + w.name(y) + ")"};
        }
    return {};
}

AlgebraCheck check_z_annihilation(const WittAlgebra& w, const LModule& m) {
    for (int i = 0; i < w.params().k; ++i) {
        size_t e = 1;
        for (int t = 0; t < w.params().m[i]; ++t) e *= w.params().p;
        FpMatrix acc = FpMatrix::identity(m.dim(), w.params().p);
        for (size_t t = 0; t < e; ++t) acc = m.action[i] * acc;
        if (!acc.is_zero()) return {false, "z_" + std::to_string(i + 1) + " does not annihilate the module"};
    }
    return {};
}

AlgebraCheck check_level_grading(const WittAlgebra& w, const LModule& m) {
    for (size_t x = 0; x < w.dim(); ++x)
        for (size_t j = 0; j < m.dim(); ++j)
            for (size_t i = 0; i < m.dim(); ++i)
                if (m.action[x].at(i, j) != 0 && m.level[i] != m.level[j] + w.zdeg(x))
                    return {false, w.name(x) + " maps level " + std::to_string(m.level[j]) +
                                       " outside level " + std::to_string(m.level[j] + w.zdeg(x))};
    return {};
}

KModule twist(const WittAlgebra& w, const KModule& v, int s) {
    if (v.twist_coeff + s < -1 || v.twist_coeff + s > 1)
        throw std::invalid_argument("twist: coefficient would leave {-1,0,+1}");
    KModule r = v;
    if (s == 0) return r;
    const uint32_t p = w.params().p;
    uint32_t sc = s > 0 ? 1 : p - 1;
    for (size_t j = 0; j < w.k_dim(); ++j) {
        uint32_t shift = fp_mul(sc, v.sigma[j], p);
        if (!shift) continue;
        for (size_t i = 0; i < v.dim(); ++i) r.action[j].add_at(i, i, shift);
    }
    r.twist_coeff = v.twist_coeff + s;
    AlgebraCheck c = check_k_module(w, r);
    if (!c.ok) throw std::logic_error("twisted module fails bracket compatibility (sigma bug): " + c.witness);
    return r;
}

KModule extend_to_K(const WittAlgebra& w, const L0Module& v0) {
    const auto& l0 = w.degree0();
    if (v0.action.size() != l0.size()) throw std::invalid_argument("extend_to_K: action count != dim L_0");
    KModule r;
    r.space = v0.space;
    r.sigma = compute_sigma(w);
    r.action.assign(w.k_dim(), FpMatrix(v0.space.dim(), v0.space.dim(), w.params().p));
    for (size_t a = 0; a < l0.size(); ++a) r.action[w.k_local(l0[a])] = v0.action[a];
    AlgebraCheck c = check_k_module(w, r);
    if (!c.ok) throw std::invalid_argument("extend_to_K: " + c.witness);
    return r;
}

static GradedSpace dual_space(const GradedSpace& s) {
    std::vector<BasisLabel> labels;
    labels.reserve(s.dim());
    for (size_t i = 0; i < s.dim(); ++i)
        labels.push_back({s.label(i).name + "*", {s.parity(i), -s.degree(i)}});
    return GradedSpace(std::move(labels), s.modulus());
}

KModule dual_kmodule(const WittAlgebra& w, const KModule& v) {
    KModule r;
    r.space = dual_space(v.space);
    r.sigma = v.sigma;
    r.twist_coeff = 0;
    r.action.reserve(w.k_dim());
    for (size_t j = 0; j < w.k_dim(); ++j)
        r.action.push_back(dual_action_matrix(v.action[j], w.parity(w.k_global(j)), v.space));
    return r;
}

LModule dual_lmodule(const WittAlgebra& w, const LModule& m) {
    LModule r;
    r.space = dual_space(m.space);
    r.provenance = Provenance::dual;
    r.level.reserve(m.dim());
    for (int lv : m.level) r.level.push_back(-lv);
    r.action.reserve(w.dim());
    for (size_t x = 0; x < w.dim(); ++x)
        r.action.push_back(dual_action_matrix(m.action[x], w.parity(x), m.space));
    return r;
}

KModule trivial_module(const WittAlgebra& w) {
    KModule r;
    r.space = GradedSpace({{"v0", {Parity::even, 0}}}, w.params().p);
    r.sigma = compute_sigma(w);
    r.action.assign(w.k_dim(), FpMatrix(1, 1, w.params().p));
    return r;
}

KModule natural_module(const WittAlgebra& w) {
    const int nd = w.neg_dim();
    std::vector<BasisLabel> labels;
    for (int i = 0; i < nd; ++i) labels.push_back({w.name(i), {w.parity(i), -1}});
    L0Module v0;
    v0.space = GradedSpace(std::move(labels), w.params().p);
    for (size_t a : w.degree0()) {
        FpMatrix rho(nd, nd, w.params().p);
        for (int j = 0; j < nd; ++j)
            for (const auto& [t, c] : w.bracket(a, j))
                if (w.is_negative(t)) rho.set(t, j, c);
        v0.action.push_back(std::move(rho));
    }
    return extend_to_K(w, v0);
}

KModule dual_natural_module(const WittAlgebra& w) { return dual_kmodule(w, natural_module(w)); }

KModule adjoint0_module(const WittAlgebra& w) {
    const auto& l0 = w.degree0();
    std::vector<BasisLabel> labels;
    for (size_t a : l0) labels.push_back({w.name(a), {w.parity(a), 0}});
    std::vector<size_t> pos(w.dim(), SIZE_MAX);
    for (size_t i = 0; i < l0.size(); ++i) pos[l0[i]] = i;
    L0Module v0;
    v0.space = GradedSpace(std::move(labels), w.params().p);
    for (size_t a : l0) {
        FpMatrix ad(l0.size(), l0.size(), w.params().p);
        for (size_t j = 0; j < l0.size(); ++j)
            for (const auto& [t, c] : w.bracket(a, l0[j])) {
                if (pos[t] == SIZE_MAX) throw std::logic_error("[L_0, L_0] leaves L_0");
                ad.set(pos[t], j, c);
            }
        v0.action.push_back(std::move(ad));
    }
    return extend_to_K(w, v0);
}

KModule character_module(const WittAlgebra& w, uint32_t c) {
    KModule r;
    r.space = GradedSpace({{"w0", {Parity::even, 0}}}, w.params().p);
    r.sigma = compute_sigma(w);
    r.action.reserve(w.k_dim());
    for (size_t j = 0; j < w.k_dim(); ++j) {
        FpMatrix m(1, 1, w.params().p);
        m.set(0, 0, fp_mul(c, r.sigma[j], w.params().p));
        r.action.push_back(std::move(m));
    }
    AlgebraCheck chk = check_k_module(w, r);
    if (!chk.ok) throw std::logic_error("character module invalid: " + chk.witness);
    return r;
}

KModule sigma_half_module(const WittAlgebra& w) { return character_module(w, (w.params().p - 1) / 2); }

LModule induce(const UEnv& env, const KModule& v) {
    const WittAlgebra& w = env.algebra();
    const uint32_t p = w.params().p;
    const size_t nm = env.mono_count();
    const size_t dv = v.dim();
    const size_t dim = nm * dv;

    LModule r;
    r.provenance = Provenance::induced;
    std::vector<BasisLabel> labels(dim);
    r.level.resize(dim);
    for (size_t mi = 0; mi < nm; ++mi) {
        OMono mono = env.monos().mono(mi);
        for (size_t b = 0; b < dv; ++b) {
            labels[mi * dv + b] = {env.pbw_name(mi) + "⊗" + v.space.label(b).name,
                                   {mono.parity() + v.space.parity(b), -mono.zdeg() + v.space.degree(b)}};
            r.level[mi * dv + b] = -mono.zdeg();
        }
    }
    r.space = GradedSpace(std::move(labels), p);

    r.action.reserve(w.dim());
    for (size_t x = 0; x < w.dim(); ++x) {
        FpMatrix m(dim, dim, p);
        for (size_t mi = 0; mi < nm; ++mi)
            for (const LTerm& t : env.left_mult(x, mi)) {
                if (t.tail < 0) {
                    for (size_t b = 0; b < dv; ++b) m.add_at(t.mono * dv + b, mi * dv + b, t.coeff);
                } else {
                    const FpMatrix& act = v.action[w.k_local(t.tail)];
                    for (size_t b = 0; b < dv; ++b)
                        for (size_t b2 = 0; b2 < dv; ++b2) {
                            uint32_t c = act.at(b2, b);
                            if (c) m.add_at(t.mono * dv + b2, mi * dv + b, fp_mul(t.coeff, c, p));
                        }
                }
            }
        r.action.push_back(std::move(m));
    }
    return r;
}

LModule coinduce(const UEnv& env, const KModule& v) {
    const WittAlgebra& w = env.algebra();
    const uint32_t p = w.params().p;
    const size_t nm = env.mono_count();
    const size_t dv = v.dim();
    const size_t dim = nm * dv;

    LModule r;
    r.provenance = Provenance::coinduced;
    std::vector<BasisLabel> labels(dim);
    r.level.resize(dim);
    for (size_t mi = 0; mi < nm; ++mi) {
        OMono mono = env.monos().mono(mi);
        for (size_t b = 0; b < dv; ++b) {
            labels[mi * dv + b] = {"chi[" + env.pbw_name(mi) + ";" + v.space.label(b).name + "]",
                                   {mono.parity() + v.space.parity(b), mono.zdeg() + v.space.degree(b)}};
            r.level[mi * dv + b] = mono.zdeg();
        }
    }
    r.space = GradedSpace(std::move(labels), p);

    // (y.chi_v^{(s)})(x_r) through the left normal form x_r y =
    // sum c * theta * x_s; the collected sign is
    // (-1)^{d(chi) (d(y) + |u_r| + |t_s| + d(theta))}.
    r.action.reserve(w.dim());
    for (size_t y = 0; y < w.dim(); ++y) {
        FpMatrix m(dim, dim, p);
        int dy = parity_bit(w.parity(y));
        for (size_t mi = 0; mi < nm; ++mi) {
            int ur = env.monos().mono(mi).udeg() & 1;
            for (const RTerm& t : env.right_mult_leftnormal(mi, y)) {
                int ts = env.monos().mono(t.mono).udeg() & 1;
                int dtheta = t.theta >= 0 ? parity_bit(w.parity(t.theta)) : 0;
                int base = dy + ur + ts + dtheta;
                for (size_t b = 0; b < dv; ++b) {
                    int dchi = (ts + parity_bit(v.space.parity(b))) & 1;
                    uint32_t sgn = sign_pow(dchi * base, p);
                    uint32_t coeff = fp_mul(t.coeff, sgn, p);
                    if (t.theta < 0) {
                        m.add_at(mi * dv + b, t.mono * dv + b, coeff);
                    } else {
                        const FpMatrix& act = v.action[w.k_local(t.theta)];
                        for (size_t b2 = 0; b2 < dv; ++b2) {
                            uint32_t c = act.at(b2, b);
                            if (c) m.add_at(mi * dv + b2, t.mono * dv + b, fp_mul(coeff, c, p));
                        }
                    }
                }
            }
        }
        r.action.push_back(std::move(m));
    }
    return r;
}

GradingReport grade_P(const WittAlgebra& w, const LModule& coind) {
    GradingReport r;
    r.levels = coind.level;
    for (int lv : r.levels)
        if (lv < 0) return {false, "negative P-degree present", r.levels};
    AlgebraCheck c = check_level_grading(w, coind);
    if (!c.ok) return {false, c.witness, r.levels};
    return r;
}

MuReport mu_iso(const WittAlgebra& w, const LModule& coind, const KModule& v) {
    MuReport r;
    const size_t dv = v.dim();
    // level-0 labels are the first dv ones (unit monomial block)
    for (size_t i = 0; i < coind.dim(); ++i)
        if ((coind.level[i] == 0) != (i < dv)) return {false, "P_0 is not the unit-monomial block", {}};
    std::vector<BasisLabel> p0labels;
    for (size_t i = 0; i < dv; ++i) p0labels.push_back(coind.space.label(i));
    GradedSpace p0(std::move(p0labels), v.space.modulus());
    r.mu = SuperMap{p0, v.space, FpMatrix::identity(dv, v.space.modulus()), Parity::even, 0};
    // mu(chi_v^{(0,empty)}) = v: identity on labels; equivariance says
    // the L_0 action restricted to P_0 equals the action on V
    for (size_t a : w.degree0()) {
        for (size_t j = 0; j < dv; ++j)
            for (size_t i = 0; i < coind.dim(); ++i) {
                uint32_t got = coind.action[a].at(i, j);
                uint32_t want = i < dv ? v.action[w.k_local(a)].at(i, j) : 0;
                if (got != want)
                    return {false, "mu fails equivariance on generator " + w.name(a), {}};
            }
    }
    return r;
}

TransitivityReport is_transitive(const WittAlgebra& w, const LModule& m) {
    TransitivityReport r;
    for (int lv : m.level)
        if (lv < 0) {
            r.witness = "module is not positively graded (label at level " + std::to_string(lv) + ")";
            return r;
        }
    AlgebraCheck g = check_level_grading(w, m);
    if (!g.ok) {
        r.witness = g.witness;
        return r;
    }
    r.positively_graded = true;

    FpMatrix stack(0, m.dim(), w.params().p);
    for (int i = 0; i < w.neg_dim(); ++i) stack = stack.vstack(m.action[i]);
    FpMatrix ker = kernel_basis(stack);

    std::vector<size_t> level0;
    for (size_t i = 0; i < m.dim(); ++i)
        if (m.level[i] == 0) level0.push_back(i);

    if (ker.cols() != level0.size()) {
        r.witness = "joint kernel of L^- has dimension " + std::to_string(ker.cols()) +
                    " but the level-0 component has dimension " + std::to_string(level0.size());
        return r;
    }
    for (size_t c = 0; c < ker.cols(); ++c)
        for (size_t i = 0; i < m.dim(); ++i)
            if (ker.at(i, c) != 0 && m.level[i] != 0) {
                r.witness = "kernel vector with support on " + m.space.label(i).name + " (level " +
                            std::to_string(m.level[i]) + ")";
                return r;
            }
    r.transitive = true;
    return r;
}

LModule append_trivial_line(const WittAlgebra& w, const LModule& m, int level) {
    LModule r;
    r.provenance = Provenance::custom;
    std::vector<BasisLabel> labels(m.space.labels());
    labels.push_back({"planted", {Parity::even, level}});
    r.space = GradedSpace(std::move(labels), m.space.modulus());
    r.level = m.level;
    r.level.push_back(level);
    const size_t n = m.dim();
    for (size_t x = 0; x < w.dim(); ++x) {
        FpMatrix a(n + 1, n + 1, m.space.modulus());
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) a.set(i, j, m.action[x].at(i, j));
        r.action.push_back(std::move(a));
    }
    return r;
}

}  // namespace supverma
