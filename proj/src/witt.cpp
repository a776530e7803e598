#include "supverma/witt.hpp"

#include <algorithm>
#include <numeric>

namespace supverma {

MonoIndexer::MonoIndexer(const WittParams& params) : k_(params.k), l_(params.l) {
    caps_.resize(k_);
    stride_.resize(k_);
    size_t s = 1;
    for (int i = 0; i < k_; ++i) {
        size_t cap = 1;
        for (int t = 0; t < params.m[i]; ++t) cap *= params.p;
        caps_[i] = static_cast<int>(cap);
        stride_[i] = s;
        s *= cap;
    }
    xcount_ = s;
    total_ = xcount_ << l_;
}

size_t MonoIndexer::index(const OMono& m) const {
    size_t idx = static_cast<size_t>(m.umask) * xcount_;
    for (int i = 0; i < k_; ++i) idx += static_cast<size_t>(m.alpha[i]) * stride_[i];
    return idx;
}

OMono MonoIndexer::mono(size_t idx) const {
    OMono m;
    m.alpha.resize(k_);
    m.umask = static_cast<uint32_t>(idx / xcount_);
    size_t rest = idx % xcount_;
    for (int i = 0; i < k_; ++i) {
        m.alpha[i] = static_cast<int>(rest % caps_[i]);
        rest /= caps_[i];
    }
    return m;
}

std::string MonoIndexer::name(const OMono& m, const char* xsym, const char* usym) const {
    std::string s;
    if (m.xdeg() > 0) {
        s += xsym;
        s += "^(";
        for (int i = 0; i < k_; ++i) {
            if (i) s += ",";
            s += std::to_string(m.alpha[i]);
        }
        s += ")";
    }
    if (m.umask) {
        s += usym;
        s += "(";
        bool first = true;
        for (int j = 1; j <= l_; ++j)
            if (m.umask & (1u << (j - 1))) {
                if (!first) s += ",";
                s += std::to_string(j);
                first = false;
            }
        s += ")";
    }
    if (s.empty()) s = "1";
    return s;
}

std::vector<ScaledMono> divided_product(const OMono& a, const OMono& b, const WittParams& params) {
    if (a.umask & b.umask) return {};
    OMono r;
    r.alpha.resize(params.k);
    std::vector<uint64_t> n(params.k), kk(params.k);
    size_t cap = 1;
    for (int i = 0; i < params.k; ++i) {
        cap = 1;
        for (int t = 0; t < params.m[i]; ++t) cap *= params.p;
        int sum = a.alpha[i] + b.alpha[i];
        if (sum >= static_cast<int>(cap)) return {};
        r.alpha[i] = sum;
        n[i] = sum;
        kk[i] = a.alpha[i];
    }
    uint32_t coeff = binom_mod_p(n, kk, params.p);
    if (coeff == 0) return {};
    // sign from sorting xi^a past xi^b: one transposition per pair
    // (i in a, j in b) with i > j
    int inversions = 0;
    for (int i = 1; i <= params.l; ++i)
        if (a.umask & (1u << (i - 1))) inversions += below_count(b.umask, i);
    r.umask = a.umask | b.umask;
    return {{std::move(r), fp_mul(coeff, sign_pow(inversions, params.p), params.p)}};
}

std::vector<ScaledMono> apply_D(int i, const OMono& f, const WittParams& params) {
    if (i < 1 || i > params.k) throw std::out_of_range("apply_D: index");
    if (f.alpha[i - 1] == 0) return {};
    OMono r = f;
    --r.alpha[i - 1];
    return {{std::move(r), 1}};
}

std::vector<ScaledMono> apply_d(int j, const OMono& f, const WittParams& params) {
    if (j < 1 || j > params.l) throw std::out_of_range("apply_d: index");
    if (!(f.umask & (1u << (j - 1)))) return {};
    OMono r = f;
    r.umask &= ~(1u << (j - 1));
    return {{std::move(r), sign_pow(below_count(f.umask, j), params.p)}};
}

static std::vector<ScaledMono> apply_der(int der, const OMono& f, const WittParams& params) {
    return der < params.k ? apply_D(der + 1, f, params) : apply_d(der - params.k + 1, f, params);
}

void WittAlgebra::init_basis() {
    oidx_ = MonoIndexer(params_);
    const int nd = neg_dim();
    const size_t nm = oidx_.count();
    basis_.clear();
    for (size_t mi = 0; mi < nm; ++mi)
        for (int d = 0; d < nd; ++d) basis_.push_back({mi, d});
    std::stable_sort(basis_.begin(), basis_.end(), [&](const WittBasisElement& a, const WittBasisElement& b) {
        int za = static_cast<int>(oidx_.mono(a.mono).zdeg()) - 1;
        int zb = static_cast<int>(oidx_.mono(b.mono).zdeg()) - 1;
        if (za != zb) return za < zb;
        if (a.mono != b.mono) return a.mono < b.mono;
        return a.der < b.der;
    });
    element_index_.assign(nm * nd, 0);
    gradings_.resize(basis_.size());
    names_.resize(basis_.size());
    l0_.clear();
    for (size_t i = 0; i < basis_.size(); ++i) {
        const auto& be = basis_[i];
        element_index_[be.mono * nd + be.der] = i;
        OMono f = oidx_.mono(be.mono);
        Parity der_parity = be.der < params_.k ? Parity::even : Parity::odd;
        gradings_[i] = {f.parity() + der_parity, f.zdeg() - 1};
        if (gradings_[i].degree == 0) l0_.push_back(i);
        std::string dn = be.der < params_.k ? "D" + std::to_string(be.der + 1)
                                            : "d" + std::to_string(be.der - params_.k + 1);
        names_[i] = f.zdeg() == 0 ? dn : oidx_.name(f, "x", "xi") + "*" + dn;
    }
}

WittAlgebra WittAlgebra::build(const WittParams& params) {
    require_odd_prime(params.p);
    if (params.k < 1 || params.l < 1) throw std::invalid_argument("W(k,l,m) needs k,l >= 1");
    if (static_cast<int>(params.m.size()) != params.k) throw std::invalid_argument("m must have k entries");
    for (int mi : params.m)
        if (mi < 1) throw std::invalid_argument("m entries must be >= 1");

    WittAlgebra w;
    w.params_ = params;
    w.init_basis();
    const size_t dim = w.dim();
    if (dim > 4096) throw std::invalid_argument("algebra dimension too large for the dense bracket table");

    w.bracket_.assign(dim * dim, {});
    for (size_t i = 0; i < dim; ++i) {
        OMono f = w.oidx_.mono(w.basis_[i].mono);
        int df = w.basis_[i].der;
        for (size_t j = 0; j < dim; ++j) {
            OMono g = w.oidx_.mono(w.basis_[j].mono);
            int dg = w.basis_[j].der;
            // [f del, g del'] = f del(g) del' - (-1)^{d(x)d(y)} g del'(f) del
            std::vector<std::pair<size_t, uint32_t>> acc;
            for (const auto& t1 : apply_der(df, g, params))
                for (const auto& t2 : divided_product(f, t1.mono, params))
                    acc.emplace_back(w.index_of(w.oidx_.index(t2.mono), dg), fp_mul(t1.coeff, t2.coeff, params.p));
            uint32_t ks = koszul_sign(w.parity(i), w.parity(j), params.p);
            for (const auto& t1 : apply_der(dg, f, params))
                for (const auto& t2 : divided_product(g, t1.mono, params))
                    acc.emplace_back(w.index_of(w.oidx_.index(t2.mono), df),
                                     fp_neg(fp_mul(ks, fp_mul(t1.coeff, t2.coeff, params.p), params.p), params.p));
            std::sort(acc.begin(), acc.end());
            SparseVec out;
            for (const auto& [idx, c] : acc) {
                if (!out.empty() && out.back().first == static_cast<int>(idx))
                    out.back().second = fp_add(out.back().second, c, params.p);
                else
                    out.emplace_back(static_cast<int>(idx), c);
            }
            out.erase(std::remove_if(out.begin(), out.end(), [](auto& e) { return e.second == 0; }), out.end());
            w.bracket_[i * dim + j] = std::move(out);
        }
    }

    AlgebraCheck c = check_neg_abelian(w);
    if (!c.ok) throw std::logic_error("construction: L^- not abelian: " + c.witness);
    c = check_anticommutativity(w);
    if (!c.ok) throw std::logic_error("construction: anticommutativity failed: " + c.witness);
    if (dim <= 64) {
        c = check_jacobi(w);
        if (!c.ok) throw std::logic_error("construction: Jacobi failed: " + c.witness);
    }
    return w;
}

WittAlgebra WittAlgebra::from_parts(const WittParams& params, std::vector<SparseVec> brackets) {
    WittAlgebra w;
    w.params_ = params;
    w.init_basis();
    if (brackets.size() != w.dim() * w.dim()) throw std::invalid_argument("bracket table has wrong size");
    w.bracket_ = std::move(brackets);
    return w;
}

FpMatrix WittAlgebra::operator_matrix(size_t i) const {
    const size_t n = oidx_.count();
    FpMatrix m(n, n, params_.p);
    OMono f = oidx_.mono(basis_[i].mono);
    for (size_t c = 0; c < n; ++c) {
        OMono g = oidx_.mono(c);
        for (const auto& t1 : apply_der(basis_[i].der, g, params_))
            for (const auto& t2 : divided_product(f, t1.mono, params_))
                m.add_at(oidx_.index(t2.mono), c, fp_mul(t1.coeff, t2.coeff, params_.p));
    }
    return m;
}

GradedSpace WittAlgebra::basis_space() const {
    std::vector<BasisLabel> labels(dim());
    for (size_t i = 0; i < dim(); ++i) labels[i] = {names_[i], gradings_[i]};
    return GradedSpace(std::move(labels), params_.p);
}

bool WittAlgebra::operator==(const WittAlgebra& o) const {
    return params_.p == o.params_.p && params_.k == o.params_.k && params_.l == o.params_.l &&
           params_.m == o.params_.m && bracket_ == o.bracket_;
}

static SparseVec sparse_scale(const SparseVec& v, uint32_t c, uint32_t p) {
    SparseVec r;
    for (const auto& [i, x] : v) {
        uint32_t y = fp_mul(x, c, p);
        if (y) r.emplace_back(i, y);
    }
    return r;
}

static SparseVec sparse_add(const SparseVec& a, const SparseVec& b, uint32_t p) {
    SparseVec r;
    size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first))
            r.push_back(a[i++]);
        else if (i == a.size() || b[j].first < a[i].first)
            r.push_back(b[j++]);
        else {
            uint32_t s = fp_add(a[i].second, b[j].second, p);
            if (s) r.emplace_back(a[i].first, s);
            ++i, ++j;
        }
    }
    return r;
}

SubalgebraFilter filter_subalgebra(const WittAlgebra& w, const std::function<bool(size_t)>& keep) {
    SubalgebraFilter r;
    std::vector<bool> in(w.dim(), false);
    for (size_t i = 0; i < w.dim(); ++i)
        if (keep(i)) {
            in[i] = true;
            r.elements.push_back(i);
        }
    r.closed = true;
    for (size_t a : r.elements)
        for (size_t b : r.elements)
            for (const auto& [t, c] : w.bracket(a, b))
                if (!in[t]) {
                    r.closed = false;
                    if (r.witness.empty())
                        r.witness = "[" + w.name(a) + "," + w.name(b) + "] has a component on " + w.name(t);
                }
    return r;
}

AlgebraCheck check_anticommutativity(const WittAlgebra& w) {
    const uint32_t p = w.params().p;
    for (size_t i = 0; i < w.dim(); ++i)
        for (size_t j = i; j < w.dim(); ++j) {
            uint32_t ks = koszul_sign(w.parity(i), w.parity(j), p);
            SparseVec s = sparse_add(w.bracket(i, j), sparse_scale(w.bracket(j, i), ks, p), p);
            if (!s.empty())
                return {false, "[" + w.name(i) + "," + w.name(j) + "] violates super-anticommutativity"};
        }
    return {};
}

AlgebraCheck check_jacobi(const WittAlgebra& w) {
    const uint32_t p = w.params().p;
    const size_t n = w.dim();
    auto bracket_into = [&](size_t x, const SparseVec& v) {
        SparseVec acc;
        for (const auto& [j, c] : v) acc = sparse_add(acc, sparse_scale(w.bracket(x, j), c, p), p);
        return acc;
    };
    for (size_t x = 0; x < n; ++x)
        for (size_t y = 0; y < n; ++y)
            for (size_t z = y; z < n; ++z) {
                // (-1)^{d(x)d(z)}[x,[y,z]] + cyclic = 0
                SparseVec t = sparse_scale(bracket_into(x, w.bracket(y, z)),
                                           koszul_sign(w.parity(x), w.parity(z), p), p);
                t = sparse_add(t,
                               sparse_scale(bracket_into(y, w.bracket(z, x)),
                                            koszul_sign(w.parity(y), w.parity(x), p), p),
                               p);
                t = sparse_add(t,
                               sparse_scale(bracket_into(z, w.bracket(x, y)),
                                            koszul_sign(w.parity(z), w.parity(y), p), p),
                               p);
                if (!t.empty())
                    return {false, "Jacobi fails on (" + w.name(x) + "," + w.name(y) + "," + w.name(z) + ")"};
            }
    return {};
}

AlgebraCheck check_neg_abelian(const WittAlgebra& w) {
    for (int i = 0; i < w.neg_dim(); ++i)
        for (int j = 0; j < w.neg_dim(); ++j)
            if (!w.bracket(i, j).empty())
                return {false, "[" + w.name(i) + "," + w.name(j) + "] != 0 inside L^-"};
    return {};
}

AlgebraCheck check_grading(const WittAlgebra& w) {
    for (size_t i = 0; i < w.dim(); ++i)
        for (size_t j = 0; j < w.dim(); ++j)
            for (const auto& [t, c] : w.bracket(i, j))
                if (w.zdeg(t) != w.zdeg(i) + w.zdeg(j))
                    return {false, "zd([" + w.name(i) + "," + w.name(j) + "]) inconsistent"};
    return {};
}

AlgebraCheck check_derivation_oracle(const WittAlgebra& w) {
    const uint32_t p = w.params().p;
    const size_t n = w.dim();
    std::vector<FpMatrix> ops(n);
    for (size_t i = 0; i < n; ++i) ops[i] = w.operator_matrix(i);
    const size_t on = w.omonos().count();
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            uint32_t ks = koszul_sign(w.parity(i), w.parity(j), p);
            FpMatrix lhs = ops[i] * ops[j] - (ops[j] * ops[i]).scaled(ks);
            FpMatrix rhs(on, on, p);
            for (const auto& [t, c] : w.bracket(i, j)) rhs = rhs + ops[t].scaled(c);
            if (!(lhs == rhs))
                return {false, "bracket of (" + w.name(i) + "," + w.name(j) +
                                   ") disagrees with the operator supercommutator on O(k,l,m)"};
        }
    return {};
}

AlgebraCheck check_ad_nilpotency(const WittAlgebra& w) {
    const uint32_t p = w.params().p;
    const size_t n = w.dim();
    for (int i = 0; i < w.params().k; ++i) {
        FpMatrix ad(n, n, p);
        for (size_t j = 0; j < n; ++j)
            for (const auto& [t, c] : w.bracket(i, j)) ad.add_at(t, j, c);
        FpMatrix powm = FpMatrix::identity(n, p);
        size_t e = 1;
        for (int t = 0; t < w.params().m[i]; ++t) e *= p;
        for (size_t t = 0; t < e; ++t) powm = ad * powm;
        if (!powm.is_zero())
            return {false, "(ad D" + std::to_string(i + 1) + ")^{p^m} != 0"};
    }
    return {};
}

AlgebraCheck check_gl0(const WittAlgebra& w) {
    const uint32_t p = w.params().p;
    const int nd = w.neg_dim();
    const auto& l0 = w.degree0();
    if (l0.size() != static_cast<size_t>(nd) * nd)
        return {false, "dim L_0 != (k+l)^2"};
    // each rho(x) flattened into a row
    FpMatrix rows(l0.size(), static_cast<size_t>(nd) * nd, p);
    std::vector<FpMatrix> rho(l0.size(), FpMatrix(nd, nd, p));
    for (size_t a = 0; a < l0.size(); ++a) {
        for (int j = 0; j < nd; ++j)
            for (const auto& [t, c] : w.bracket(l0[a], j))
                if (w.is_negative(t)) rho[a].set(t, j, c);
        for (int r = 0; r < nd; ++r)
            for (int cidx = 0; cidx < nd; ++cidx) rows.set(a, r * nd + cidx, rho[a].at(r, cidx));
    }
    size_t base = rank(rows);
    if (base != l0.size()) return {false, "ad: L_0 -> End(L_{-1}) is not injective"};
    for (size_t a = 0; a < l0.size(); ++a)
        for (size_t b = 0; b < l0.size(); ++b) {
            uint32_t ks = koszul_sign(w.parity(l0[a]), w.parity(l0[b]), p);
            FpMatrix sc = rho[a] * rho[b] - (rho[b] * rho[a]).scaled(ks);
            FpMatrix ext(1, static_cast<size_t>(nd) * nd, p);
            for (int r = 0; r < nd; ++r)
                for (int cidx = 0; cidx < nd; ++cidx) ext.set(0, r * nd + cidx, sc.at(r, cidx));
            if (rank(rows.vstack(ext)) != base)
                return {false, "image of L_0 in End(L_{-1}) is not closed under supercommutator"};
        }
    return {};
}

}  // namespace supverma
