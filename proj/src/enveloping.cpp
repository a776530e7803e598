#include "supverma/enveloping.hpp"

#include <algorithm>
#include <map>

namespace supverma {

namespace {

// first letter (lowest in the order e_1 < ... < e_k < xi_1 < ... < xi_l)
// of a nonunit monomial; returns the L^- index and the remainder
std::pair<int, OMono> split_first(const OMono& m, int k) {
    OMono rest = m;
    for (size_t i = 0; i < m.alpha.size(); ++i)
        if (m.alpha[i] > 0) {
            --rest.alpha[i];
            return {static_cast<int>(i), rest};
        }
    int j = __builtin_ctz(m.umask);
    rest.umask &= ~(1u << j);
    return {k + j, rest};
}

std::pair<int, OMono> split_last(const OMono& m, int k) {
    OMono rest = m;
    if (m.umask) {
        int j = 31 - __builtin_clz(m.umask);
        rest.umask &= ~(1u << j);
        return {k + j, rest};
    }
    for (size_t i = m.alpha.size(); i-- > 0;)
        if (m.alpha[i] > 0) {
            --rest.alpha[i];
            return {static_cast<int>(i), rest};
        }
    throw std::logic_error("split_last on unit monomial");
}

template <typename T>
void combine(std::vector<T>& terms, uint32_t p, bool (*less)(const T&, const T&), bool (*same)(const T&, const T&)) {
    std::sort(terms.begin(), terms.end(), less);
    std::vector<T> out;
    for (auto& t : terms) {
        if (!out.empty() && same(out.back(), t))
            out.back().coeff = fp_add(out.back().coeff, t.coeff, p);
        else
            out.push_back(t);
    }
    out.erase(std::remove_if(out.begin(), out.end(), [](const T& t) { return t.coeff == 0; }), out.end());
    terms = std::move(out);
}

bool lterm_less(const LTerm& a, const LTerm& b) { return std::tie(a.mono, a.tail) < std::tie(b.mono, b.tail); }
bool lterm_same(const LTerm& a, const LTerm& b) { return a.mono == b.mono && a.tail == b.tail; }
bool rterm_less(const RTerm& a, const RTerm& b) { return std::tie(a.theta, a.mono) < std::tie(b.theta, b.mono); }
bool rterm_same(const RTerm& a, const RTerm& b) { return a.theta == b.theta && a.mono == b.mono; }

}  // namespace

std::vector<LTerm> UEnv::merge_left(int neg_letter, size_t mono) const {
    const auto& params = w_->params();
    OMono m = monos().mono(mono);
    if (neg_letter < params.k) {
        if (m.alpha[neg_letter] + 1 >= monos().caps()[neg_letter]) return {};  // z_i, acts as zero
        ++m.alpha[neg_letter];
        return {{1, monos().index(m), -1}};
    }
    int j = neg_letter - params.k + 1;
    if (m.umask & (1u << (j - 1))) return {};  // odd square
    uint32_t sign = sign_pow(below_count(m.umask, j), params.p);
    m.umask |= 1u << (j - 1);
    return {{sign, monos().index(m), -1}};
}

std::vector<RTerm> UEnv::merge_right(int neg_letter, size_t mono) const {
    const auto& params = w_->params();
    OMono m = monos().mono(mono);
    if (neg_letter < params.k) {
        if (m.alpha[neg_letter] + 1 >= monos().caps()[neg_letter]) return {};
        ++m.alpha[neg_letter];
        return {{1, -1, monos().index(m)}};
    }
    int j = neg_letter - params.k + 1;
    if (m.umask & (1u << (j - 1))) return {};
    uint32_t sign = sign_pow(m.udeg() - below_count(m.umask, j), params.p);
    m.umask |= 1u << (j - 1);
    return {{sign, -1, monos().index(m)}};
}

UEnv::UEnv(const WittAlgebra& w) : w_(&w) {
    AlgebraCheck ab = check_neg_abelian(w);
    if (!ab.ok) throw std::invalid_argument("straightening requires abelian L^-: " + ab.witness);

    const uint32_t p = w.params().p;
    const int k = w.params().k;
    const size_t nm = mono_count();
    const size_t dim = w.dim();
    left_.assign(dim * nm, {});
    rln_.assign(nm * dim, {});

    // monomials by increasing letter count so both recursions only
    // look at already-filled entries
    std::vector<size_t> order(nm);
    for (size_t i = 0; i < nm; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](size_t a, size_t b) { return mono_letters(a) < mono_letters(b); });

    const size_t unit = monos().index(OMono{std::vector<int>(k, 0), 0});

    for (size_t mi : order) {
        OMono m = monos().mono(mi);
        const bool is_unit = (mi == unit);
        for (size_t x = 0; x < dim; ++x) {
            std::vector<LTerm>& out = left_[x * nm + mi];
            if (w.is_negative(x)) {
                out = merge_left(static_cast<int>(x), mi);
                continue;
            }
            if (is_unit) {
                out = {{1, unit, static_cast<int>(x)}};
                continue;
            }
            auto [yl, restm] = split_first(m, k);
            size_t rest = monos().index(restm);
            uint32_t ks = koszul_sign(w.parity(x), w.parity(yl), p);
            for (const LTerm& t : left_[x * nm + rest])
                for (const LTerm& mg : merge_left(yl, t.mono))
                    out.push_back({fp_mul(ks, fp_mul(t.coeff, mg.coeff, p), p), mg.mono, t.tail});
            for (const auto& [z, c] : w.bracket(x, yl))
                for (const LTerm& t : left_[z * nm + rest])
                    out.push_back({fp_mul(c, t.coeff, p), t.mono, t.tail});
            combine(out, p, lterm_less, lterm_same);
        }
        for (size_t y = 0; y < dim; ++y) {
            std::vector<RTerm>& out = rln_[mi * dim + y];
            if (w.is_negative(y)) {
                out = merge_right(static_cast<int>(y), mi);
                continue;
            }
            if (is_unit) {
                out = {{1, static_cast<int>(y), unit}};
                continue;
            }
            auto [wl, restm] = split_last(m, k);
            size_t rest = monos().index(restm);
            uint32_t ks = koszul_sign(w.parity(wl), w.parity(y), p);
            for (const RTerm& t : rln_[rest * dim + y])
                for (const RTerm& mg : merge_right(wl, t.mono))
                    out.push_back({fp_mul(ks, fp_mul(t.coeff, mg.coeff, p), p), t.theta, mg.mono});
            for (const auto& [z, c] : w.bracket(wl, y)) {
                if (w.is_negative(z)) {
                    for (const RTerm& mg : merge_right(static_cast<int>(z), rest))
                        out.push_back({fp_mul(c, mg.coeff, p), -1, mg.mono});
                } else {
                    for (const RTerm& t : rln_[rest * dim + z])
                        out.push_back({fp_mul(c, t.coeff, p), t.theta, t.mono});
                }
            }
            combine(out, p, rterm_less, rterm_same);
        }
    }
}

std::vector<WordTerm> UEnv::right_mult(size_t mono, size_t y) const {
    if (w_->in_K(y)) return {{1, mono, {static_cast<int>(y)}}};
    std::vector<WordTerm> out;
    for (const RTerm& t : merge_right(static_cast<int>(y), mono)) out.push_back({t.coeff, t.mono, {}});
    return out;
}

std::vector<int> UEnv::mono_word(size_t mono) const {
    OMono m = monos().mono(mono);
    std::vector<int> word;
    for (size_t i = 0; i < m.alpha.size(); ++i)
        for (int t = 0; t < m.alpha[i]; ++t) word.push_back(static_cast<int>(i));
    for (int j = 0; j < w_->params().l; ++j)
        if (m.umask & (1u << j)) word.push_back(w_->params().k + j);
    return word;
}

std::vector<WordTerm> UEnv::left_mult_word(const std::vector<int>& word, size_t mono) const {
    const uint32_t p = w_->params().p;
    std::vector<WordTerm> acc = {{1, mono, {}}};
    for (size_t i = word.size(); i-- > 0;) {
        std::vector<WordTerm> next;
        for (const WordTerm& t : acc)
            for (const LTerm& lt : left_mult(word[i], t.mono)) {
                WordTerm nt;
                nt.coeff = fp_mul(t.coeff, lt.coeff, p);
                nt.mono = lt.mono;
                if (lt.tail >= 0) {
                    nt.tail.reserve(t.tail.size() + 1);
                    nt.tail.push_back(lt.tail);
                }
                nt.tail.insert(nt.tail.end(), t.tail.begin(), t.tail.end());
                next.push_back(std::move(nt));
            }
        // combine duplicates
        std::map<std::pair<size_t, std::vector<int>>, uint32_t> sums;
        for (auto& t : next) {
            auto key = std::make_pair(t.mono, t.tail);
            auto it = sums.find(key);
            if (it == sums.end())
                sums.emplace(std::move(key), t.coeff);
            else
                it->second = fp_add(it->second, t.coeff, p);
        }
        acc.clear();
        for (auto& [key, c] : sums)
            if (c) acc.push_back({c, key.first, key.second});
    }
    return acc;
}

AntiTWord anti_T(const std::vector<int>& word, const WittAlgebra& w) {
    int odd_pairs = 0, odd_seen = 0;
    for (int x : word) {
        if (w.parity(x) == Parity::odd) {
            odd_pairs += odd_seen;  // pairs (i<j) with both odd
            ++odd_seen;
        }
    }
    AntiTWord r;
    r.sign = sign_pow(static_cast<int>(word.size()) + odd_pairs, w.params().p);
    r.reversed.assign(word.rbegin(), word.rend());
    return r;
}

uint32_t pbw_T_sign(size_t mono, const UEnv& env) {
    OMono m = env.monos().mono(mono);
    return sign_pow(m.zdeg(), env.algebra().params().p);
}

}  // namespace supverma
