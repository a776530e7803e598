#ifndef SUPVERMA_WITT_HPP
#define SUPVERMA_WITT_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "supverma/superspace.hpp"

// The divided power superalgebra O(k,l,m) over F_p and the Witt-type
// Lie superalgebra W(k,l,m) of its derivations f*D_i, f*d_j.
//
// Monomials x^(alpha) xi^u are indexed by an exponent vector alpha
// (componentwise 0 <= alpha_i <= p^{m_i}-1) and a subset u of {1..l}
// kept as a bitmask.  Products carry the divided-power binomial
// C(alpha+beta, alpha) and the exterior reordering sign.

namespace supverma {

struct WittParams {
    uint32_t p = 3;
    int k = 1;
    int l = 1;
    std::vector<int> m = {1};  // size k, each >= 1
};

struct OMono {
    std::vector<int> alpha;  // size k
    uint32_t umask = 0;      // bit j-1 set when xi_j occurs

    int xdeg() const {
        int s = 0;
        for (int a : alpha) s += a;
        return s;
    }
    int udeg() const { return __builtin_popcount(umask); }
    int zdeg() const { return xdeg() + udeg(); }
    Parity parity() const { return parity_of(udeg()); }
    bool operator==(const OMono& o) const { return alpha == o.alpha && umask == o.umask; }
};

// number of elements of u strictly below j (1-based j)
inline int below_count(uint32_t umask, int j) {
    return __builtin_popcount(umask & ((1u << (j - 1)) - 1u));
}

// Bijective index for the exponent/subset space A(k,m) x B; shared by
// the O(k,l,m) basis and the PBW basis e^alpha xi^u of U(L).
class MonoIndexer {
public:
    MonoIndexer() = default;
    MonoIndexer(const WittParams& params);

    size_t count() const { return total_; }
    size_t index(const OMono& m) const;
    OMono mono(size_t idx) const;
    const std::vector<int>& caps() const { return caps_; }  // caps[i] = p^{m_i}

    std::string name(const OMono& m, const char* xsym, const char* usym) const;

private:
    int k_ = 0, l_ = 0;
    std::vector<int> caps_;
    std::vector<size_t> stride_;
    size_t xcount_ = 1, total_ = 1;
};

struct ScaledMono {
    OMono mono;
    uint32_t coeff;
};

// x^(a)xi^u * x^(b)xi^t; empty result when the exponent leaves
// A(k,m) or the subsets intersect.
std::vector<ScaledMono> divided_product(const OMono& a, const OMono& b, const WittParams& params);
// D_i(x^(a)xi^u) = x^(a-e_i)xi^u
std::vector<ScaledMono> apply_D(int i, const OMono& f, const WittParams& params);
// d_j(x^(a)xi^u) = (-1)^{u(j)} x^(a)xi^{u-<j>}
std::vector<ScaledMono> apply_d(int j, const OMono& f, const WittParams& params);

using SparseVec = std::vector<std::pair<int, uint32_t>>;  // sorted by index

struct WittBasisElement {
    size_t mono;  // O-mono index
    int der;      // 0..k-1 = D_{der+1}, k..k+l-1 = d_{der-k+1}
};

class WittAlgebra {
public:
    static WittAlgebra build(const WittParams& params);

    const WittParams& params() const { return params_; }
    const MonoIndexer& omonos() const { return oidx_; }
    size_t dim() const { return basis_.size(); }
    int neg_dim() const { return params_.k + params_.l; }

    const WittBasisElement& element(size_t i) const { return basis_[i]; }
    size_t index_of(size_t mono, int der) const { return element_index_[mono * neg_dim() + der]; }
    const Grading& grading(size_t i) const { return gradings_[i]; }
    Parity parity(size_t i) const { return gradings_[i].parity; }
    int zdeg(size_t i) const { return gradings_[i].degree; }
    const std::string& name(size_t i) const { return names_[i]; }

    // basis indices 0..k-1 are D_1..D_k, k..k+l-1 are d_1..d_l
    bool is_negative(size_t i) const { return zdeg(i) < 0; }
    bool in_K(size_t i) const { return zdeg(i) >= 0; }
    size_t k_dim() const { return dim() - neg_dim(); }
    // K-local index of an algebra element (requires in_K)
    size_t k_local(size_t i) const { return i - neg_dim(); }
    size_t k_global(size_t j) const { return j + neg_dim(); }
    const std::vector<size_t>& degree0() const { return l0_; }

    const SparseVec& bracket(size_t i, size_t j) const { return bracket_[i * dim() + j]; }
    SparseVec& mutable_bracket(size_t i, size_t j) { return bracket_[i * dim() + j]; }

    // matrix of the derivation basis_[i] acting on O(k,l,m)
    FpMatrix operator_matrix(size_t i) const;

    GradedSpace basis_space() const;

    bool operator==(const WittAlgebra& o) const;

    // Used by json_io when reloading a dump; brackets are taken as
    // given and the usual construction checks are re-run by callers.
    static WittAlgebra from_parts(const WittParams& params, std::vector<SparseVec> brackets);

private:
    WittAlgebra() = default;
    void init_basis();

    WittParams params_;
    MonoIndexer oidx_;
    std::vector<WittBasisElement> basis_;
    std::vector<size_t> element_index_;
    std::vector<Grading> gradings_;
    std::vector<std::string> names_;
    std::vector<size_t> l0_;
    std::vector<SparseVec> bracket_;
};

struct AlgebraCheck {
    bool ok = true;
    std::string witness;  // empty when ok
};

// Subspace hook for further Cartan types given inside W(k,l,m): selects
// the basis elements satisfying the predicate and reports whether their
// span closes under the bracket.  Only type W ships a construction; a
// special type (S, H, ...) would plug in here as a filter.
struct SubalgebraFilter {
    std::vector<size_t> elements;
    bool closed = false;
    std::string witness;  // first bracket leaving the span, when not closed
};
SubalgebraFilter filter_subalgebra(const WittAlgebra& w, const std::function<bool(size_t)>& keep);

AlgebraCheck check_anticommutativity(const WittAlgebra& w);
AlgebraCheck check_jacobi(const WittAlgebra& w);
AlgebraCheck check_neg_abelian(const WittAlgebra& w);
AlgebraCheck check_grading(const WittAlgebra& w);
// bracket table vs operator supercommutator on O(k,l,m), all pairs
AlgebraCheck check_derivation_oracle(const WittAlgebra& w);
// (ad D_i)^{p^{m_i}} = 0 on W
AlgebraCheck check_ad_nilpotency(const WittAlgebra& w);
// ad: L_0 -> End(L_{-1}) is injective with image closed under the
// supercommutator (the gl(k|l) identification)
AlgebraCheck check_gl0(const WittAlgebra& w);

}  // namespace supverma

#endif
