#ifndef SUPVERMA_ENVELOPING_HPP
#define SUPVERMA_ENVELOPING_HPP

#include <vector>

#include "supverma/witt.hpp"

// PBW normal forms in U(L) for L = W(k,l,m).  U(L) is a free
// theta(L,K)-module on the monomials e^alpha xi^u (0 <= alpha <= pi,
// u in B), with e_i = D_i and xi_j = d_j the basis of the abelian
// negative part.  Two normal forms are used:
//
//   right form   e^alpha xi^u * (K word)      -- products evaluated in
//                                                induced modules
//   left form    (K letter) * e^alpha xi^u    -- arguments of coinduced
//                                                functionals
//
// Exponent overflow e_i^{p^{m_i}} produces the central element z_i;
// every module in scope is annihilated by z_i, so such terms are
// dropped eagerly.  Repeated odd letters vanish (xi^2 = [xi,xi]/2 = 0).
// Both straightenings require [L^-, L^-] = 0, which construction
// asserts.  All tables are filled eagerly over the finite domain
// (algebra basis x PBW monomials); a constructed UEnv is immutable and
// safe for concurrent reads.

namespace supverma {

// coeff * e^mono * tail, tail a single K element (-1 when absent)
struct LTerm {
    uint32_t coeff;
    size_t mono;
    int tail;
};

// coeff * theta * e^mono, theta a single K element (-1 when absent)
struct RTerm {
    uint32_t coeff;
    int theta;
    size_t mono;
};

// coeff * e^mono * (tail word), K letters in encounter order;
// rightmost tail factor acts first on module elements
struct WordTerm {
    uint32_t coeff;
    size_t mono;
    std::vector<int> tail;
};

class UEnv {
public:
    explicit UEnv(const WittAlgebra& w);

    const WittAlgebra& algebra() const { return *w_; }
    const MonoIndexer& monos() const { return w_->omonos(); }
    size_t mono_count() const { return w_->omonos().count(); }

    Parity mono_parity(size_t mono) const { return monos().mono(mono).parity(); }
    int mono_zdeg(size_t mono) const { return -monos().mono(mono).zdeg(); }
    int mono_letters(size_t mono) const { return monos().mono(mono).zdeg(); }

    // x * e^mono in right normal form; x any algebra basis element
    const std::vector<LTerm>& left_mult(size_t x, size_t mono) const {
        return left_[x * mono_count() + mono];
    }
    // e^mono * y in left normal form; y any algebra basis element
    const std::vector<RTerm>& right_mult_leftnormal(size_t mono, size_t y) const {
        return rln_[mono * w_->dim() + y];
    }
    // e^mono * y in right normal form (tail on the right); trivial for
    // y in K, a signed merge for y in L^-
    std::vector<WordTerm> right_mult(size_t mono, size_t y) const;

    // word * e^mono by letterwise composition, word given left to right
    std::vector<WordTerm> left_mult_word(const std::vector<int>& word, size_t mono) const;

    // canonical word of a PBW monomial as L^- basis indices
    std::vector<int> mono_word(size_t mono) const;

    // single merge of an L^- letter into a monomial; empty on z_i
    // overflow or odd repetition
    std::vector<LTerm> merge_left(int neg_letter, size_t mono) const;
    std::vector<RTerm> merge_right(int neg_letter, size_t mono) const;

    std::string pbw_name(size_t mono) const { return monos().name(monos().mono(mono), "e", "xi"); }

private:
    const WittAlgebra* w_;
    std::vector<std::vector<LTerm>> left_;
    std::vector<std::vector<RTerm>> rln_;
};

// Sign and reversal of the principal anti-automorphism on a word of
// algebra basis elements: (x_1...x_n)^T =
// (-1)^{n + sum_{i<j} d(x_i)d(x_j)} x_n...x_1.
struct AntiTWord {
    uint32_t sign;
    std::vector<int> reversed;
};
AntiTWord anti_T(const std::vector<int>& word, const WittAlgebra& w);

// T on a PBW monomial: e^alpha xi^u |-> (-1)^{|alpha|+|u|} e^alpha xi^u
// (the reversal sign cancels against re-sorting the xi block).
uint32_t pbw_T_sign(size_t mono, const UEnv& env);

}  // namespace supverma

#endif
