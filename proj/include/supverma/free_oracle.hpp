#ifndef SUPVERMA_FREE_ORACLE_HPP
#define SUPVERMA_FREE_ORACLE_HPP

#include "supverma/enveloping.hpp"

// Naive normalization of words in U(L) by repeated single-step
// rewriting xy -> (-1)^{d(x)d(y)} yx + [x,y].  Exponential, only for
// short words; deliberately independent of the straightening tables in
// UEnv, which it cross-checks.  Terminal words have all L^- letters
// sorted in front and the K letters behind in encounter order; terms
// whose exponent part contains some z_i = e_i^{p^{m_i}} are dropped at
// readout (every module in scope kills z_i).

namespace supverma {

// normal form of coeff * word, combined and sorted by (mono, tail)
std::vector<WordTerm> normalize_free(const WittAlgebra& w, const std::vector<int>& word, uint32_t coeff);

// convenience: x_word * e^mono, for direct comparison with
// UEnv::left_mult_word
std::vector<WordTerm> normalize_free_on_mono(const UEnv& env, const std::vector<int>& word, size_t mono);

bool word_terms_equal(const std::vector<WordTerm>& a, const std::vector<WordTerm>& b);

}  // namespace supverma

#endif
