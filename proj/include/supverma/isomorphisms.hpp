#ifndef SUPVERMA_ISOMORPHISMS_HPP
#define SUPVERMA_ISOMORPHISMS_HPP

#include <functional>

#include "supverma/modules.hpp"
#include "supverma/prng.hpp"

// Explicit matrices for the structural isomorphisms between induced
// and coinduced modules and their machine verification:
//
//   Phi : Ind_K(V_sigma) -> Coind_K(V)       (natural, d(Phi) = l mod 2)
//   Psi : (Ind_K(V))^*   -> Coind_K(V^*)     (adjoint, d(Psi) = 0)
//   psi : M -> Coind_K(M_0)                  (graded embedding, zd = 0)
//   Theta : O(k,l,m) (x) V -> Coind_K(V)     (mixed product transport)
//
// plus the two-sided self-duality criterion Ind_K(V_sigma) ~
// (Ind_K(V_sigma))^* <=> V ~ (V_sigma)^*.

namespace supverma {

struct EquivarianceReport {
    size_t residual_entries = 0;  // nonzero entries over all generators
    bool bijective = false;
    bool pass = false;
    std::string witness;
};

// Checks f(x.b) = (-1)^{d(x)d(f)} x.f(b) for every generator in gens
// and counts residual entries; when require_bijective, also full rank.
EquivarianceReport check_equivariance(const WittAlgebra& w, const SuperMap& f, const LModule& src,
                                      const LModule& dst, bool require_bijective);

// Basis of the space of parity-homogeneous module homomorphisms
// src -> dst equivariant for the listed generators (Definition-style:
// F A_x = (-1)^{d(x) q} B_x F per generator x).  Solved blockwise per
// Z-degree offset.
std::vector<FpMatrix> hom_space(const WittAlgebra& w, const std::vector<size_t>& gens,
                                const std::vector<FpMatrix>& src_action, const GradedSpace& src,
                                const std::vector<FpMatrix>& dst_action, const GradedSpace& dst,
                                Parity hom_parity);

struct InvertibleSearch {
    bool exists = false;
    bool probabilistic = false;  // set when the exhaustive budget was exceeded
    FpMatrix element;            // an invertible combination, when exists
};
// Decides whether the span of the given square matrices contains an
// invertible element.  Exhaustive for p^r <= 729, else 256 seeded
// samples (a hit is still an exact certificate; a miss is marked
// probabilistic).
InvertibleSearch contains_invertible(const std::vector<FpMatrix>& basis, uint32_t p, uint64_t seed);

struct PhiResult {
    LModule ind;    // Ind_K(V_sigma)
    LModule coind;  // Coind_K(V)
    SuperMap phi;
    EquivarianceReport report;
};
// Phi(y (x) v) = (-1)^{d(y)d(Phi)} y . chi_v^{(pi,E)}; verified
// bijective and equivariant, throws with a witness otherwise.
PhiResult build_phi(const UEnv& env, const KModule& v_untwisted);

// phi must be an even K-module homomorphism V -> W; checks
// phi^* o Phi_V = Phi_W o (id (x) phi) exactly.
bool check_phi_naturality(const UEnv& env, const KModule& v, const KModule& w_mod, const FpMatrix& phi_vw);

struct PsiResult {
    LModule ind;       // Ind_K(V)
    LModule ind_dual;  // (Ind_K(V))^*
    LModule coind;     // Coind_K(V^*)
    SuperMap psi;
    FpMatrix inverse;  // from the explicit preimage phi(x (x) v) = f(x^T)(v)
    EquivarianceReport report;
};
PsiResult build_psi_dual(const UEnv& env, const KModule& v);

struct SelfDualityResult {
    bool module_side = false;   // exists iso V -> (V_sigma)^*
    bool induced_side = false;  // exists iso Ind -> Ind^*
    bool probabilistic = false;
    size_t hom_dim_module = 0;  // even + odd hom dimensions
    size_t hom_dim_induced = 0;
    bool agree() const { return module_side == induced_side; }
};
SelfDualityResult check_self_duality(const UEnv& env, const KModule& v, uint64_t seed);

struct PsiEmbedResult {
    bool preconditions_ok = false;
    bool equivariant = false;
    bool injective = false;
    bool degree_preserving = false;  // zd(psi) = 0 as a SuperMap
    bool image_is_degree0 = false;   // psi(M_0) = Coind_K(M_0)_0
    bool input_transitive = false;
    std::string witness;
    SuperMap psi;
    LModule coind0;
};
// psi(v)(x) = (-1)^{d(x)d(v)} pr_0(x.v) into Coind_K(M_0).  Rejects
// inputs that are not positively graded or not z-annihilated.
PsiEmbedResult psi_embed(const UEnv& env, const LModule& m);

struct MixedResult {
    bool found = false;
    std::string convention;      // human-readable form of s
    std::vector<int> signs;      // s(0..l) as +-1
    bool positively_graded = false;
    bool transitive = false;
    bool z_annihilated = false;
    bool bracket_compatible = false;
    LModule mixed;  // the transported module on O(k,l,m) (x) V
};
// Searches the parity conventions s(|u|) in {+-1,+-(-1)^{|u|}} first,
// then the reversal family +-(-1)^{C(|u|,2)}, +-(-1)^{C(|u|+1,2)};
// throws when none reproduces both displayed derivative formulas.
MixedResult verify_mixed(const UEnv& env, const KModule& v);

}  // namespace supverma

#endif
