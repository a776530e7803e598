#ifndef SUPVERMA_MODULES_HPP
#define SUPVERMA_MODULES_HPP

#include <string>
#include <vector>

#include "supverma/enveloping.hpp"

// K-modules (K = L_0 + L^+), the supertrace twist sigma, and the two
// module constructions over U(L): the generalized reduced Verma module
// Ind_K(V) = U(L) (x)_theta V and the coinduced module
// Coind_K(V) = Hom_theta(U(L), V).
//
// Coind is realized on the basis chi_v^{(beta,t)} determined by
//   chi_v^{(beta,t)}(e^alpha xi^u) = (-1)^{d(chi)d(xi^u)} delta(alpha,beta)
//                                    delta(u,t) v
// extended theta-linearly on the left: chi(theta * e^alpha xi^u) =
// (-1)^{d(theta)d(chi)} theta.(chi(e^alpha xi^u)) with theta acting
// through the module V as passed (untwisted).  Arguments are reduced
// to that left normal form before evaluation.  Under this convention
// the displayed evaluation rule chi_v^{(pi,E)}(e^pi xi^E theta) =
// +-(theta.v + sigma(theta)v) holds at the top monomial as a theorem
// (covered by tests), and Ind_K(V_sigma) = Coind_K(V) is the natural
// isomorphism Phi.

namespace supverma {

enum class Provenance { induced, coinduced, dual, mixed, custom };

struct KModule {
    GradedSpace space;
    std::vector<FpMatrix> action;  // per K-local index
    int twist_coeff = 0;           // -1, 0, +1: V_{-sigma}, V, V_sigma
    std::vector<uint32_t> sigma;   // cached sigma per K-local index

    size_t dim() const { return space.dim(); }
};

struct LModule {
    GradedSpace space;
    std::vector<FpMatrix> action;  // per algebra basis index
    std::vector<int> level;        // structural grading of each label
    Provenance provenance = Provenance::custom;

    size_t dim() const { return space.dim(); }
};

// An L_0-module, actions parallel to WittAlgebra::degree0().
struct L0Module {
    GradedSpace space;
    std::vector<FpMatrix> action;
};

// sigma(x) = str of the natural action of x on L/K, per K-local index.
std::vector<uint32_t> compute_sigma(const WittAlgebra& w);

// bracket compatibility over all K pairs plus homogeneity of every
// action matrix
AlgebraCheck check_k_module(const WittAlgebra& w, const KModule& v);
// the same over all of L
AlgebraCheck check_l_module(const WittAlgebra& w, const LModule& m);
// action of e_i composed p^{m_i} times vanishes
AlgebraCheck check_z_annihilation(const WittAlgebra& w, const LModule& m);
// every generator shifts the structural level by its Z-degree
AlgebraCheck check_level_grading(const WittAlgebra& w, const LModule& m);

// x o v = x.v + s*sigma(x) v;  requires v untwisted unless s == 0
KModule twist(const WittAlgebra& w, const KModule& v, int s);

// L^+ acts trivially; compatibility over all of K is re-verified
KModule extend_to_K(const WittAlgebra& w, const L0Module& v0);

KModule dual_kmodule(const WittAlgebra& w, const KModule& v);
LModule dual_lmodule(const WittAlgebra& w, const LModule& m);

// built-in K-modules
KModule trivial_module(const WittAlgebra& w);
KModule natural_module(const WittAlgebra& w);        // L_0 on L_{-1} by ad
KModule dual_natural_module(const WittAlgebra& w);
KModule adjoint0_module(const WittAlgebra& w);       // L_0 on itself by ad
// one-dimensional module x |-> c*sigma(x); self-dual-twisted exactly
// when 2c = -1
KModule character_module(const WittAlgebra& w, uint32_t c);
KModule sigma_half_module(const WittAlgebra& w);     // c = (p-1)/2

// Ind_K(V): basis e^alpha xi^u (x) v_b, label index = mono*dimV + b.
LModule induce(const UEnv& env, const KModule& v);
// Coind_K(V): basis chi_{v_b}^{(beta,t)}, label index = mono*dimV + b.
LModule coinduce(const UEnv& env, const KModule& v);

struct GradingReport {
    bool ok = true;
    std::string witness;
    std::vector<int> levels;  // per label
};
// P_i degrees of a coinduced module and the shift property
// L_j . P_i <= P_{i+j}; fails with a witness on any violation.
GradingReport grade_P(const WittAlgebra& w, const LModule& coind);

struct MuReport {
    bool ok = true;
    std::string witness;
    SuperMap mu;  // P_0 -> V on the level-0 labels
};
// mu(f) = f(1): a bijective L_0-equivariant map P_0 -> V.
MuReport mu_iso(const WittAlgebra& w, const LModule& coind, const KModule& v);

struct TransitivityReport {
    bool positively_graded = false;
    bool transitive = false;
    std::string witness;
};
// Joint kernel of L^- versus the level-0 component.  Rejects modules
// that are not positively graded.
TransitivityReport is_transitive(const WittAlgebra& w, const LModule& m);

// m plus one even zero-action label at the given level; the standard
// planted counterexample for transitivity
LModule append_trivial_line(const WittAlgebra& w, const LModule& m, int level);

}  // namespace supverma

#endif
