#ifndef SUPVERMA_FORMS_HPP
#define SUPVERMA_FORMS_HPP

#include "supverma/isomorphisms.hpp"

// Bilinear forms lambda(b_i, b_j) = gram[i][j] on module bases, the
// invariance predicate lambda(x.v, w) = -(-1)^{d(v)d(x)} lambda(v, x.w),
// and the explicit pairing on Ind_K(V_sigma) built from an
// L_0-isomorphism zeta : V -> (V_sigma)^*:
//
//   lambda(e^a xi^u (x) v1, e^b xi^t (x) v2) =
//     (-1)^{|b| + |t| + inv(t,u) + d(x1)d(x2) + d(x1)d(v1) + l + d(v1) l}
//     delta(pi, a+b) delta(E, u+t) zeta(v1)(v2)
//
// where inv(t,u) counts the transpositions sorting xi^t xi^u.  This is
// the value of the composite (Psi)^{-1} o zeta_* o Phi evaluated
// exactly; the terms |b|+|t| (the anti-automorphism sign of x2^T) and
// inv(t,u) (the xi reordering) are required for invariance, and the
// tests cross-check this closed form against the matrix composite.
//
// Whether the form comes out super-symmetric or skew super-symmetric
// depends on the configuration; it is measured and reported, never
// assumed.

namespace supverma {

struct BilinearForm {
    GradedSpace space;
    FpMatrix gram;
};

bool is_supersymmetric(const BilinearForm& f);
bool is_skew_supersymmetric(const BilinearForm& f);

struct InvarianceReport {
    bool invariant = true;
    std::string witness;
};
InvarianceReport is_invariant(const WittAlgebra& w, const BilinearForm& f, const LModule& m);

size_t radical_dim(const BilinearForm& f);

// Raw Gram matrix of the pairing above on Ind_K(V_sigma); zeta is a
// matrix V -> (V_sigma)^* in the plain dual basis and need not be
// verified.
BilinearForm top_pairing_gram(const UEnv& env, const KModule& v, const FpMatrix& zeta);

struct ZetaCheck {
    bool is_l0_isomorphism = false;
    bool supersymmetric = false;  // zeta(v)(w) = (-1)^{d(v)d(w)} zeta(w)(v)
    bool skew = false;
    std::string witness;
};
ZetaCheck check_zeta(const WittAlgebra& w, const KModule& v, const FpMatrix& zeta, Parity d_zeta);

struct FormFromZeta {
    BilinearForm form;
    LModule ind;  // Ind_K(V_sigma), the module the form lives on
    bool invariant = false;
    bool nondegenerate = false;
    std::string symmetry;  // "super", "skew", "both" (zero form), "neither"
};
// Requires a verified zeta (throws otherwise), then builds the
// top pairing and measures its properties.
FormFromZeta form_from_zeta(const UEnv& env, const KModule& v, const FpMatrix& zeta, Parity d_zeta);

struct ZetaFromForm {
    FpMatrix zeta;
    Parity d_zeta = Parity::even;
};
// Reads zeta off lambda(1 (x) v1, e^pi xi^E (x) v2) with the pairing
// sign removed; requires lambda invariant and nondegenerate and the
// extracted zeta to verify (hard error otherwise).
ZetaFromForm zeta_from_form(const UEnv& env, const KModule& v, const LModule& ind, const BilinearForm& form);

// Form/map bridge on an arbitrary module: phi(v)(w) = lambda(v,w),
// as the matrix of V -> V^* in the plain dual basis (the Gram transpose),
// and back.
FpMatrix form_to_phi(const BilinearForm& f);
BilinearForm phi_to_form(const GradedSpace& space, const FpMatrix& phi);

// lambda(v,w) = beta(v,w) + (-1)^{d(v)d(w)} beta(w,v); always
// supersymmetric.
BilinearForm symmetrize(const BilinearForm& f);

std::string measured_symmetry(const BilinearForm& f);

// Basis of the invariant forms on m with the requested symmetry,
// through the correspondence with Hom_L(m, m^*) (gram = phi transposed).
std::vector<BilinearForm> invariant_symmetric_form_space(const WittAlgebra& w, const LModule& m, bool skew);

}  // namespace supverma

#endif
