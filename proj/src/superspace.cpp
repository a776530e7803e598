#include "supverma/superspace.hpp"

namespace supverma {

bool GradedSpace::same_gradings(const GradedSpace& o) const {
    if (dim() != o.dim() || p_ != o.p_) return false;
    for (size_t i = 0; i < dim(); ++i)
        if (!(basis_[i].grading == o.basis_[i].grading)) return false;
    return true;
}

std::string check_homogeneous(const SuperMap& f) {
    if (f.matrix.rows() != f.target.dim() || f.matrix.cols() != f.source.dim())
        return "matrix shape does not match spaces";
    for (size_t j = 0; j < f.source.dim(); ++j) {
        Parity want_parity = f.source.parity(j) + f.parity;
        int want_degree = f.source.degree(j) + f.degree_shift;
        for (size_t i = 0; i < f.target.dim(); ++i) {
            if (f.matrix.at(i, j) == 0) continue;
            if (f.target.parity(i) != want_parity || f.target.degree(i) != want_degree)
                return "entry (" + std::to_string(i) + "," + std::to_string(j) + ") maps " +
                       f.source.label(j).name + " outside its homogeneous component (" +
                       f.target.label(i).name + ")";
        }
    }
    return "";
}

FpScalar supertrace(const SuperMap& f) {
    if (!f.source.same_gradings(f.target))
        throw std::invalid_argument("supertrace: source and target differ");
    if (f.parity != Parity::even) throw std::invalid_argument("supertrace: map must be even");
    const uint32_t p = f.source.modulus();
    uint32_t acc = 0;
    for (size_t i = 0; i < f.source.dim(); ++i) {
        uint32_t d = f.matrix.at(i, i);
        acc = (f.source.parity(i) == Parity::even) ? fp_add(acc, d, p) : fp_sub(acc, d, p);
    }
    FpScalar r;
    r.p = p;
    r.value = acc;
    return r;
}

FpMatrix dual_action_matrix(const FpMatrix& m, Parity action_parity, const GradedSpace& space) {
    const uint32_t p = m.modulus();
    const size_t n = space.dim();
    if (m.rows() != n || m.cols() != n) throw std::invalid_argument("dual_action_matrix: shape mismatch");
    FpMatrix r(n, n, p);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            uint32_t v = m.at(j, i);
            if (!v) continue;
            uint32_t s = koszul_sign(action_parity, space.parity(j), p);
            r.set(i, j, fp_neg(fp_mul(s, v, p), p));
        }
    return r;
}

FpMatrix natural_double_dual_matrix(const GradedSpace& space) {
    FpMatrix r(space.dim(), space.dim(), space.modulus());
    for (size_t i = 0; i < space.dim(); ++i)
        r.set(i, i, space.parity(i) == Parity::odd ? space.modulus() - 1 : 1);
    return r;
}

}  // namespace supverma
