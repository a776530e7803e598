#ifndef SUPVERMA_SUPERSPACE_HPP
#define SUPVERMA_SUPERSPACE_HPP

#include <string>
#include <vector>

#include "supverma/fp.hpp"

// Z x Z_2 graded spaces with labeled bases.  The Z_2-degree (parity)
// drives every Koszul sign; the Z-degree is carried along for the
// homogeneity checks on maps.  Basis order is fixed at construction
// and all matrices are relative to it.

namespace supverma {

enum class Parity : uint8_t { even = 0, odd = 1 };

inline Parity parity_of(int n) { return (n & 1) ? Parity::odd : Parity::even; }
inline Parity operator+(Parity a, Parity b) {
    return static_cast<Parity>((static_cast<int>(a) + static_cast<int>(b)) & 1);
}
inline int parity_bit(Parity q) { return static_cast<int>(q); }

// +1 unless both arguments are odd, then -1 (as p-1 in F_p).
inline uint32_t koszul_sign(Parity a, Parity b, uint32_t p) {
    return (a == Parity::odd && b == Parity::odd) ? p - 1 : 1;
}
// (-1)^e as a residue.
inline uint32_t sign_pow(int e, uint32_t p) { return (e & 1) ? p - 1 : 1; }

struct Grading {
    Parity parity = Parity::even;
    int degree = 0;
    bool operator==(const Grading& o) const { return parity == o.parity && degree == o.degree; }
};

struct BasisLabel {
    std::string name;
    Grading grading;
};

class GradedSpace {
public:
    GradedSpace() = default;
    GradedSpace(std::vector<BasisLabel> basis, uint32_t p) : basis_(std::move(basis)), p_(p) {}

    size_t dim() const { return basis_.size(); }
    uint32_t modulus() const { return p_; }
    const BasisLabel& label(size_t i) const { return basis_[i]; }
    Parity parity(size_t i) const { return basis_[i].grading.parity; }
    int degree(size_t i) const { return basis_[i].grading.degree; }
    const std::vector<BasisLabel>& labels() const { return basis_; }

    bool same_gradings(const GradedSpace& o) const;

private:
    std::vector<BasisLabel> basis_;
    uint32_t p_ = 3;
};

// A homogeneous linear map between graded spaces.  Columns are images
// of source basis vectors.  A map of parity q and degree shift s may
// only send a source label of grading (a, n) into target labels of
// grading (a + q, n + s).
struct SuperMap {
    GradedSpace source;
    GradedSpace target;
    FpMatrix matrix;
    Parity parity = Parity::even;
    int degree_shift = 0;
};

// Empty string when homogeneous, else a description of the first
// offending entry.
std::string check_homogeneous(const SuperMap& f);

// Sum over even diagonal entries minus sum over odd ones.  Requires
// source and target to carry identical gradings and f to be even.
FpScalar supertrace(const SuperMap& f);

// Action matrix of x on the plain dual basis:
//   M*[i][j] = -(-1)^{d(x) d(b_j)} M[j][i].
// The double dual then satisfies M** = (-1)^{d(x)} M; the canonical
// identification V -> V**, v |-> (f |-> (-1)^{d(v)d(f)} f(v)), has
// matrix diag((-1)^{d(b_i)}) and conjugating by it recovers M exactly.
FpMatrix dual_action_matrix(const FpMatrix& m, Parity action_parity,
                            const GradedSpace& space);

// The diag(±1) matrix of the canonical map V -> V** above.
FpMatrix natural_double_dual_matrix(const GradedSpace& space);

}  // namespace supverma

#endif
