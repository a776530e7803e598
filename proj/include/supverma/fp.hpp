#ifndef SUPVERMA_FP_HPP
#define SUPVERMA_FP_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

// Exact arithmetic over the prime field F_p, p an odd prime.
// All residues are kept reduced to [0, p).  Matrices are dense and
// row-major; rank/solve use Gaussian elimination with the first
// nonzero entry in column order as pivot, so results are reproducible
// bit for bit.

namespace supverma {

bool is_prime_u32(uint32_t n);

// Throws std::invalid_argument unless p is a prime >= 3.  The sign
// calculus (-1)^{d(x)d(y)} used throughout degenerates at p = 2, so
// characteristic 2 is rejected everywhere.
void require_odd_prime(uint32_t p);

inline uint32_t fp_add(uint32_t a, uint32_t b, uint32_t p) {
    uint32_t s = a + b;
    return s >= p ? s - p : s;
}
inline uint32_t fp_sub(uint32_t a, uint32_t b, uint32_t p) {
    return a >= b ? a - b : a + p - b;
}
inline uint32_t fp_neg(uint32_t a, uint32_t p) { return a == 0 ? 0 : p - a; }
inline uint32_t fp_mul(uint32_t a, uint32_t b, uint32_t p) {
    return static_cast<uint32_t>((static_cast<uint64_t>(a) * b) % p);
}
uint32_t fp_pow(uint32_t a, uint64_t e, uint32_t p);
uint32_t fp_inv(uint32_t a, uint32_t p);  // throws on a == 0

// A single residue tagged with its modulus; used at API boundaries
// where values from different fields must not be mixed silently.
struct FpScalar {
    uint32_t value = 0;
    uint32_t p = 3;

    FpScalar() = default;
    FpScalar(int64_t v, uint32_t modulus);

    FpScalar operator+(const FpScalar& o) const;
    FpScalar operator-(const FpScalar& o) const;
    FpScalar operator*(const FpScalar& o) const;
    FpScalar operator-() const { return FpScalar(-(int64_t)value, p); }
    FpScalar inverse() const;
    bool operator==(const FpScalar& o) const { return value == o.value && p == o.p; }
    bool is_zero() const { return value == 0; }
};

// C(n, k) mod p by Lucas' theorem; returns 0 when k > n.
uint32_t binom_mod_p(uint64_t n, uint64_t k, uint32_t p);
// Componentwise product of binomials, the multi-index case.
uint32_t binom_mod_p(const std::vector<uint64_t>& n, const std::vector<uint64_t>& k, uint32_t p);

class FpMatrix {
public:
    FpMatrix() = default;
    FpMatrix(size_t rows, size_t cols, uint32_t p);

    static FpMatrix identity(size_t n, uint32_t p);

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    uint32_t modulus() const { return p_; }

    uint32_t at(size_t r, size_t c) const { return a_[r * cols_ + c]; }
    void set(size_t r, size_t c, uint32_t v) { a_[r * cols_ + c] = v % p_; }
    void add_at(size_t r, size_t c, uint32_t v) { a_[r * cols_ + c] = fp_add(a_[r * cols_ + c], v % p_, p_); }

    FpMatrix operator*(const FpMatrix& o) const;
    FpMatrix operator+(const FpMatrix& o) const;
    FpMatrix operator-(const FpMatrix& o) const;
    FpMatrix scaled(uint32_t c) const;
    FpMatrix transpose() const;
    bool operator==(const FpMatrix& o) const;
    bool is_zero() const;
    size_t nonzero_count() const;

    // columns picked out of *this, in the order given
    FpMatrix select_columns(const std::vector<size_t>& cols) const;
    FpMatrix select_rows(const std::vector<size_t>& rows) const;

    // stack vertically: [this; o]
    FpMatrix vstack(const FpMatrix& o) const;

    const std::vector<uint32_t>& raw() const { return a_; }
    std::vector<uint32_t>& raw() { return a_; }

private:
    size_t rows_ = 0, cols_ = 0;
    uint32_t p_ = 3;
    std::vector<uint32_t> a_;
};

size_t rank(const FpMatrix& m);

struct LinearSolution {
    FpMatrix particular;  // one solution of A x = b (cols of b solved columnwise)
    FpMatrix kernel;      // columns form a basis of ker A
};

// Solves A x = b; returns nullopt when inconsistent.  b may have
// several columns; the kernel basis is that of A alone.
std::optional<LinearSolution> solve(const FpMatrix& A, const FpMatrix& b);

// Basis of the null space of A, as columns.
FpMatrix kernel_basis(const FpMatrix& A);

}  // namespace supverma

#endif
