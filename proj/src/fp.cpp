#include "supverma/fp.hpp"

#include <algorithm>

namespace supverma {

bool is_prime_u32(uint32_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (uint32_t d = 3; static_cast<uint64_t>(d) * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

void require_odd_prime(uint32_t p) {
    if (p == 2) throw std::invalid_argument("characteristic 2 unsupported");
    if (!is_prime_u32(p)) throw std::invalid_argument("modulus " + std::to_string(p) + " is not prime");
    if (p > 32749) throw std::invalid_argument("modulus too large (must fit exact 64-bit accumulation)");
}

uint32_t fp_pow(uint32_t a, uint64_t e, uint32_t p) {
    uint64_t base = a % p, acc = 1;
    while (e) {
        if (e & 1) acc = acc * base % p;
        base = base * base % p;
        e >>= 1;
    }
    return static_cast<uint32_t>(acc);
}

uint32_t fp_inv(uint32_t a, uint32_t p) {
    a %= p;
    if (a == 0) throw std::domain_error("division by zero in F_p");
    return fp_pow(a, p - 2, p);
}

FpScalar::FpScalar(int64_t v, uint32_t modulus) : p(modulus) {
    require_odd_prime(modulus);
    int64_t r = v % static_cast<int64_t>(modulus);
    if (r < 0) r += modulus;
    value = static_cast<uint32_t>(r);
}

static void check_same_modulus(uint32_t a, uint32_t b) {
    if (a != b) throw std::invalid_argument("mixed moduli in F_p arithmetic");
}

FpScalar FpScalar::operator+(const FpScalar& o) const {
    check_same_modulus(p, o.p);
    FpScalar r;
    r.p = p;
    r.value = fp_add(value, o.value, p);
    return r;
}
FpScalar FpScalar::operator-(const FpScalar& o) const {
    check_same_modulus(p, o.p);
    FpScalar r;
    r.p = p;
    r.value = fp_sub(value, o.value, p);
    return r;
}
FpScalar FpScalar::operator*(const FpScalar& o) const {
    check_same_modulus(p, o.p);
    FpScalar r;
    r.p = p;
    r.value = fp_mul(value, o.value, p);
    return r;
}
FpScalar FpScalar::inverse() const {
    FpScalar r;
    r.p = p;
    r.value = fp_inv(value, p);
    return r;
}

uint32_t binom_mod_p(uint64_t n, uint64_t k, uint32_t p) {
    if (k > n) return 0;
    uint64_t acc = 1;
    while (n || k) {
        uint64_t nd = n % p, kd = k % p;
        if (kd > nd) return 0;
        // C(nd, kd) for digits < p, via factorial descent
        uint64_t num = 1, den = 1;
        for (uint64_t i = 0; i < kd; ++i) {
            num = num * ((nd - i) % p) % p;
            den = den * ((i + 1) % p) % p;
        }
        acc = acc * num % p * fp_inv(static_cast<uint32_t>(den), p) % p;
        n /= p;
        k /= p;
    }
    return static_cast<uint32_t>(acc);
}

uint32_t binom_mod_p(const std::vector<uint64_t>& n, const std::vector<uint64_t>& k, uint32_t p) {
    if (n.size() != k.size()) throw std::invalid_argument("binom_mod_p: shape mismatch");
    uint32_t acc = 1;
    for (size_t i = 0; i < n.size(); ++i) acc = fp_mul(acc, binom_mod_p(n[i], k[i], p), p);
    return acc;
}

FpMatrix::FpMatrix(size_t rows, size_t cols, uint32_t p)
    : rows_(rows), cols_(cols), p_(p), a_(rows * cols, 0) {}

FpMatrix FpMatrix::identity(size_t n, uint32_t p) {
    FpMatrix m(n, n, p);
    for (size_t i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

FpMatrix FpMatrix::operator*(const FpMatrix& o) const {
    check_same_modulus(p_, o.p_);
    if (cols_ != o.rows_) throw std::invalid_argument("FpMatrix: shape mismatch in product");
    FpMatrix r(rows_, o.cols_, p_);
    // sum of cols_ products of values < p <= 32749 fits easily in 64 bits
    for (size_t i = 0; i < rows_; ++i) {
        for (size_t k = 0; k < cols_; ++k) {
            uint64_t v = at(i, k);
            if (!v) continue;
            const uint32_t* orow = &o.a_[k * o.cols_];
            uint32_t* rrow = &r.a_[i * o.cols_];
            for (size_t j = 0; j < o.cols_; ++j)
                rrow[j] = static_cast<uint32_t>((rrow[j] + v * orow[j]) % p_);
        }
    }
    return r;
}

FpMatrix FpMatrix::operator+(const FpMatrix& o) const {
    check_same_modulus(p_, o.p_);
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("FpMatrix: shape mismatch in sum");
    FpMatrix r(rows_, cols_, p_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = fp_add(a_[i], o.a_[i], p_);
    return r;
}

FpMatrix FpMatrix::operator-(const FpMatrix& o) const {
    check_same_modulus(p_, o.p_);
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("FpMatrix: shape mismatch in difference");
    FpMatrix r(rows_, cols_, p_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = fp_sub(a_[i], o.a_[i], p_);
    return r;
}

FpMatrix FpMatrix::scaled(uint32_t c) const {
    FpMatrix r(rows_, cols_, p_);
    c %= p_;
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = fp_mul(a_[i], c, p_);
    return r;
}

FpMatrix FpMatrix::transpose() const {
    FpMatrix r(cols_, rows_, p_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j) r.set(j, i, at(i, j));
    return r;
}

bool FpMatrix::operator==(const FpMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && p_ == o.p_ && a_ == o.a_;
}

bool FpMatrix::is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](uint32_t v) { return v == 0; });
}

size_t FpMatrix::nonzero_count() const {
    size_t n = 0;
    for (uint32_t v : a_)
        if (v) ++n;
    return n;
}

FpMatrix FpMatrix::select_columns(const std::vector<size_t>& cols) const {
    FpMatrix r(rows_, cols.size(), p_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols.size(); ++j) r.set(i, j, at(i, cols[j]));
    return r;
}

FpMatrix FpMatrix::select_rows(const std::vector<size_t>& rows) const {
    FpMatrix r(rows.size(), cols_, p_);
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < cols_; ++j) r.set(i, j, at(rows[i], j));
    return r;
}

FpMatrix FpMatrix::vstack(const FpMatrix& o) const {
    check_same_modulus(p_, o.p_);
    if (cols_ != o.cols_) throw std::invalid_argument("FpMatrix: shape mismatch in vstack");
    FpMatrix r(rows_ + o.rows_, cols_, p_);
    std::copy(a_.begin(), a_.end(), r.a_.begin());
    std::copy(o.a_.begin(), o.a_.end(), r.a_.begin() + a_.size());
    return r;
}

// Row echelon, in place.  Returns the pivot column of each pivot row.
static std::vector<size_t> echelonize(FpMatrix& m) {
    const uint32_t p = m.modulus();
    std::vector<size_t> pivots;
    size_t row = 0;
    for (size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        size_t piv = row;
        while (piv < m.rows() && m.at(piv, col) == 0) ++piv;
        if (piv == m.rows()) continue;
        if (piv != row)
            for (size_t j = 0; j < m.cols(); ++j) {
                uint32_t t = m.at(row, j);
                m.set(row, j, m.at(piv, j));
                m.set(piv, j, t);
            }
        uint32_t inv = fp_inv(m.at(row, col), p);
        for (size_t j = col; j < m.cols(); ++j) m.set(row, j, fp_mul(m.at(row, j), inv, p));
        for (size_t i = 0; i < m.rows(); ++i) {
            if (i == row) continue;
            uint32_t f = m.at(i, col);
            if (!f) continue;
            for (size_t j = col; j < m.cols(); ++j)
                m.set(i, j, fp_sub(m.at(i, j), fp_mul(f, m.at(row, j), p), p));
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

size_t rank(const FpMatrix& m) {
    FpMatrix c = m;
    return echelonize(c).size();
}

FpMatrix kernel_basis(const FpMatrix& A) {
    FpMatrix r = A;
    std::vector<size_t> pivots = echelonize(r);
    const uint32_t p = A.modulus();
    std::vector<bool> is_pivot(A.cols(), false);
    for (size_t c : pivots) is_pivot[c] = true;
    std::vector<size_t> free_cols;
    for (size_t c = 0; c < A.cols(); ++c)
        if (!is_pivot[c]) free_cols.push_back(c);
    FpMatrix K(A.cols(), free_cols.size(), p);
    for (size_t f = 0; f < free_cols.size(); ++f) {
        K.set(free_cols[f], f, 1);
        for (size_t i = 0; i < pivots.size(); ++i)
            K.set(pivots[i], f, fp_neg(r.at(i, free_cols[f]), p));
    }
    return K;
}

std::optional<LinearSolution> solve(const FpMatrix& A, const FpMatrix& b) {
    if (A.rows() != b.rows()) throw std::invalid_argument("solve: shape mismatch");
    const uint32_t p = A.modulus();
    // eliminate on [A | b]
    FpMatrix aug(A.rows(), A.cols() + b.cols(), p);
    for (size_t i = 0; i < A.rows(); ++i) {
        for (size_t j = 0; j < A.cols(); ++j) aug.set(i, j, A.at(i, j));
        for (size_t j = 0; j < b.cols(); ++j) aug.set(i, A.cols() + j, b.at(i, j));
    }
    std::vector<size_t> pivots;
    size_t row = 0;
    for (size_t col = 0; col < A.cols() && row < aug.rows(); ++col) {
        size_t piv = row;
        while (piv < aug.rows() && aug.at(piv, col) == 0) ++piv;
        if (piv == aug.rows()) continue;
        if (piv != row)
            for (size_t j = 0; j < aug.cols(); ++j) {
                uint32_t t = aug.at(row, j);
                aug.set(row, j, aug.at(piv, j));
                aug.set(piv, j, t);
            }
        uint32_t inv = fp_inv(aug.at(row, col), p);
        for (size_t j = col; j < aug.cols(); ++j) aug.set(row, j, fp_mul(aug.at(row, j), inv, p));
        for (size_t i = 0; i < aug.rows(); ++i) {
            if (i == row) continue;
            uint32_t f = aug.at(i, col);
            if (!f) continue;
            for (size_t j = col; j < aug.cols(); ++j)
                aug.set(i, j, fp_sub(aug.at(i, j), fp_mul(f, aug.at(row, j), p), p));
        }
        pivots.push_back(col);
        ++row;
    }
    // inconsistent when some residual row of b is nonzero past rank(A)
    for (size_t i = row; i < aug.rows(); ++i)
        for (size_t j = 0; j < b.cols(); ++j)
            if (aug.at(i, A.cols() + j) != 0) return std::nullopt;

    LinearSolution out;
    out.particular = FpMatrix(A.cols(), b.cols(), p);
    for (size_t i = 0; i < pivots.size(); ++i)
        for (size_t j = 0; j < b.cols(); ++j) out.particular.set(pivots[i], j, aug.at(i, A.cols() + j));
    out.kernel = kernel_basis(A);
    return out;
}

}  // namespace supverma
