#ifndef GCMCE_LINALG_HPP
#define GCMCE_LINALG_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "gcmce/gf.hpp"
#include "gcmce/rng.hpp"

namespace gcmce {

// Dense matrix over a FieldTower, row-major canonical values. Immutable use
// is the norm; mutating accessors exist for construction code.
class FMatrix {
   public:
    FMatrix() = default;
    FMatrix(FieldPtr field, std::size_t rows, std::size_t cols);
    static FMatrix identity(FieldPtr field, std::size_t n);
    static FMatrix from_rows(FieldPtr field, const std::vector<Vec>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const FieldPtr& field() const { return field_; }

    gf_t operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
    gf_t& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }

    Vec row(std::size_t i) const;
    Vec col(std::size_t j) const;
    void set_row(std::size_t i, const Vec& v);

    FMatrix operator*(const FMatrix& other) const;
    FMatrix operator+(const FMatrix& other) const;
    FMatrix transpose() const;
    bool operator==(const FMatrix& other) const;

    // v * M for a length-rows() vector; returns length cols().
    Vec mul_row_vec(const Vec& v) const;
    // M * v for a length-cols() vector; returns length rows().
    Vec mul_col_vec(const Vec& v) const;

    // Unique reduced row echelon form. Pivot column indices out via `pivots`.
    FMatrix rref(std::vector<std::size_t>* pivots = nullptr) const;
    std::size_t rank() const;
    // Rows spanning { h : M * h^T = 0 } (the right null space), in RREF.
    FMatrix nullspace_basis() const;
    std::optional<FMatrix> inverse() const;

    FMatrix submatrix_cols(const std::vector<std::size_t>& cols) const;
    FMatrix vstack(const FMatrix& below) const;
    bool is_zero() const;
    bool same_row_space(const FMatrix& other) const;

   private:
    FieldPtr field_;
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<gf_t> a_;
};

// Result of solving x * A = b for x.
struct SolveResult {
    enum class Status { unique, non_unique, no_solution };
    Status status = Status::no_solution;
    Vec solution;       // a particular solution when status != no_solution
    FMatrix nullspace;  // rows y with y * A = 0 (empty when unique)

    bool ok() const { return status != Status::no_solution; }
};

SolveResult solve_right(const FMatrix& a, const Vec& b);

// Permutation on {0,...,n-1}, interpreted as the matrix P with
// P[i][perm(i)] = 1, so (v*P)[perm(i)] = v[i] and column j of M*P is
// column perm^{-1}(j) of M.
class PermMatrix {
   public:
    PermMatrix() = default;
    explicit PermMatrix(std::vector<std::uint32_t> perm);
    static PermMatrix identity(std::size_t n);
    static PermMatrix random(std::size_t n, std::uint64_t seed);

    std::size_t size() const { return perm_.size(); }
    std::uint32_t operator()(std::size_t i) const { return perm_[i]; }
    const std::vector<std::uint32_t>& mapping() const { return perm_; }

    PermMatrix inverse() const;
    PermMatrix compose(const PermMatrix& then) const;  // apply *this, then `then`

    Vec apply(const Vec& v) const;                // v * P
    FMatrix apply_to_cols(const FMatrix& m) const;  // M * P

    bool operator==(const PermMatrix& other) const { return perm_ == other.perm_; }

   private:
    std::vector<std::uint32_t> perm_;
};

FMatrix random_matrix(FieldPtr field, std::size_t rows, std::size_t cols, Rng& rng);
// Uniform invertible matrix by rejection sampling; deterministic given seed.
FMatrix random_invertible(FieldPtr field, std::size_t n, std::uint64_t seed);

std::size_t hamming_weight(const Vec& v);
std::size_t hamming_distance(const Vec& a, const Vec& b);
Vec vec_add(const FieldTower& f, const Vec& a, const Vec& b);
Vec vec_sub(const FieldTower& f, const Vec& a, const Vec& b);

// Text format: first line "rows cols q m", then one row per line of
// space-separated canonical integers.
void write_matrix(std::ostream& os, const FMatrix& m);
FMatrix read_matrix(std::istream& is);

}  // namespace gcmce

#endif
