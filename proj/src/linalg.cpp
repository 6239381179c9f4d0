#include "gcmce/linalg.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "gcmce/errors.hpp"

namespace gcmce {

FMatrix::FMatrix(FieldPtr field, std::size_t rows, std::size_t cols)
    : field_(std::move(field)), rows_(rows), cols_(cols), a_(rows * cols, 0) {}

FMatrix FMatrix::identity(FieldPtr field, std::size_t n) {
    FMatrix m(std::move(field), n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

FMatrix FMatrix::from_rows(FieldPtr field, const std::vector<Vec>& rows) {
    if (rows.empty()) return FMatrix(std::move(field), 0, 0);
    FMatrix m(std::move(field), rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != m.cols_) throw DimensionMismatch("ragged row set");
        for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

Vec FMatrix::row(std::size_t i) const {
    return Vec(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_);
}

Vec FMatrix::col(std::size_t j) const {
    Vec v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
}

void FMatrix::set_row(std::size_t i, const Vec& v) {
    if (v.size() != cols_) throw DimensionMismatch("row length mismatch");
    std::copy(v.begin(), v.end(), a_.begin() + i * cols_);
}

FMatrix FMatrix::operator*(const FMatrix& other) const {
    if (cols_ != other.rows_) throw DimensionMismatch("matrix product shape mismatch");
    const FieldTower& f = *field_;
    FMatrix r(field_, rows_, other.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t k = 0; k < cols_; ++k) {
            gf_t v = (*this)(i, k);
            if (v == 0) continue;
            for (std::size_t j = 0; j < other.cols_; ++j) {
                gf_t w = other(k, j);
                if (w == 0) continue;
                r(i, j) = f.add(r(i, j), f.mul(v, w));
            }
        }
    }
    return r;
}

FMatrix FMatrix::operator+(const FMatrix& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw DimensionMismatch("matrix sum shape mismatch");
    FMatrix r(field_, rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = field_->add(a_[i], other.a_[i]);
    return r;
}

FMatrix FMatrix::transpose() const {
    FMatrix r(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
}

bool FMatrix::operator==(const FMatrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_ && a_ == other.a_;
}

Vec FMatrix::mul_row_vec(const Vec& v) const {
    if (v.size() != rows_) throw DimensionMismatch("vector-matrix shape mismatch");
    const FieldTower& f = *field_;
    Vec r(cols_, 0);
    for (std::size_t i = 0; i < rows_; ++i) {
        gf_t s = v[i];
        if (s == 0) continue;
        if (s == 1) {
            for (std::size_t j = 0; j < cols_; ++j) r[j] = f.add(r[j], (*this)(i, j));
        } else {
            for (std::size_t j = 0; j < cols_; ++j)
                r[j] = f.add(r[j], f.mul(s, (*this)(i, j)));
        }
    }
    return r;
}

Vec FMatrix::mul_col_vec(const Vec& v) const {
    if (v.size() != cols_) throw DimensionMismatch("matrix-vector shape mismatch");
    const FieldTower& f = *field_;
    Vec r(rows_, 0);
    for (std::size_t i = 0; i < rows_; ++i) {
        gf_t acc = 0;
        for (std::size_t j = 0; j < cols_; ++j) {
            gf_t w = (*this)(i, j);
            if (w != 0 && v[j] != 0) acc = f.add(acc, f.mul(w, v[j]));
        }
        r[i] = acc;
    }
    return r;
}

FMatrix FMatrix::rref(std::vector<std::size_t>* pivots) const {
    const FieldTower& f = *field_;
    FMatrix r = *this;
    std::vector<std::size_t> piv;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols_ && row < rows_; ++col) {
        std::size_t sel = row;
        while (sel < rows_ && r(sel, col) == 0) ++sel;
        if (sel == rows_) continue;
        if (sel != row) {
            for (std::size_t j = 0; j < cols_; ++j) std::swap(r(sel, j), r(row, j));
        }
        gf_t inv = f.inv(r(row, col));
        if (inv != 1) {
            for (std::size_t j = col; j < cols_; ++j) r(row, j) = f.mul(r(row, j), inv);
        }
        for (std::size_t i = 0; i < rows_; ++i) {
            if (i == row) continue;
            gf_t factor = r(i, col);
            if (factor == 0) continue;
            for (std::size_t j = col; j < cols_; ++j)
                r(i, j) = f.sub(r(i, j), f.mul(factor, r(row, j)));
        }
        piv.push_back(col);
        ++row;
    }
    if (pivots) *pivots = std::move(piv);
    return r;
}

std::size_t FMatrix::rank() const {
    std::vector<std::size_t> piv;
    rref(&piv);
    return piv.size();
}

FMatrix FMatrix::nullspace_basis() const {
    std::vector<std::size_t> piv;
    FMatrix r = rref(&piv);
    std::vector<bool> is_pivot(cols_, false);
    for (auto c : piv) is_pivot[c] = true;
    std::vector<Vec> basis;
    const FieldTower& f = *field_;
    for (std::size_t free_col = 0; free_col < cols_; ++free_col) {
        if (is_pivot[free_col]) continue;
        Vec h(cols_, 0);
        h[free_col] = 1;
        for (std::size_t i = 0; i < piv.size(); ++i) {
            // pivot variable = -(entry in free column)
            h[piv[i]] = f.neg(r(i, free_col));
        }
        basis.push_back(std::move(h));
    }
    if (basis.empty()) return FMatrix(field_, 0, cols_);
    return from_rows(field_, basis);
}

std::optional<FMatrix> FMatrix::inverse() const {
    if (rows_ != cols_) return std::nullopt;
    const FieldTower& f = *field_;
    // Gauss-Jordan on [M | I]
    FMatrix aug(field_, rows_, 2 * cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) aug(i, j) = (*this)(i, j);
        aug(i, cols_ + i) = 1;
    }
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols_; ++col) {
        std::size_t sel = row;
        while (sel < rows_ && aug(sel, col) == 0) ++sel;
        if (sel == rows_) return std::nullopt;
        if (sel != row)
            for (std::size_t j = 0; j < 2 * cols_; ++j) std::swap(aug(sel, j), aug(row, j));
        gf_t inv = f.inv(aug(row, col));
        for (std::size_t j = col; j < 2 * cols_; ++j) aug(row, j) = f.mul(aug(row, j), inv);
        for (std::size_t i = 0; i < rows_; ++i) {
            if (i == row || aug(i, col) == 0) continue;
            gf_t factor = aug(i, col);
            for (std::size_t j = col; j < 2 * cols_; ++j)
                aug(i, j) = f.sub(aug(i, j), f.mul(factor, aug(row, j)));
        }
        ++row;
    }
    FMatrix out(field_, rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out(i, j) = aug(i, cols_ + j);
    return out;
}

FMatrix FMatrix::submatrix_cols(const std::vector<std::size_t>& cols) const {
    FMatrix r(field_, rows_, cols.size());
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) r(i, j) = (*this)(i, cols[j]);
    return r;
}

FMatrix FMatrix::vstack(const FMatrix& below) const {
    if (rows_ == 0) return below;
    if (below.rows_ == 0) return *this;
    if (cols_ != below.cols_) throw DimensionMismatch("vstack width mismatch");
    FMatrix r(field_, rows_ + below.rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r(i, j) = (*this)(i, j);
    for (std::size_t i = 0; i < below.rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r(rows_ + i, j) = below(i, j);
    return r;
}

bool FMatrix::is_zero() const {
    for (gf_t v : a_)
        if (v != 0) return false;
    return true;
}

bool FMatrix::same_row_space(const FMatrix& other) const {
    if (cols_ != other.cols_) return false;
    std::size_t ra = rank();
    std::size_t rb = other.rank();
    if (ra != rb) return false;
    return vstack(other).rank() == ra;
}

SolveResult solve_right(const FMatrix& a, const Vec& b) {
    // x * A = b  <=>  A^T x^T = b^T
    if (b.size() != a.cols()) throw DimensionMismatch("rhs length mismatch");
    const std::size_t k = a.rows();
    const FieldTower& f = *a.field();
    FMatrix at = a.transpose();  // n x k
    FMatrix aug(a.field(), at.rows(), k + 1);
    for (std::size_t i = 0; i < at.rows(); ++i) {
        for (std::size_t j = 0; j < k; ++j) aug(i, j) = at(i, j);
        aug(i, k) = b[i];
    }
    std::vector<std::size_t> piv;
    FMatrix r = aug.rref(&piv);
    SolveResult res;
    // inconsistent iff a pivot lands in the augmented column
    for (auto c : piv) {
        if (c == k) {
            res.status = SolveResult::Status::no_solution;
            return res;
        }
    }
    Vec x(k, 0);
    for (std::size_t i = 0; i < piv.size(); ++i) x[piv[i]] = r(i, k);
    res.solution = std::move(x);
    if (piv.size() == k) {
        res.status = SolveResult::Status::unique;
        res.nullspace = FMatrix(a.field(), 0, k);
    } else {
        res.status = SolveResult::Status::non_unique;
        // left null space of A = right null space of A^T
        std::vector<std::size_t> piv2;
        FMatrix rr = at.rref(&piv2);
        std::vector<bool> is_pivot(k, false);
        for (auto c : piv2) is_pivot[c] = true;
        std::vector<Vec> basis;
        for (std::size_t free_col = 0; free_col < k; ++free_col) {
            if (is_pivot[free_col]) continue;
            Vec h(k, 0);
            h[free_col] = 1;
            for (std::size_t i = 0; i < piv2.size(); ++i) h[piv2[i]] = f.neg(rr(i, free_col));
            basis.push_back(std::move(h));
        }
        res.nullspace = FMatrix::from_rows(a.field(), basis);
    }
    return res;
}

PermMatrix::PermMatrix(std::vector<std::uint32_t> perm) : perm_(std::move(perm)) {
    std::vector<bool> seen(perm_.size(), false);
    for (auto v : perm_) {
        if (v >= perm_.size() || seen[v]) throw Error("not a permutation");
        seen[v] = true;
    }
}

PermMatrix PermMatrix::identity(std::size_t n) {
    std::vector<std::uint32_t> p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = static_cast<std::uint32_t>(i);
    return PermMatrix(std::move(p));
}

PermMatrix PermMatrix::random(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<std::uint32_t> p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = static_cast<std::uint32_t>(i);
    rng.shuffle(p);
    return PermMatrix(std::move(p));
}

PermMatrix PermMatrix::inverse() const {
    std::vector<std::uint32_t> p(perm_.size());
    for (std::size_t i = 0; i < perm_.size(); ++i) p[perm_[i]] = static_cast<std::uint32_t>(i);
    return PermMatrix(std::move(p));
}

PermMatrix PermMatrix::compose(const PermMatrix& then) const {
    if (size() != then.size()) throw DimensionMismatch("permutation size mismatch");
    std::vector<std::uint32_t> p(perm_.size());
    for (std::size_t i = 0; i < perm_.size(); ++i) p[i] = then.perm_[perm_[i]];
    return PermMatrix(std::move(p));
}

Vec PermMatrix::apply(const Vec& v) const {
    if (v.size() != perm_.size()) throw DimensionMismatch("vector-permutation size mismatch");
    Vec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[perm_[i]] = v[i];
    return r;
}

FMatrix PermMatrix::apply_to_cols(const FMatrix& m) const {
    if (m.cols() != perm_.size()) throw DimensionMismatch("matrix-permutation size mismatch");
    FMatrix r(m.field(), m.rows(), m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j) {
        std::size_t target = perm_[j];
        for (std::size_t i = 0; i < m.rows(); ++i) r(i, target) = m(i, j);
    }
    return r;
}

FMatrix random_matrix(FieldPtr field, std::size_t rows, std::size_t cols, Rng& rng) {
    FMatrix m(field, rows, cols);
    const std::uint64_t order = field->order();
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            m(i, j) = static_cast<gf_t>(rng.below(order));
    return m;
}

FMatrix random_invertible(FieldPtr field, std::size_t n, std::uint64_t seed) {
    if (n == 0) throw DimensionMismatch("matrix size must be positive");
    Rng rng(seed);
    for (;;) {
        FMatrix m = random_matrix(field, n, n, rng);
        if (m.rank() == n) return m;
    }
}

std::size_t hamming_weight(const Vec& v) {
    std::size_t w = 0;
    for (gf_t x : v)
        if (x != 0) ++w;
    return w;
}

std::size_t hamming_distance(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw DimensionMismatch("distance of unequal-length vectors");
    std::size_t w = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) ++w;
    return w;
}

Vec vec_add(const FieldTower& f, const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw DimensionMismatch("sum of unequal-length vectors");
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = f.add(a[i], b[i]);
    return r;
}

Vec vec_sub(const FieldTower& f, const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw DimensionMismatch("difference of unequal-length vectors");
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = f.sub(a[i], b[i]);
    return r;
}

void write_matrix(std::ostream& os, const FMatrix& m) {
    os << m.rows() << ' ' << m.cols() << ' ' << m.field()->q() << ' ' << m.field()->m() << '\n';
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) os << ' ';
            os << m(i, j);
        }
        os << '\n';
    }
}

FMatrix read_matrix(std::istream& is) {
    std::size_t rows, cols;
    gf_t q;
    unsigned m;
    if (!(is >> rows >> cols >> q >> m)) throw ParseError("bad matrix header");
    FieldPtr field = make_tower(q, m);
    FMatrix out(field, rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) {
            std::uint64_t v;
            if (!(is >> v)) throw ParseError("truncated matrix body");
            if (v >= field->order()) throw ParseError("element out of field range");
            out(i, j) = static_cast<gf_t>(v);
        }
    return out;
}

}  // namespace gcmce
