#include "ncdomain/matrix.hpp"

#include <string>
#include <utility>

#include "ncdomain/errors.hpp"

namespace ncdomain {

namespace {

std::string shape(const QMatrix& a) { return std::to_string(a.rows()) + "x" + std::to_string(a.cols()); }

void require_same_shape(const QMatrix& a, const QMatrix& b, const char* op) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionMismatch(std::string(op) + ": " + shape(a) + " vs " + shape(b));
}

void require_square(const QMatrix& a, const char* op) {
    if (!a.is_square()) throw DimensionMismatch(std::string(op) + " needs a square matrix, got " + shape(a));
}

}  // namespace

QMatrix::QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

QMatrix::QMatrix(std::initializer_list<std::initializer_list<Rat>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
        if (row.size() != cols_) throw DimensionMismatch("ragged matrix literal");
        data_.insert(data_.end(), row.begin(), row.end());
    }
}

QMatrix QMatrix::identity(std::size_t n) { return scalar(n, Rat(1)); }

QMatrix QMatrix::scalar(std::size_t n, const Rat& value) {
    QMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = value;
    return m;
}

QMatrix QMatrix::column(std::span<const Rat> entries) {
    QMatrix m(entries.size(), 1);
    for (std::size_t i = 0; i < entries.size(); ++i) m(i, 0) = entries[i];
    return m;
}

QMatrix QMatrix::transpose() const {
    QMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

bool QMatrix::is_zero() const {
    for (const auto& x : data_)
        if (sgn(x) != 0) return false;
    return true;
}

QMatrix QMatrix::block(std::size_t row, std::size_t col, std::size_t nrows, std::size_t ncols) const {
    if (row + nrows > rows_ || col + ncols > cols_) throw DimensionMismatch("block out of range");
    QMatrix b(nrows, ncols);
    for (std::size_t i = 0; i < nrows; ++i)
        for (std::size_t j = 0; j < ncols; ++j) b(i, j) = (*this)(row + i, col + j);
    return b;
}

void QMatrix::set_block(std::size_t row, std::size_t col, const QMatrix& b) {
    if (row + b.rows() > rows_ || col + b.cols() > cols_) throw DimensionMismatch("block out of range");
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) (*this)(row + i, col + j) = b(i, j);
}

std::vector<Rat> QMatrix::col_vector(std::size_t j) const {
    std::vector<Rat> v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
}

QMatrix operator+(const QMatrix& a, const QMatrix& b) {
    require_same_shape(a, b, "add");
    QMatrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) + b(i, j);
    return c;
}

QMatrix operator-(const QMatrix& a, const QMatrix& b) {
    require_same_shape(a, b, "subtract");
    QMatrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) - b(i, j);
    return c;
}

QMatrix operator-(const QMatrix& a) {
    QMatrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = -a(i, j);
    return c;
}

QMatrix operator*(const QMatrix& a, const QMatrix& b) {
    if (a.cols() != b.rows()) throw DimensionMismatch("multiply: " + shape(a) + " * " + shape(b));
    QMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Rat& aik = a(i, k);
            if (sgn(aik) == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                if (sgn(b(k, j)) != 0) c(i, j) += aik * b(k, j);
        }
    return c;
}

QMatrix operator*(const Rat& s, const QMatrix& a) {
    QMatrix c(a.rows(), a.cols());
    if (sgn(s) == 0) return c;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = s * a(i, j);
    return c;
}

Echelon row_reduce(const QMatrix& a) {
    Echelon e{a, {}};
    QMatrix& m = e.reduced;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t pivot = row;
        while (pivot < m.rows() && sgn(m(pivot, col)) == 0) ++pivot;
        if (pivot == m.rows()) continue;
        if (pivot != row)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(row, j), m(pivot, j));
        Rat inv = 1 / m(row, col);
        for (std::size_t j = col; j < m.cols(); ++j) m(row, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == row || sgn(m(i, col)) == 0) continue;
            Rat factor = m(i, col);
            for (std::size_t j = col; j < m.cols(); ++j)
                if (sgn(m(row, j)) != 0) m(i, j) -= factor * m(row, j);
        }
        e.pivots.push_back(col);
        ++row;
    }
    return e;
}

std::optional<QMatrix> try_inverse(const QMatrix& a) {
    require_square(a, "inverse");
    const std::size_t n = a.rows();
    QMatrix aug(n, 2 * n);
    aug.set_block(0, 0, a);
    aug.set_block(0, n, QMatrix::identity(n));
    Echelon e = row_reduce(aug);
    if (e.pivots.size() < n || (n > 0 && e.pivots[n - 1] != n - 1)) return std::nullopt;
    return e.reduced.block(0, n, n, n);
}

QMatrix inverse(const QMatrix& a) {
    auto inv = try_inverse(a);
    if (!inv) throw SingularMatrix();
    return *std::move(inv);
}

Rat det(const QMatrix& a) {
    require_square(a, "det");
    QMatrix m = a;
    const std::size_t n = m.rows();
    Rat result = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && sgn(m(pivot, col)) == 0) ++pivot;
        if (pivot == n) return Rat(0);
        if (pivot != col) {
            for (std::size_t j = col; j < n; ++j) std::swap(m(col, j), m(pivot, j));
            result = -result;
        }
        result *= m(col, col);
        Rat inv = 1 / m(col, col);
        for (std::size_t i = col + 1; i < n; ++i) {
            if (sgn(m(i, col)) == 0) continue;
            Rat factor = m(i, col) * inv;
            for (std::size_t j = col; j < n; ++j)
                if (sgn(m(col, j)) != 0) m(i, j) -= factor * m(col, j);
        }
    }
    return result;
}

std::size_t rank(const QMatrix& a) { return row_reduce(a).pivots.size(); }

QMatrix kernel_basis(const QMatrix& a) {
    Echelon e = row_reduce(a);
    std::vector<bool> is_pivot(a.cols(), false);
    for (auto p : e.pivots) is_pivot[p] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t j = 0; j < a.cols(); ++j)
        if (!is_pivot[j]) free_cols.push_back(j);
    QMatrix basis(a.cols(), free_cols.size());
    for (std::size_t k = 0; k < free_cols.size(); ++k) {
        const std::size_t f = free_cols[k];
        basis(f, k) = 1;
        for (std::size_t r = 0; r < e.pivots.size(); ++r) basis(e.pivots[r], k) = -e.reduced(r, f);
    }
    return basis;
}

QMatrix solve(const QMatrix& a, const QMatrix& rhs) {
    if (a.rows() != rhs.rows()) throw DimensionMismatch("solve: " + shape(a) + " vs rhs " + shape(rhs));
    QMatrix aug(a.rows(), a.cols() + rhs.cols());
    aug.set_block(0, 0, a);
    aug.set_block(0, a.cols(), rhs);
    Echelon e = row_reduce(aug);
    QMatrix x(a.cols(), rhs.cols());
    for (std::size_t r = 0; r < e.pivots.size(); ++r) {
        if (e.pivots[r] >= a.cols()) throw InconsistentSystem();
        for (std::size_t j = 0; j < rhs.cols(); ++j) x(e.pivots[r], j) = e.reduced(r, a.cols() + j);
    }
    return x;
}

QMatrix kron(const QMatrix& a, const QMatrix& b) {
    QMatrix k(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (sgn(a(i, j)) == 0) continue;
            for (std::size_t p = 0; p < b.rows(); ++p)
                for (std::size_t q = 0; q < b.cols(); ++q) k(i * b.rows() + p, j * b.cols() + q) = a(i, j) * b(p, q);
        }
    return k;
}

QMatrix direct_sum(const QMatrix& a, const QMatrix& b) {
    QMatrix s(a.rows() + b.rows(), a.cols() + b.cols());
    s.set_block(0, 0, a);
    s.set_block(a.rows(), a.cols(), b);
    return s;
}

std::vector<Rat> SpanTracker::reduce(std::span<const Rat> v) const {
    if (v.size() != dim_) throw DimensionMismatch("SpanTracker: vector of wrong length");
    std::vector<Rat> r(v.begin(), v.end());
    for (std::size_t k = 0; k < rows_.size(); ++k) {
        const std::size_t p = pivot_of_row_[k];
        if (sgn(r[p]) == 0) continue;
        Rat factor = r[p];
        for (std::size_t j = p; j < dim_; ++j)
            if (sgn(rows_[k][j]) != 0) r[j] -= factor * rows_[k][j];
    }
    return r;
}

bool SpanTracker::add(std::span<const Rat> v) {
    std::vector<Rat> r = reduce(v);
    std::size_t p = 0;
    while (p < dim_ && sgn(r[p]) == 0) ++p;
    if (p == dim_) return false;
    Rat inv = 1 / r[p];
    for (std::size_t j = p; j < dim_; ++j) r[j] *= inv;
    // Keep earlier rows reduced with respect to the new pivot.
    for (auto& row : rows_) {
        if (sgn(row[p]) == 0) continue;
        Rat factor = row[p];
        for (std::size_t j = p; j < dim_; ++j)
            if (sgn(r[j]) != 0) row[j] -= factor * r[j];
    }
    rows_.push_back(std::move(r));
    pivot_of_row_.push_back(p);
    return true;
}

bool SpanTracker::contains(std::span<const Rat> v) const {
    for (const auto& x : reduce(v))
        if (sgn(x) != 0) return false;
    return true;
}

UPoly min_poly(const QMatrix& a) {
    require_square(a, "min_poly");
    const std::size_t n = a.rows();
    if (n == 0) return UPoly{{Rat(1)}};
    const std::size_t dim = n * n;

    // Echelon rows over vec(A^i), each carrying its expression in the power basis.
    std::vector<std::vector<Rat>> rows;
    std::vector<std::vector<Rat>> combos;
    std::vector<std::size_t> pivots;

    QMatrix power = QMatrix::identity(n);
    for (std::size_t k = 0;; ++k) {
        std::vector<Rat> v(power.entries().begin(), power.entries().end());
        std::vector<Rat> combo(k + 1);
        combo[k] = 1;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            const std::size_t p = pivots[r];
            if (sgn(v[p]) == 0) continue;
            Rat factor = v[p];
            for (std::size_t j = 0; j < dim; ++j)
                if (sgn(rows[r][j]) != 0) v[j] -= factor * rows[r][j];
            for (std::size_t j = 0; j < combos[r].size(); ++j) combo[j] -= factor * combos[r][j];
        }
        std::size_t p = 0;
        while (p < dim && sgn(v[p]) == 0) ++p;
        if (p == dim) return UPoly{std::move(combo)};
        Rat inv = 1 / v[p];
        for (auto& x : v) x *= inv;
        for (auto& x : combo) x *= inv;
        rows.push_back(std::move(v));
        combos.push_back(std::move(combo));
        pivots.push_back(p);
        power = power * a;
    }
}

QMatrix evaluate(const UPoly& p, const QMatrix& a) {
    require_square(a, "evaluate");
    QMatrix acc(a.rows(), a.cols());
    for (auto it = p.coeffs.rbegin(); it != p.coeffs.rend(); ++it) acc = acc * a + QMatrix::scalar(a.rows(), *it);
    return acc;
}

MatTuple MatTuple::scalars(std::span<const Rat> values) {
    MatTuple x{1, {}};
    for (const auto& v : values) x.mats.push_back(QMatrix::scalar(1, v));
    return x;
}

void check_tuple(const MatTuple& x) {
    for (const auto& m : x.mats)
        if (m.rows() != x.n || m.cols() != x.n)
            throw DimensionMismatch("matrix tuple entry is " + shape(m) + ", expected " + std::to_string(x.n) + "x" +
                                    std::to_string(x.n));
}

MatTuple direct_sum(const MatTuple& x, const MatTuple& y) {
    if (x.g() != y.g()) throw DimensionMismatch("direct sum of tuples with different variable counts");
    MatTuple s{x.n + y.n, {}};
    for (std::size_t j = 0; j < x.g(); ++j) s.mats.push_back(direct_sum(x[j], y[j]));
    return s;
}

MatTuple ampliate(const MatTuple& x, std::size_t copies) {
    MatTuple s{x.n * copies, {}};
    const QMatrix id = QMatrix::identity(copies);
    for (const auto& m : x.mats) s.mats.push_back(kron(id, m));
    return s;
}

MatTuple conjugate(const MatTuple& x, const QMatrix& s) {
    const QMatrix s_inv = inverse(s);
    MatTuple c{x.n, {}};
    for (const auto& m : x.mats) c.mats.push_back(s * m * s_inv);
    return c;
}

MatTuple translate(const MatTuple& x, std::span<const Rat> alpha) {
    if (alpha.size() != x.g()) throw DimensionMismatch("translation vector length differs from variable count");
    MatTuple t{x.n, {}};
    for (std::size_t j = 0; j < x.g(); ++j) t.mats.push_back(x[j] - QMatrix::scalar(x.n, alpha[j]));
    return t;
}

}  // namespace ncdomain
