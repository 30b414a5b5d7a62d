#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

#include "ncdomain/rational.hpp"

namespace ncdomain {

// Dense row-major matrix over Q. Value type; all operations return new matrices.
class QMatrix {
public:
    QMatrix() = default;
    QMatrix(std::size_t rows, std::size_t cols);
    QMatrix(std::initializer_list<std::initializer_list<Rat>> rows);

    static QMatrix identity(std::size_t n);
    static QMatrix zero(std::size_t rows, std::size_t cols) { return QMatrix(rows, cols); }
    static QMatrix scalar(std::size_t n, const Rat& value);
    static QMatrix column(std::span<const Rat> entries);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    Rat& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rat& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<const Rat> entries() const { return data_; }

    QMatrix transpose() const;
    bool is_zero() const;

    QMatrix block(std::size_t row, std::size_t col, std::size_t nrows, std::size_t ncols) const;
    void set_block(std::size_t row, std::size_t col, const QMatrix& b);

    QMatrix col(std::size_t j) const { return block(0, j, rows_, 1); }
    std::vector<Rat> col_vector(std::size_t j) const;

    friend bool operator==(const QMatrix& a, const QMatrix& b) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rat> data_;
};

QMatrix operator+(const QMatrix& a, const QMatrix& b);
QMatrix operator-(const QMatrix& a, const QMatrix& b);
QMatrix operator-(const QMatrix& a);
QMatrix operator*(const QMatrix& a, const QMatrix& b);
QMatrix operator*(const Rat& s, const QMatrix& a);

QMatrix inverse(const QMatrix& a);
std::optional<QMatrix> try_inverse(const QMatrix& a);
Rat det(const QMatrix& a);
std::size_t rank(const QMatrix& a);

// Columns span the right kernel of a.
QMatrix kernel_basis(const QMatrix& a);

// A particular solution x of a*x = rhs (free variables set to zero). Throws InconsistentSystem.
QMatrix solve(const QMatrix& a, const QMatrix& rhs);

// Reduced row echelon form; pivot columns are reported in order.
struct Echelon {
    QMatrix reduced;
    std::vector<std::size_t> pivots;
};
Echelon row_reduce(const QMatrix& a);

// Block (i,j) of kron(a, b) is a(i,j)*b.
QMatrix kron(const QMatrix& a, const QMatrix& b);
QMatrix direct_sum(const QMatrix& a, const QMatrix& b);

// Incremental linear-independence bookkeeping over Q^dim.
class SpanTracker {
public:
    explicit SpanTracker(std::size_t dim) : dim_(dim) {}

    // Adds v if it is independent of everything added so far; returns whether it was added.
    bool add(std::span<const Rat> v);
    bool contains(std::span<const Rat> v) const;
    std::size_t rank() const { return rows_.size(); }

private:
    std::vector<Rat> reduce(std::span<const Rat> v) const;

    std::size_t dim_;
    std::vector<std::vector<Rat>> rows_;
    std::vector<std::size_t> pivot_of_row_;
};

// Univariate polynomial over Q, coefficients from the constant term upward.
struct UPoly {
    std::vector<Rat> coeffs;

    std::size_t degree() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }
    friend bool operator==(const UPoly&, const UPoly&) = default;
};

// Monic polynomial of least degree annihilating a square matrix (Krylov iteration on its powers).
UPoly min_poly(const QMatrix& a);
QMatrix evaluate(const UPoly& p, const QMatrix& a);

// A g-tuple of n x n matrices: an evaluation point.
struct MatTuple {
    std::size_t n = 0;
    std::vector<QMatrix> mats;

    std::size_t g() const { return mats.size(); }
    const QMatrix& operator[](std::size_t j) const { return mats[j]; }

    static MatTuple scalars(std::span<const Rat> values);
    friend bool operator==(const MatTuple&, const MatTuple&) = default;
};

// Validates that every matrix is n x n; throws DimensionMismatch otherwise.
void check_tuple(const MatTuple& x);

MatTuple direct_sum(const MatTuple& x, const MatTuple& y);
// I_l (x) X_j for every j, i.e. l diagonal copies of X.
MatTuple ampliate(const MatTuple& x, std::size_t copies);
// S X_j S^{-1} for every j.
MatTuple conjugate(const MatTuple& x, const QMatrix& s);
// X_j - alpha_j I_n for every j.
MatTuple translate(const MatTuple& x, std::span<const Rat> alpha);

}  // namespace ncdomain
