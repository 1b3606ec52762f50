#pragma once

#include <gmpxx.h>

#include <cassert>
#include <string>
#include <vector>

namespace latcode {

using Int = mpz_class;
using Rat = mpq_class;

// Small dense column-major-indexed matrix; all arithmetic exact.
template <typename T>
struct Mat {
    int rows = 0, cols = 0;
    std::vector<T> a;

    Mat() = default;
    Mat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}

    T& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    const T& operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

    bool operator==(const Mat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }

    std::vector<T> col(int j) const {
        std::vector<T> v(rows);
        for (int i = 0; i < rows; ++i) v[i] = (*this)(i, j);
        return v;
    }
    void set_col(int j, const std::vector<T>& v) {
        for (int i = 0; i < rows; ++i) (*this)(i, j) = v[i];
    }

    static Mat identity(int n) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }
};

using ZMat = Mat<Int>;
using QMat = Mat<Rat>;
using ZVec = std::vector<Int>;
using QVec = std::vector<Rat>;

QMat to_rational(const ZMat& m);
// Fails with std::invalid_argument if any entry is non-integer.
ZMat to_integer(const QMat& m);
bool is_integer_matrix(const QMat& m);

template <typename T>
Mat<T> transpose(const Mat<T>& m) {
    Mat<T> t(m.cols, m.rows);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) t(j, i) = m(i, j);
    return t;
}

template <typename T>
Mat<T> matmul(const Mat<T>& x, const Mat<T>& y) {
    assert(x.cols == y.rows);
    Mat<T> r(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) {
            if (x(i, k) == 0) continue;
            for (int j = 0; j < y.cols; ++j) r(i, j) += x(i, k) * y(k, j);
        }
    return r;
}

template <typename T>
std::vector<T> matvec(const Mat<T>& m, const std::vector<T>& v) {
    assert(static_cast<int>(v.size()) == m.cols);
    std::vector<T> r(m.rows);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) r[i] += m(i, j) * v[j];
    return r;
}

// Gram matrix BᵀB.
QMat gram(const QMat& b);

Rat dot(const QVec& x, const QVec& y);

// Exact determinant by fraction elimination.
Rat det(const QMat& m);
Int det(const ZMat& m);

int rank_rational(QMat m);

// Solves A x = b for square nonsingular A; throws std::invalid_argument otherwise.
QVec solve(const QMat& a, const QVec& b);
QMat inverse(const QMat& a);

// G = Rᵀ diag(d) R with R unit upper triangular; requires G symmetric positive
// definite (throws otherwise). Used for exact lattice point enumeration.
struct Ldl {
    QVec d;
    QMat r;
};
Ldl ldl_decompose(const QMat& g);

std::string rat_to_string(const Rat& q);
Rat rat_from_string(const std::string& s);

// sqrt with ~64 fractional bits of precision, suitable for display/doubles
double sqrt_to_double(const Rat& q);

Int floor_rat(const Rat& q);
Int ceil_rat(const Rat& q);

// Largest integer c with (c + t)^2 <= bound (requires one to exist) and the
// smallest such c; empty range reported via ok=false.
struct IntRange {
    bool ok = false;
    Int lo, hi;
};
IntRange integer_range_quadratic(const Rat& t, const Rat& bound);

} // namespace latcode
