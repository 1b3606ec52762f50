#include "latcode/rational.hpp"

#include <stdexcept>

namespace latcode {

QMat to_rational(const ZMat& m) {
    QMat q(m.rows, m.cols);
    for (size_t i = 0; i < m.a.size(); ++i) q.a[i] = m.a[i];
    return q;
}

bool is_integer_matrix(const QMat& m) {
    for (const auto& x : m.a)
        if (x.get_den() != 1) return false;
    return true;
}

ZMat to_integer(const QMat& m) {
    ZMat z(m.rows, m.cols);
    for (size_t i = 0; i < m.a.size(); ++i) {
        if (m.a[i].get_den() != 1) throw std::invalid_argument("matrix entry is not an integer");
        z.a[i] = m.a[i].get_num();
    }
    return z;
}

QMat gram(const QMat& b) {
    QMat g(b.cols, b.cols);
    for (int i = 0; i < b.cols; ++i)
        for (int j = i; j < b.cols; ++j) {
            Rat s;
            for (int k = 0; k < b.rows; ++k) s += b(k, i) * b(k, j);
            g(i, j) = s;
            g(j, i) = s;
        }
    return g;
}

Rat dot(const QVec& x, const QVec& y) {
    Rat s;
    for (size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

Rat det(const QMat& m) {
    if (m.rows != m.cols) throw std::invalid_argument("det of non-square matrix");
    QMat a = m;
    int n = a.rows;
    Rat d = 1;
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        for (int r = c; r < n; ++r)
            if (a(r, c) != 0) { piv = r; break; }
        if (piv < 0) return Rat(0);
        if (piv != c) {
            for (int j = c; j < n; ++j) std::swap(a(piv, j), a(c, j));
            d = -d;
        }
        d *= a(c, c);
        Rat inv = 1 / a(c, c);
        for (int r = c + 1; r < n; ++r) {
            if (a(r, c) == 0) continue;
            Rat f = a(r, c) * inv;
            for (int j = c; j < n; ++j) a(r, j) -= f * a(c, j);
        }
    }
    return d;
}

Int det(const ZMat& m) {
    Rat d = det(to_rational(m));
    if (d.get_den() != 1) throw std::logic_error("integer determinant not integral");
    return d.get_num();
}

int rank_rational(QMat a) {
    int n = a.rows, m = a.cols, rank = 0;
    for (int c = 0; c < m && rank < n; ++c) {
        int piv = -1;
        for (int r = rank; r < n; ++r)
            if (a(r, c) != 0) { piv = r; break; }
        if (piv < 0) continue;
        if (piv != rank)
            for (int j = 0; j < m; ++j) std::swap(a(piv, j), a(rank, j));
        Rat inv = 1 / a(rank, c);
        for (int r = rank + 1; r < n; ++r) {
            if (a(r, c) == 0) continue;
            Rat f = a(r, c) * inv;
            for (int j = c; j < m; ++j) a(r, j) -= f * a(rank, j);
        }
        ++rank;
    }
    return rank;
}

QVec solve(const QMat& a0, const QVec& b0) {
    if (a0.rows != a0.cols || static_cast<int>(b0.size()) != a0.rows)
        throw std::invalid_argument("solve: shape mismatch");
    int n = a0.rows;
    QMat a = a0;
    QVec b = b0;
    std::vector<int> perm(n);
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        for (int r = c; r < n; ++r)
            if (a(r, c) != 0) { piv = r; break; }
        if (piv < 0) throw std::invalid_argument("solve: singular matrix");
        if (piv != c) {
            for (int j = 0; j < n; ++j) std::swap(a(piv, j), a(c, j));
            std::swap(b[piv], b[c]);
        }
        Rat inv = 1 / a(c, c);
        for (int r = c + 1; r < n; ++r) {
            if (a(r, c) == 0) continue;
            Rat f = a(r, c) * inv;
            for (int j = c; j < n; ++j) a(r, j) -= f * a(c, j);
            b[r] -= f * b[c];
        }
    }
    QVec x(n);
    for (int i = n - 1; i >= 0; --i) {
        Rat s = b[i];
        for (int j = i + 1; j < n; ++j) s -= a(i, j) * x[j];
        x[i] = s / a(i, i);
    }
    return x;
}

QMat inverse(const QMat& a) {
    int n = a.rows;
    QMat inv(n, n);
    for (int j = 0; j < n; ++j) {
        QVec e(n);
        e[j] = 1;
        QVec x = solve(a, e);
        for (int i = 0; i < n; ++i) inv(i, j) = x[i];
    }
    return inv;
}

Ldl ldl_decompose(const QMat& g) {
    int n = g.rows;
    QMat a = g;
    Ldl res;
    res.d.assign(n, Rat(0));
    res.r = QMat::identity(n);
    for (int i = 0; i < n; ++i) {
        if (a(i, i) <= 0) throw std::invalid_argument("ldl: matrix not positive definite");
        res.d[i] = a(i, i);
        for (int j = i + 1; j < n; ++j) res.r(i, j) = a(i, j) / a(i, i);
        for (int r = i + 1; r < n; ++r)
            for (int c = i + 1; c < n; ++c) a(r, c) -= res.d[i] * res.r(i, r) * res.r(i, c);
    }
    return res;
}

std::string rat_to_string(const Rat& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rat rat_from_string(const std::string& s) {
    Rat q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
    q.canonicalize();
    return q;
}

double sqrt_to_double(const Rat& q) {
    if (q < 0) throw std::invalid_argument("sqrt of negative rational");
    mpf_class f(q, 192);
    mpf_class r(0, 192);
    mpf_sqrt(r.get_mpf_t(), f.get_mpf_t());
    return r.get_d();
}

Int floor_rat(const Rat& q) {
    Int r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return r;
}

Int ceil_rat(const Rat& q) {
    Int r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return r;
}

IntRange integer_range_quadratic(const Rat& t, const Rat& bound) {
    IntRange res;
    if (bound < 0) return res;
    // guess via 192-bit floats, then correct exactly; the guesses are within
    // one of the truth so the fix-up loops run O(1) times
    mpf_class bf(bound, 192), s(0, 192);
    mpf_sqrt(s.get_mpf_t(), bf.get_mpf_t());
    mpf_class tf(t, 192);
    mpf_class lof = -tf - s, hif = -tf + s;
    Int lo(static_cast<long>(0)), hi(static_cast<long>(0));
    mpz_set_f(lo.get_mpz_t(), lof.get_mpf_t());
    mpz_set_f(hi.get_mpz_t(), hif.get_mpf_t());
    lo -= 2;
    hi += 2;
    auto sat = [&](const Int& c) {
        Rat y = Rat(c) + t;
        return y * y <= bound;
    };
    while (lo <= hi && !sat(lo)) ++lo;
    while (hi >= lo && !sat(hi)) --hi;
    if (lo > hi) return res;
    res.ok = true;
    res.lo = lo;
    res.hi = hi;
    return res;
}

} // namespace latcode
