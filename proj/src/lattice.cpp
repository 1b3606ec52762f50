#include "latcode/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace latcode {

namespace {

void negate_col(ZMat& a, int j) {
    for (int i = 0; i < a.rows; ++i) a(i, j) = -a(i, j);
}

void axpy_col(ZMat& a, int dst, int src, const Int& q) {
    if (q == 0) return;
    for (int i = 0; i < a.rows; ++i) a(i, dst) -= q * a(i, src);
}

void swap_cols(ZMat& a, int x, int y) {
    if (x == y) return;
    for (int i = 0; i < a.rows; ++i) std::swap(a(i, x), a(i, y));
}

Int floor_div(const Int& a, const Int& b) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

// gcd-eliminate row i among columns [0, c_hi]; afterwards exactly one column
// in that range is nonzero at row i (assuming one was); returns its index
int eliminate_row(ZMat& a, int i, int c_hi) {
    for (;;) {
        int nz = -1;
        for (int j = 0; j <= c_hi; ++j) {
            if (a(i, j) == 0) continue;
            if (nz < 0 || cmp(abs(a(i, j)), abs(a(i, nz))) < 0) nz = j;
        }
        if (nz < 0) return -1;
        bool more = false;
        for (int j = 0; j <= c_hi; ++j) {
            if (j == nz || a(i, j) == 0) continue;
            Int q = floor_div(a(i, j), a(i, nz));
            axpy_col(a, j, nz, q);
            if (a(i, j) != 0) more = true;
        }
        if (!more) return nz;
    }
}

} // namespace

bool is_hnf(const ZMat& a, std::vector<int>* pivot_rows) {
    int n = a.rows, m = a.cols;
    std::vector<int> piv;
    for (int j = 0; j < m; ++j) {
        int last = -1;
        for (int i = 0; i < n; ++i)
            if (a(i, j) != 0) last = i;
        if (last < 0) return false;
        if (!piv.empty() && last <= piv.back()) return false;
        if (a(last, j) <= 0) return false;
        piv.push_back(last);
    }
    for (int j = 0; j < m; ++j)
        for (int l = j + 1; l < m; ++l)
            if (a(piv[j], l) < 0 || a(piv[j], l) >= a(piv[j], j)) return false;
    if (pivot_rows) *pivot_rows = piv;
    return true;
}

HnfMatrix hnf(const ZMat& m0) {
    ZMat a = m0;
    int n = a.rows, m = a.cols;
    std::vector<int> piv(m, -1);
    int row_limit = n - 1;
    for (int c = m - 1; c >= 0; --c) {
        int i = -1;
        for (int r = row_limit; r >= 0 && i < 0; --r)
            for (int j = 0; j <= c; ++j)
                if (a(r, j) != 0) { i = r; break; }
        if (i < 0) throw std::invalid_argument("hnf: rank-deficient input");
        int u = eliminate_row(a, i, c);
        swap_cols(a, u, c);
        if (a(i, c) < 0) negate_col(a, c);
        piv[c] = i;
        row_limit = i - 1;
    }
    // reduce pivot-row entries to the right of each pivot
    for (int l = 1; l < m; ++l)
        for (int j = l - 1; j >= 0; --j) {
            Int q = floor_div(a(piv[j], l), a(piv[j], j));
            axpy_col(a, l, j, q);
        }
    HnfMatrix h{std::move(a), std::move(piv)};
    std::vector<int> check;
    if (!is_hnf(h.m, &check) || check != h.pivot_rows) throw std::logic_error("hnf: postcondition failed");
    return h;
}

ZMat hnf_standard_convention(const ZMat& m) {
    auto rev = [](const ZMat& x) {
        ZMat r(x.rows, x.cols);
        for (int i = 0; i < x.rows; ++i)
            for (int j = 0; j < x.cols; ++j) r(i, j) = x(x.rows - 1 - i, x.cols - 1 - j);
        return r;
    };
    return rev(hnf(rev(m)).m);
}

ZMat integer_kernel(const ZMat& a0) {
    ZMat a = a0;
    int cols = a.cols;
    ZMat v = ZMat::identity(cols);
    int used = 0;
    for (int r = 0; r < a.rows && used < cols; ++r) {
        // gcd-eliminate row r among the free columns [used, cols)
        for (;;) {
            int nz = -1;
            for (int j = used; j < cols; ++j) {
                if (a(r, j) == 0) continue;
                if (nz < 0 || cmp(abs(a(r, j)), abs(a(r, nz))) < 0) nz = j;
            }
            if (nz < 0) break;
            bool more = false;
            for (int j = used; j < cols; ++j) {
                if (j == nz || a(r, j) == 0) continue;
                Int q = floor_div(a(r, j), a(r, nz));
                axpy_col(a, j, nz, q);
                axpy_col(v, j, nz, q);
                if (a(r, j) != 0) more = true;
            }
            if (!more) {
                swap_cols(a, nz, used);
                swap_cols(v, nz, used);
                ++used;
                break;
            }
        }
    }
    ZMat k(cols, cols - used);
    for (int i = 0; i < cols; ++i)
        for (int j = used; j < cols; ++j) k(i, j - used) = v(i, j);
    return k;
}

ZMat unimodular_completion(const ZMat& m) {
    int n = m.rows, k = m.cols;
    if (k > n) throw std::invalid_argument("unimodular_completion: too many columns");
    // row-reduce with a tracked unimodular U so that U m = [T; 0]
    ZMat a = m;
    ZMat u = ZMat::identity(n);
    auto axpy_row = [](ZMat& x, int dst, int src, const Int& q) {
        if (q == 0) return;
        for (int j = 0; j < x.cols; ++j) x(dst, j) -= q * x(src, j);
    };
    auto swap_rows = [](ZMat& x, int r1, int r2) {
        if (r1 == r2) return;
        for (int j = 0; j < x.cols; ++j) std::swap(x(r1, j), x(r2, j));
    };
    for (int c = 0; c < k; ++c) {
        for (;;) {
            int nz = -1;
            for (int r = c; r < n; ++r) {
                if (a(r, c) == 0) continue;
                if (nz < 0 || cmp(abs(a(r, c)), abs(a(nz, c))) < 0) nz = r;
            }
            if (nz < 0) throw std::invalid_argument("unimodular_completion: rank-deficient input");
            bool more = false;
            for (int r = c; r < n; ++r) {
                if (r == nz || a(r, c) == 0) continue;
                Int q = floor_div(a(r, c), a(nz, c));
                axpy_row(a, r, nz, q);
                axpy_row(u, r, nz, q);
                if (a(r, c) != 0) more = true;
            }
            if (!more) {
                swap_rows(a, nz, c);
                swap_rows(u, nz, c);
                break;
            }
        }
    }
    Int d = 1;
    for (int c = 0; c < k; ++c) d *= a(c, c);
    if (abs(d) != 1) throw std::invalid_argument("unimodular_completion: input not primitive");
    QMat uinv = inverse(to_rational(u));
    ZMat q(n, n - k);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n - k; ++j) {
            if (uinv(i, k + j).get_den() != 1) throw std::logic_error("unimodular inverse not integral");
            q(i, j) = uinv(i, k + j).get_num();
        }
    return q;
}

// ---------------------------------------------------------------------------

Lattice Lattice::from_basis(QMat basis) {
    Lattice l;
    l.ambient_ = basis.rows;
    l.rank_ = basis.cols;
    l.gram_ = latcode::gram(basis);
    l.vol2_ = det(l.gram_);
    if (l.rank_ == 0 || l.vol2_ <= 0)
        throw std::invalid_argument("Lattice: basis must have full column rank");
    l.integral_ = is_integer_matrix(basis);
    l.basis_ = std::move(basis);
    return l;
}

Lattice Lattice::from_integer_basis(const ZMat& basis) { return from_basis(to_rational(basis)); }

Lattice Lattice::from_gram(int ambient_dim, QMat g) {
    if (g.rows != g.cols) throw std::invalid_argument("Lattice: gram must be square");
    Lattice l;
    l.ambient_ = ambient_dim;
    l.rank_ = g.rows;
    ldl_decompose(g); // throws unless positive definite
    l.vol2_ = det(g);
    l.gram_ = std::move(g);
    l.integral_ = false;
    return l;
}

const QMat& Lattice::basis() const {
    if (!basis_) throw std::invalid_argument("Lattice: operation requires an explicit basis");
    return *basis_;
}

ZMat Lattice::integer_basis() const {
    if (!integral_) throw std::invalid_argument("Lattice: not integral");
    return to_integer(basis());
}

double Lattice::volume() const { return sqrt_to_double(vol2_); }

Rat Lattice::norm2_of_coeffs(const ZVec& c) const {
    Rat s;
    for (int i = 0; i < rank_; ++i) {
        if (c[i] == 0) continue;
        for (int j = 0; j < rank_; ++j) {
            if (c[j] == 0) continue;
            s += Rat(c[i]) * Rat(c[j]) * gram_(i, j);
        }
    }
    return s;
}

QVec Lattice::coords_of_coeffs(const ZVec& c) const {
    const QMat& b = basis();
    QVec r(ambient_);
    for (int i = 0; i < ambient_; ++i)
        for (int j = 0; j < rank_; ++j) r[i] += b(i, j) * Rat(c[j]);
    return r;
}

Lattice Lattice::scaled(const Rat& c) const {
    if (c <= 0) throw std::invalid_argument("Lattice::scaled: factor must be positive");
    if (basis_) {
        QMat b = *basis_;
        for (auto& x : b.a) x *= c;
        return from_basis(std::move(b));
    }
    QMat g = gram_;
    for (auto& x : g.a) x *= c * c;
    return from_gram(ambient_, std::move(g));
}

bool lattice_equal(const Lattice& a, const Lattice& b) {
    if (a.ambient_dim() != b.ambient_dim() || a.rank() != b.rank()) return false;
    Int scale = 1;
    for (const auto& x : a.basis().a) scale = lcm(scale, x.get_den());
    for (const auto& x : b.basis().a) scale = lcm(scale, x.get_den());
    auto scaled_int = [&](const Lattice& l) {
        QMat q = l.basis();
        for (auto& x : q.a) x *= Rat(scale);
        return to_integer(q);
    };
    return hnf(scaled_int(a)) == hnf(scaled_int(b));
}

Lattice primitive_closure(const Lattice& l) {
    if (!l.integral()) throw std::invalid_argument("primitive_closure: lattice must be integral");
    int n = l.ambient_dim();
    if (l.rank() == n) return Lattice::from_integer_basis(ZMat::identity(n));
    ZMat perp = integer_kernel(transpose(l.integer_basis()));
    ZMat closure = integer_kernel(transpose(perp));
    return Lattice::from_integer_basis(hnf(closure).m);
}

bool is_primitive(const Lattice& l) { return lattice_equal(l, primitive_closure(l)); }

Lattice polar(const Lattice& l) {
    // B (B^T B)^{-1}: spans the same subspace, pairs integrally with L
    QMat b = l.basis();
    QMat ginv = inverse(l.gram());
    return Lattice::from_basis(matmul(b, ginv));
}

Lattice orthogonal(const Lattice& l) {
    if (!l.integral()) throw std::invalid_argument("orthogonal: lattice must be integral");
    if (l.rank() >= l.ambient_dim())
        throw std::invalid_argument("orthogonal: rank must be below ambient dimension");
    if (!is_primitive(l)) throw std::invalid_argument("orthogonal: lattice must be primitive");
    ZMat k = integer_kernel(transpose(l.integer_basis()));
    return Lattice::from_integer_basis(hnf(k).m);
}

Lattice factor(const Lattice& l) {
    if (!l.integral() || !is_primitive(l))
        throw std::invalid_argument("factor: lattice must be a primitive integral lattice");
    if (l.rank() >= l.ambient_dim())
        throw std::invalid_argument("factor: rank must be below ambient dimension");
    return polar(orthogonal(l));
}

QMat complement_projector(const QMat& basis, int ambient_dim) {
    QMat p = QMat::identity(ambient_dim);
    if (basis.cols == 0) return p;
    QMat g = gram(basis);
    QMat m = matmul(matmul(basis, inverse(g)), transpose(basis));
    for (int i = 0; i < ambient_dim; ++i)
        for (int j = 0; j < ambient_dim; ++j) p(i, j) -= m(i, j);
    return p;
}

bool lattice_contains_point(const Lattice& l, const QVec& point) {
    const QMat& b = l.basis();
    QVec bt_y(l.rank());
    for (int j = 0; j < l.rank(); ++j)
        for (int i = 0; i < l.ambient_dim(); ++i) bt_y[j] += b(i, j) * point[i];
    QVec c = solve(l.gram(), bt_y);
    for (const auto& x : c)
        if (x.get_den() != 1) return false;
    // confirm the point actually lies in the span
    QVec back(l.ambient_dim());
    for (int i = 0; i < l.ambient_dim(); ++i)
        for (int j = 0; j < l.rank(); ++j) back[i] += b(i, j) * c[j];
    return back == point;
}

// ---------------------------------------------------------------------------

std::vector<LatticePoint> enumerate_points(const Lattice& l, const QVec& center, const Rat& r2,
                                           std::uint64_t budget) {
    if (r2 < 0) throw std::invalid_argument("enumerate_points: negative squared radius");
    int m = l.rank();
    QVec w(m, Rat(0));
    Rat rho2;
    if (!center.empty()) {
        const QMat& b = l.basis();
        if (static_cast<int>(center.size()) != l.ambient_dim())
            throw std::invalid_argument("enumerate_points: center has wrong dimension");
        QVec bt_z(m);
        for (int j = 0; j < m; ++j)
            for (int i = 0; i < l.ambient_dim(); ++i) bt_z[j] += b(i, j) * center[i];
        w = solve(l.gram(), bt_z);
        Rat z2 = dot(center, center);
        Rat wgw;
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) wgw += w[i] * l.gram()(i, j) * w[j];
        rho2 = z2 - wgw; // distance^2 from center to span(L)
        if (rho2 > r2) return {};
    }
    Ldl f = ldl_decompose(l.gram());
    Budget guard(budget);

    std::vector<LatticePoint> out;
    ZVec c(m);
    QVec partial(m + 1); // partial[i] = sum_{l >= i} d_l y_l^2
    // recursion from the last coordinate inward
    auto rec = [&](auto&& self, int i) -> void {
        if (i < 0) {
            out.push_back(LatticePoint{c, rho2 + partial[0]});
            return;
        }
        Rat s; // sum_{j > i} R_ij (c_j - w_j)
        for (int j = i + 1; j < m; ++j) s += f.r(i, j) * (Rat(c[j]) - w[j]);
        Rat budget_i = (r2 - rho2) - partial[i + 1];
        if (budget_i < 0) return;
        IntRange range = integer_range_quadratic(s - w[i], budget_i / f.d[i]);
        if (!range.ok) return;
        for (Int ci = range.lo; ci <= range.hi; ++ci) {
            guard.tick("enumerate_points");
            c[i] = ci;
            Rat y = Rat(ci) - w[i] + s;
            partial[i] = partial[i + 1] + f.d[i] * y * y;
            self(self, i - 1);
        }
        c[i] = 0;
    };
    rec(rec, m - 1);
    std::sort(out.begin(), out.end(),
              [](const LatticePoint& a, const LatticePoint& b) { return a.coeffs < b.coeffs; });
    return out;
}

std::vector<LatticePoint> enumerate_points(const Lattice& l, const Rat& r2, std::uint64_t budget) {
    return enumerate_points(l, QVec{}, r2, budget);
}

double ball_volume(int d, double r) {
    if (d < 0) throw std::invalid_argument("ball_volume: negative dimension");
    if (d == 0) return 1.0;
    if (r <= 0) return 0.0;
    return std::pow(M_PI, d / 2.0) / std::tgamma(d / 2.0 + 1.0) * std::pow(r, d);
}

LatticePoint shortest_vector(const Lattice& l, std::uint64_t budget) {
    if (l.rank() < 1) throw std::invalid_argument("shortest_vector: empty lattice");
    Rat radius2 = l.gram()(0, 0);
    for (int i = 1; i < l.rank(); ++i) radius2 = std::min(radius2, l.gram()(i, i));
    auto pts = enumerate_points(l, radius2, budget);
    const LatticePoint* best = nullptr;
    for (auto& p : pts) {
        bool zero = std::all_of(p.coeffs.begin(), p.coeffs.end(), [](const Int& x) { return x == 0; });
        if (zero) continue;
        // canonical sign: first nonzero coefficient positive
        for (auto& x : p.coeffs)
            if (x != 0) {
                if (x < 0)
                    for (auto& y : p.coeffs) y = -y;
                break;
            }
        if (!best || p.norm2 < best->norm2 ||
            (p.norm2 == best->norm2 && p.coeffs < best->coeffs))
            best = &p;
    }
    if (!best) throw std::logic_error("shortest_vector: basis vector not found in its own ball");
    return *best;
}

RankinResult rankin(const Lattice& l, int m, std::optional<Rat> radius2, std::uint64_t budget) {
    int n = l.rank();
    if (m < 1 || m > n) throw std::invalid_argument("rankin: need 1 <= m <= rank");
    RankinResult res;
    res.n = n;
    res.m = m;
    res.vol2 = l.vol2();

    if (m == n) {
        // any n independent lattice vectors generate a finite-index sublattice,
        // so the minimum is vol(L) itself
        res.min_vol2 = res.vol2;
        res.value = 1.0;
        res.certified = true;
        res.witness = ZMat::identity(n);
        res.radius2 = 0;
        return res;
    }

    Rat r2;
    if (radius2) {
        r2 = *radius2;
    } else {
        // heuristic default (2 sqrt(m) vol^{1/n})^2, rounded up to a rational
        double v = 4.0 * m * std::pow(res.vol2.get_d(), 1.0 / n);
        r2 = Rat(Int(static_cast<long>(std::ceil(v * 1024) + 1)), Int(1024));
        r2.canonicalize();
    }

    std::vector<LatticePoint> pts;
    for (int attempt = 0;; ++attempt) {
        pts = enumerate_points(l, r2, budget);
        std::erase_if(pts, [](const LatticePoint& p) {
            return std::all_of(p.coeffs.begin(), p.coeffs.end(), [](const Int& x) { return x == 0; });
        });
        if (!pts.empty() || radius2) break;
        if (attempt >= 12) throw resource_error("rankin: radius growth", 12, attempt);
        r2 *= 4; // guaranteed to eventually contain a nonzero vector
    }
    res.radius2 = r2;
    // keep one representative per +/- pair
    std::erase_if(pts, [](const LatticePoint& p) {
        for (const auto& x : p.coeffs) {
            if (x > 0) return false;
            if (x < 0) return true;
        }
        return false;
    });
    std::sort(pts.begin(), pts.end(), [](const LatticePoint& a, const LatticePoint& b) {
        if (a.norm2 != b.norm2) return a.norm2 < b.norm2;
        return a.coeffs < b.coeffs;
    });
    if (static_cast<int>(pts.size()) < m)
        throw std::invalid_argument("rankin: not enough lattice vectors within radius; increase it");

    Budget guard(budget);
    std::vector<int> pick(m);
    bool found = false;
    Rat best;
    std::vector<int> best_pick;
    QMat sub(m, m);
    auto rec = [&](auto&& self, int depth, int start) -> void {
        if (depth == m) {
            guard.tick("rankin tuples");
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j) {
                    Rat s;
                    const ZVec& ci = pts[pick[i]].coeffs;
                    const ZVec& cj = pts[pick[j]].coeffs;
                    for (int a = 0; a < n; ++a) {
                        if (ci[a] == 0) continue;
                        for (int b = 0; b < n; ++b) {
                            if (cj[b] == 0) continue;
                            s += Rat(ci[a]) * Rat(cj[b]) * l.gram()(a, b);
                        }
                    }
                    sub(i, j) = s;
                }
            Rat v2 = det(sub);
            if (v2 <= 0) return;
            if (!found || v2 < best) {
                found = true;
                best = v2;
                best_pick.assign(pick.begin(), pick.end());
            }
            return;
        }
        for (int i = start; i < static_cast<int>(pts.size()); ++i) {
            pick[depth] = i;
            self(self, depth + 1, i + 1);
        }
    };
    rec(rec, 0, 0);
    if (!found)
        throw std::invalid_argument("rankin: no m-tuple of nonzero volume within radius; increase it");

    res.min_vol2 = best;
    res.witness = ZMat(n, m);
    for (int j = 0; j < m; ++j)
        for (int i = 0; i < n; ++i) res.witness(i, j) = pts[best_pick[j]].coeffs[i];
    res.value = res.min_vol2.get_d() / std::pow(res.vol2.get_d(), double(m) / n);
    res.certified = (m == 1); // self-shrinking radius: the minimum lies inside the searched ball
    return res;
}

Rat voronoi_diameter2_bound(const Lattice& l) {
    Rat sum;
    for (int i = 0; i < l.rank(); ++i) sum += l.gram()(i, i);
    return Rat(l.rank()) * sum;
}

} // namespace latcode
