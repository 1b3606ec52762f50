#include "latcode/counting.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <future>
#include <set>
#include <stdexcept>

namespace latcode {

ColumnChain::ColumnChain(int ambient) : ambient_(ambient), cols_(ambient, 0) {
    if (ambient < 1) throw std::invalid_argument("ColumnChain: ambient must be positive");
}

ColumnChain ColumnChain::extended(int pivot_row, const ZVec& v) const {
    if (static_cast<int>(v.size()) != ambient_)
        throw std::invalid_argument("ColumnChain: column has wrong length");
    if (pivot_row < 0 || pivot_row >= ambient_)
        throw std::invalid_argument("ColumnChain: pivot row out of range");
    if (!pivot_rows_.empty() && pivot_row <= pivot_rows_.back())
        throw std::invalid_argument("ColumnChain: pivot rows must increase");
    if (v[pivot_row] <= 0) throw std::invalid_argument("ColumnChain: pivot entry must be positive");
    for (int i = pivot_row + 1; i < ambient_; ++i)
        if (v[i] != 0) throw std::invalid_argument("ColumnChain: nonzero entry below pivot");
    for (int j = 0; j < length(); ++j) {
        const Int& piv = cols_(pivot_rows_[j], j);
        if (v[pivot_rows_[j]] < 0 || v[pivot_rows_[j]] >= piv)
            throw std::invalid_argument("ColumnChain: pivot-row entry not reduced");
    }

    // |pi(v)|^2 = |v|^2 - proj^T G^{-1} proj with proj = cols^T v
    Rat v2;
    for (const auto& e : v) v2 += Rat(e) * Rat(e);
    Rat plen2 = v2;
    if (length() > 0) {
        QMat b = to_rational(cols_);
        QVec btv(length());
        for (int j = 0; j < length(); ++j)
            for (int i = 0; i < ambient_; ++i) btv[j] += b(i, j) * Rat(v[i]);
        QVec w = solve(gram(b), btv);
        plen2 -= dot(w, btv);
    }
    if (plen2 <= 0) throw std::logic_error("ColumnChain: dependent extension");

    ColumnChain next(*this);
    next.pivot_rows_.push_back(pivot_row);
    ZMat grown(ambient_, length() + 1);
    for (int i = 0; i < ambient_; ++i) {
        for (int j = 0; j < length(); ++j) grown(i, j) = cols_(i, j);
        grown(i, length()) = v[i];
    }
    next.cols_ = std::move(grown);
    next.proj_len2_.push_back(plen2);
    next.vol2_ = vol2_ * plen2;
    return next;
}

HnfMatrix ColumnChain::to_hnf() const {
    std::vector<int> piv;
    if (!is_hnf(cols_, &piv) || piv != pivot_rows_)
        throw std::logic_error("ColumnChain: columns are not a Hermite prefix");
    return HnfMatrix{cols_, pivot_rows_};
}

PrimitiveFactorization factorize_primitive(const HnfMatrix& m) {
    int rows = m.m.rows, k = m.m.cols;
    Lattice lat = Lattice::from_integer_basis(m.m);
    Lattice closure = primitive_closure(lat);
    HnfMatrix m_kp = hnf(closure.integer_basis());
    if (m_kp.pivot_rows != m.pivot_rows)
        throw std::logic_error("factorize_primitive: pivot rows changed under closure");

    // restrict both to the pivot rows: A = B F with A, B upper triangular
    QMat a(k, k), b(k, k);
    for (int r = 0; r < k; ++r)
        for (int j = 0; j < k; ++j) {
            a(r, j) = Rat(m.m(m.pivot_rows[r], j));
            b(r, j) = Rat(m_kp.m(m.pivot_rows[r], j));
        }
    QMat fq = matmul(inverse(b), a);
    ZMat f = to_integer(fq);
    for (int i = 0; i < k; ++i) {
        if (f(i, i) <= 0) throw std::logic_error("factorize_primitive: diagonal not positive");
        for (int j = 0; j < i; ++j)
            if (f(i, j) != 0) throw std::logic_error("factorize_primitive: not upper triangular");
    }
    ZMat recon = matmul(m_kp.m, f);
    if (!(recon == m.m)) throw std::logic_error("factorize_primitive: reconstruction failed");
    Int d = 1;
    for (int i = 0; i < k; ++i) d *= f(i, i);
    (void)rows;
    return PrimitiveFactorization{std::move(m_kp), std::move(f), std::move(d)};
}

namespace {

ZVec pad_to(const ZVec& v, int n) {
    ZVec out(n);
    std::copy(v.begin(), v.end(), out.begin());
    return out;
}

// Reduce the entries of v at the chain's pivot rows into [0, pivot), from the
// last column down; subtracting column j only touches rows <= i_j.
void hermite_reduce(ZVec& v, const ZMat& cols, const std::vector<int>& pivots) {
    for (int j = static_cast<int>(pivots.size()) - 1; j >= 0; --j) {
        const Int& piv = cols(pivots[j], j);
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), v[pivots[j]].get_mpz_t(), piv.get_mpz_t());
        if (q == 0) continue;
        for (int i = 0; i <= pivots[j]; ++i) v[i] -= q * cols(i, j);
    }
}

} // namespace

std::vector<ZVec> enumerate_extensions(const ColumnChain& chain, int pivot_row, const Rat& r2,
                                       std::uint64_t budget) {
    int a = chain.length() + 1;
    int rows = pivot_row + 1;
    if (!chain.pivot_rows().empty() && pivot_row <= chain.pivot_rows().back())
        throw std::invalid_argument("enumerate_extensions: pivot row must increase");
    if (pivot_row >= chain.ambient())
        throw std::invalid_argument("enumerate_extensions: pivot row out of range");
    if (r2 < 1) return {}; // the projected length is at least 1 for any valid column

    std::vector<ZVec> out;
    if (a == 1) {
        Lattice zn = Lattice::from_integer_basis(ZMat::identity(rows));
        for (const auto& p : enumerate_points(zn, r2, budget)) {
            if (p.coeffs[pivot_row] < 1) continue;
            out.push_back(pad_to(p.coeffs, chain.ambient()));
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    // truncate the chain to the first (pivot_row+1) rows; zeros below pivots
    // mean nothing is lost
    ZMat trunc(rows, a - 1);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < a - 1; ++j) trunc(i, j) = chain.cols()(i, j);
    HnfMatrix mk{trunc, chain.pivot_rows()};
    PrimitiveFactorization pf = factorize_primitive(mk);

    ZMat q = unimodular_completion(pf.m_kp.m);
    QMat proj = complement_projector(to_rational(pf.m_kp.m), rows);
    QMat fb = matmul(proj, to_rational(q)); // factor-lattice basis, with integer preimages q
    Lattice factor_lat = Lattice::from_basis(fb);

    // digit box of the lifts
    std::vector<Int> diag(a - 1);
    for (int j = 0; j < a - 1; ++j) diag[j] = pf.f(j, j);

    auto pts = enumerate_points(factor_lat, r2, budget);
    std::set<ZVec> seen;
    Budget guard(budget);
    for (const auto& pt : pts) {
        // integer preimage of the factor point
        ZVec y0(rows);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < q.cols; ++j) y0[i] += q(i, j) * pt.coeffs[j];
        if (y0[pivot_row] < 1) continue; // projection preserves the pivot coordinate
        hermite_reduce(y0, trunc, chain.pivot_rows());

        // det(F) distinct lifts indexed by digits 0 <= g_j < F_jj
        ZVec digits(a - 1, 0);
        for (;;) {
            guard.tick("enumerate_extensions lifts");
            ZVec w = y0;
            for (int j = 0; j < a - 1; ++j) {
                if (digits[j] == 0) continue;
                for (int i = 0; i < rows; ++i) w[i] += digits[j] * pf.m_kp.m(i, j);
            }
            hermite_reduce(w, trunc, chain.pivot_rows());
            if (!seen.insert(pad_to(w, chain.ambient())).second)
                throw std::logic_error("enumerate_extensions: duplicate lift");
            int j = 0;
            for (; j < a - 1; ++j) {
                if (++digits[j] < diag[j]) break;
                digits[j] = 0;
            }
            if (j == a - 1) break;
        }
    }
    out.assign(seen.begin(), seen.end());
    return out;
}

std::uint64_t count_column_choices(const ColumnChain& chain, int pivot_row, const Rat& r2,
                                   std::uint64_t budget) {
    return enumerate_extensions(chain, pivot_row, r2, budget).size();
}

double column_count_bound(const ColumnChain& chain, int pivot_row, double r) {
    int a = chain.length() + 1;
    int d = (pivot_row + 1) - a + 1;
    return sqrt_to_double(chain.vol2()) * ball_volume(d, r + std::sqrt(double(d)));
}

ColumnPredicate always_true_predicate() {
    return [](const ZVec&) { return true; };
}

ColumnPredicate multiple_of_predicate(const Int& p) {
    return [p](const ZVec& v) {
        for (const auto& x : v)
            if (x % p != 0) return false;
        return true;
    };
}

ColumnPredicate code_consistency_predicate(FpMatrix g) {
    return [g = std::move(g)](const ZVec& v) {
        std::vector<std::uint32_t> r(v.size());
        for (size_t i = 0; i < v.size(); ++i) {
            Int m = v[i] % g.p();
            if (m < 0) m += g.p();
            r[i] = static_cast<std::uint32_t>(m.get_ui());
        }
        return g.in_column_span(r);
    };
}

ColumnPredicate lattice_membership_predicate(Lattice l) {
    return [l = std::move(l)](const ZVec& v) {
        QVec point(v.size());
        for (size_t i = 0; i < v.size(); ++i) point[i] = Rat(v[i]);
        return lattice_contains_point(l, point);
    };
}

namespace {

// ordering key for the deterministic tie-break
bool chain_less(const std::vector<int>& pa, const ZMat& ca, const std::vector<int>& pb,
                const ZMat& cb) {
    if (pa != pb) return pa < pb;
    for (int j = 0; j < ca.cols; ++j)
        for (int i = 0; i < ca.rows; ++i) {
            int c = cmp(ca(i, j), cb(i, j));
            if (c != 0) return c < 0;
        }
    return false;
}

} // namespace

MinVolResult min_volume_sublattice(int n, int m, const ColumnPredicate& pred, const Rat& h2_cap,
                                   std::uint64_t budget) {
    if (m < 1 || m > n) throw std::invalid_argument("min_volume_sublattice: need 1 <= m <= n");
    MinVolResult res;
    if (h2_cap < 1) return res; // integral lattices have vol^2 >= 1
    Budget guard(budget);

    std::optional<Rat> best_vol2;
    std::optional<HnfMatrix> best;

    auto rec = [&](auto&& self, const ColumnChain& chain) -> void {
        int a = chain.length() + 1;
        if (a > m) {
            Rat v2 = chain.vol2();
            HnfMatrix h = chain.to_hnf();
            if (!best_vol2 || v2 < *best_vol2 ||
                (v2 == *best_vol2 && chain_less(h.pivot_rows, h.m, best->pivot_rows, best->m))) {
                best_vol2 = v2;
                best = std::move(h);
            }
            return;
        }
        int lo = chain.pivot_rows().empty() ? 0 : chain.pivot_rows().back() + 1;
        int hi = n - m + a - 1; // i_a <= n - m + a in 1-based terms
        for (int pivot = lo; pivot <= hi; ++pivot) {
            Rat cap2 = best_vol2 ? std::min(h2_cap, *best_vol2) : h2_cap;
            Rat r2 = cap2 / chain.vol2();
            if (r2 < 1) continue;
            auto exts = enumerate_extensions(chain, pivot, r2, budget);
            // ascending projected length collapses the incumbent quickly
            std::sort(exts.begin(), exts.end());
            for (const auto& v : exts) {
                guard.tick("min_volume_sublattice nodes");
                if (!pred(v)) continue;
                ColumnChain next = chain.extended(pivot, v);
                Rat cap2_now = best_vol2 ? std::min(h2_cap, *best_vol2) : h2_cap;
                if (next.vol2() > cap2_now) continue;
                self(self, next);
            }
        }
    };
    rec(rec, ColumnChain(n));

    res.nodes = guard.used;
    if (best) {
        res.found = true;
        res.witness = std::move(*best);
        res.vol2 = *best_vol2;
    }
    return res;
}

RankinResult rankin_exact(const Lattice& l, int m, std::uint64_t budget) {
    if (!l.integral()) throw std::invalid_argument("rankin_exact: lattice must be integral");
    int n = l.rank();
    if (l.ambient_dim() != n)
        throw std::invalid_argument("rankin_exact: lattice must be full rank");
    if (m < 1 || m > n) throw std::invalid_argument("rankin_exact: need 1 <= m <= rank");

    // cap: the sublattice generated by the first m basis columns
    QMat prefix(l.ambient_dim(), m);
    for (int i = 0; i < l.ambient_dim(); ++i)
        for (int j = 0; j < m; ++j) prefix(i, j) = l.basis()(i, j);
    Rat cap2 = det(gram(prefix));

    MinVolResult mv = min_volume_sublattice(n, m, lattice_membership_predicate(l), cap2, budget);
    if (!mv.found) throw std::logic_error("rankin_exact: seed sublattice not found by search");

    RankinResult out;
    out.n = n;
    out.m = m;
    out.vol2 = l.vol2();
    out.min_vol2 = mv.vol2;
    out.value = mv.vol2.get_d() / std::pow(out.vol2.get_d(), double(m) / n);
    out.certified = true;
    out.radius2 = cap2;
    // cross-check against the enumerative search: any tuple it finds can only
    // be at least the exact minimum
    RankinResult enumerated = rankin(l, m, std::nullopt, budget);
    if (enumerated.min_vol2 < out.min_vol2)
        throw std::logic_error("rankin_exact: enumeration beat the complete search");
    // witness columns expressed in lattice coordinates
    QMat w = to_rational(mv.witness.m);
    QMat coeffs(n, m);
    for (int j = 0; j < m; ++j) {
        QVec col(n);
        for (int i = 0; i < n; ++i) col[i] = w(i, j);
        QVec bt(n);
        for (int jj = 0; jj < n; ++jj)
            for (int i = 0; i < n; ++i) bt[jj] += l.basis()(i, jj) * col[i];
        QVec c = solve(l.gram(), bt);
        for (int i = 0; i < n; ++i) {
            if (c[i].get_den() != 1) throw std::logic_error("rankin_exact: witness not in lattice");
            coeffs(i, j) = c[i];
        }
    }
    out.witness = to_integer(coeffs);
    return out;
}

double wilson_interval_low(int successes, int trials, double z) {
    if (trials == 0) return 0;
    double p = double(successes) / trials, z2 = z * z;
    double denom = 1 + z2 / trials;
    double center = p + z2 / (2 * trials);
    double rad = z * std::sqrt(p * (1 - p) / trials + z2 / (4.0 * trials * trials));
    return std::max(0.0, (center - rad) / denom);
}

double wilson_interval_high(int successes, int trials, double z) {
    if (trials == 0) return 1;
    double p = double(successes) / trials, z2 = z * z;
    double denom = 1 + z2 / trials;
    double center = p + z2 / (2 * trials);
    double rad = z * std::sqrt(p * (1 - p) / trials + z2 / (4.0 * trials * trials));
    return std::min(1.0, (center + rad) / denom);
}

FirstMomentReport first_moment_experiment(int n, int k, std::uint32_t p, int m, const Rat& c,
                                          double x, int trials, std::uint64_t seed, int threads,
                                          std::uint64_t budget) {
    if (trials < 1) throw std::invalid_argument("first_moment_experiment: trials >= 1");
    FirstMomentReport rep;
    rep.n = n;
    rep.k = k;
    rep.p = p;
    rep.m = m;
    rep.c = c;
    rep.x = x;
    rep.seed = seed;
    rep.trials = trials;
    rep.m_effective = std::min(m, n - k);
    rep.clamped = rep.m_effective != m;
    int e = std::min(m, n - k);
    Rat cap = 1;
    for (int i = 0; i < e; ++i) cap *= c * p;
    rep.volume_cap = cap;
    rep.theorem_bound = rep.m_effective * std::pow(c.get_d(), rep.m_effective) *
                        std::pow(x, n - rep.m_effective + 1);
    rep.note = "consistency check at desk scale; the theorem's regime needs large n-m";

    SplitRng master(seed);
    rep.rows.resize(trials);
    auto run_trial = [&](int t) {
        FirstMomentTrial row;
        row.index = t;
        auto t0 = std::chrono::steady_clock::now();
        SplitRng stream = master.split(t);
        FpMatrix g = random_code_generator(n, k, p, stream);
        try {
            if (cap >= 1) {
                MinVolResult mv = min_volume_sublattice(n, rep.m_effective,
                                                        code_consistency_predicate(g), cap * cap,
                                                        budget);
                row.found = mv.found;
                if (mv.found) row.min_vol2 = mv.vol2;
            }
        } catch (const resource_error&) {
            row.complete = false;
        }
        row.runtime_ms = std::chrono::duration<double, std::milli>(
                             std::chrono::steady_clock::now() - t0)
                             .count();
        return row;
    };

    if (threads <= 1) {
        for (int t = 0; t < trials; ++t) rep.rows[t] = run_trial(t);
    } else {
        std::vector<std::future<void>> futs;
        std::atomic<int> next{0};
        for (int w = 0; w < threads; ++w)
            futs.push_back(std::async(std::launch::async, [&] {
                for (;;) {
                    int t = next.fetch_add(1);
                    if (t >= trials) return;
                    rep.rows[t] = run_trial(t);
                }
            }));
        for (auto& f : futs) f.get();
    }

    for (const auto& row : rep.rows) {
        if (row.found) ++rep.found_count;
        if (!row.complete) rep.complete = false;
    }
    rep.p_hat = double(rep.found_count) / trials;
    rep.wilson_lo = wilson_interval_low(rep.found_count, trials);
    rep.wilson_hi = wilson_interval_high(rep.found_count, trials);
    return rep;
}

RankinBoundReport rankin_lower_bound_check(const LdaLattice& l0, int m, const Rat& c,
                                           std::uint64_t budget) {
    RankinBoundReport rep;
    rep.n = l0.n();
    rep.k = l0.k();
    rep.p = l0.p();
    rep.m = m;
    rep.c = c;
    int e = std::min(m, rep.n - rep.k);
    Rat rhs = 1;
    for (int i = 0; i < 2 * e; ++i) rhs *= c * Rat(static_cast<long>(rep.p));
    rep.rhs_vol2 = rhs;

    // p Z^n is always inside L0, so p^m caps the search
    Rat cap = 1;
    for (int i = 0; i < m; ++i) cap *= Rat(static_cast<long>(rep.p));
    MinVolResult mv = min_volume_sublattice(rep.n, m, code_consistency_predicate(l0.generator()),
                                            cap * cap, budget);
    if (!mv.found) throw std::logic_error("rankin_lower_bound_check: p-scaled axis lattice missed");
    rep.min_vol2 = mv.vol2;
    rep.holds = rep.min_vol2 >= rep.rhs_vol2;
    rep.gamma = mv.vol2.get_d() / std::pow(l0.lattice().vol2().get_d(), double(m) / rep.n);
    rep.gamma_bound = rhs.get_d() / std::pow(l0.lattice().vol2().get_d(), double(m) / rep.n);
    return rep;
}

} // namespace latcode
