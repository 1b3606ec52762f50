#include "latcode/css.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "latcode/fp_matrix.hpp"
#include "latcode/rng.hpp"

namespace latcode {

namespace {

// ------------------------------- GF(2) ------------------------------------

struct BitVec {
    int n = 0;
    std::vector<std::uint64_t> w;
    explicit BitVec(int n_ = 0) : n(n_), w((n_ + 63) / 64, 0) {}
    void flip(int i) { w[i >> 6] ^= 1ull << (i & 63); }
    bool get(int i) const { return (w[i >> 6] >> (i & 63)) & 1; }
    void operator^=(const BitVec& o) {
        for (size_t i = 0; i < w.size(); ++i) w[i] ^= o.w[i];
    }
    int weight() const {
        int s = 0;
        for (auto x : w) s += std::popcount(x);
        return s;
    }
    bool zero() const {
        return std::all_of(w.begin(), w.end(), [](std::uint64_t x) { return x == 0; });
    }
    bool operator==(const BitVec& o) const { return n == o.n && w == o.w; }
    int lowest_set() const {
        for (size_t i = 0; i < w.size(); ++i)
            if (w[i]) return static_cast<int>(i * 64 + std::countr_zero(w[i]));
        return -1;
    }
};

// echelonized basis for span/membership queries
struct Gf2Basis {
    std::vector<BitVec> rows;
    std::vector<int> pivots;

    // reduce v by the basis; returns the residue
    BitVec reduce(BitVec v) const {
        for (size_t i = 0; i < rows.size(); ++i)
            if (v.get(pivots[i])) v ^= rows[i];
        return v;
    }
    bool insert(const BitVec& v) {
        BitVec r = reduce(v);
        int p = r.lowest_set();
        if (p < 0) return false;
        rows.push_back(std::move(r));
        pivots.push_back(p);
        return true;
    }
    int rank() const { return static_cast<int>(rows.size()); }
};

std::vector<BitVec> nullspace(const std::vector<BitVec>& rows_in, int ncols) {
    // reduced row echelon, then each free column yields one basis vector
    std::vector<BitVec> rows;
    std::vector<int> pivot_col;
    for (const auto& r0 : rows_in) {
        BitVec r = r0;
        for (size_t i = 0; i < rows.size(); ++i)
            if (r.get(pivot_col[i])) r ^= rows[i];
        int p = r.lowest_set();
        if (p < 0) continue;
        for (size_t i = 0; i < rows.size(); ++i)
            if (rows[i].get(p)) rows[i] ^= r;
        rows.push_back(std::move(r));
        pivot_col.push_back(p);
    }
    std::vector<bool> is_pivot(ncols, false);
    for (int p : pivot_col) is_pivot[p] = true;
    std::vector<BitVec> basis;
    for (int f = 0; f < ncols; ++f) {
        if (is_pivot[f]) continue;
        BitVec v(ncols);
        v.flip(f);
        for (size_t i = 0; i < rows.size(); ++i)
            if (rows[i].get(f)) v.flip(pivot_col[i]);
        basis.push_back(std::move(v));
    }
    return basis;
}

// check rows and trivial-space generators for one side of the code
struct SideView {
    std::vector<BitVec> check_rows; // cycles = common kernel, over the N qubits
    std::vector<BitVec> im_gens;    // generators of the stabilizer (trivial) space
};

SideView make_side_view(const CssCode& code, Side side) {
    if (code.d != 2) throw std::invalid_argument("distance/soundness: only F_2 codes supported");
    SideView sv;
    int n = code.nqubits;
    if (side == Side::Z) {
        sv.check_rows.assign(code.d1.rows, BitVec(n));
        for (int j = 0; j < n; ++j)
            for (auto [row, c] : code.d1.entries[j])
                if (c & 1) sv.check_rows[row].flip(j);
        for (int s = 0; s < code.d2.cols; ++s) {
            BitVec g(n);
            for (auto [row, c] : code.d2.entries[s])
                if (c & 1) g.flip(row);
            sv.im_gens.push_back(std::move(g));
        }
    } else {
        sv.check_rows.assign(code.d2.cols, BitVec(n));
        for (int s = 0; s < code.d2.cols; ++s)
            for (auto [row, c] : code.d2.entries[s])
                if (c & 1) sv.check_rows[s].flip(row);
        for (int r = 0; r < code.d1.rows; ++r) sv.im_gens.push_back(BitVec(n));
        for (int j = 0; j < n; ++j)
            for (auto [row, c] : code.d1.entries[j])
                if (c & 1) sv.im_gens[row].flip(j);
    }
    return sv;
}

struct HomologyBasis {
    std::vector<BitVec> logicals; // kernel vectors independent of the image
    std::vector<BitVec> image;    // independent image basis
    int kernel_dim = 0;
};

HomologyBasis homology_basis(const CssCode& code, Side side) {
    SideView sv = make_side_view(code, side);
    HomologyBasis hb;
    auto kernel = nullspace(sv.check_rows, code.nqubits);
    hb.kernel_dim = static_cast<int>(kernel.size());
    Gf2Basis im;
    for (const auto& g : sv.im_gens) im.insert(g);
    Gf2Basis full = im;
    for (const auto& v : kernel)
        if (full.insert(v)) hb.logicals.push_back(v);
    hb.image = im.rows;
    return hb;
}

} // namespace

// ---------------------------------------------------------------------------

void CssCode::check_commutation() const {
    // (d1 d2)_{x,s} = sum over qubits
    for (int s = 0; s < d2.cols; ++s) {
        std::map<int, std::uint64_t> acc;
        for (auto [qubit, c2] : d2.entries[s])
            for (auto [xs, c1] : d1.entries[qubit]) acc[xs] = (acc[xs] + std::uint64_t(c1) * c2) % d;
        for (auto [xs, c] : acc)
            if (c != 0) throw std::logic_error("css: d1 d2 != 0");
    }
}

CssCode css_from_complex(const ChainComplex& cx, int q) {
    if (q < 0 || q > cx.dim) throw std::invalid_argument("css_from_complex: q out of range");
    CssCode code;
    code.d = cx.d;
    code.nqubits = cx.cells(q);
    code.d2 = (q + 1 <= cx.dim) ? cx.bnd[q + 1] : SparseMat(code.nqubits, 0);
    code.d1 = (q >= 1) ? cx.bnd[q] : SparseMat(0, code.nqubits);
    code.check_commutation();
    return code;
}

CssCode css_from_torus(std::shared_ptr<const TorusComplex> t, int q) {
    CssCode code = css_from_complex(t->cx, q);
    code.prov = TorusProvenance{std::move(t), q};
    return code;
}

CssCode css_from_simplex(std::shared_ptr<const SimplexSphere> s, int q) {
    CssCode code = css_from_complex(s->cx, q);
    code.prov = SimplexProvenance{std::move(s), q};
    return code;
}

CssCode css_from_sphere_product(std::shared_ptr<const SphereProduct> sp, int q) {
    CssCode code = css_from_complex(sp->prod.cx, q);
    code.prov = SphereProductProvenance{std::move(sp), q};
    return code;
}

int logical_count(const CssCode& code, std::uint64_t dense_budget) {
    auto dense_rank = [&](const SparseMat& m) {
        std::uint64_t size = std::uint64_t(m.rows) * m.cols;
        if (m.rows == 0 || m.cols == 0) return 0;
        if (size > dense_budget) throw resource_error("logical_count dense rank", dense_budget, size);
        std::vector<std::uint32_t> e(size, 0);
        for (int j = 0; j < m.cols; ++j)
            for (auto [row, c] : m.entries[j]) e[std::uint64_t(row) * m.cols + j] = c;
        return FpMatrix(m.rows, m.cols, code.d, std::move(e)).rank();
    };
    return code.nqubits - dense_rank(code.d2) - dense_rank(code.d1);
}

int weight_w(const CssCode& code) {
    int w = 0;
    auto scan = [&](const SparseMat& m) {
        std::vector<int> row_counts(m.rows, 0);
        for (int j = 0; j < m.cols; ++j) {
            w = std::max(w, static_cast<int>(m.entries[j].size()));
            for (auto [row, c] : m.entries[j]) {
                (void)c;
                ++row_counts[row];
            }
        }
        for (int c : row_counts) w = std::max(w, c);
    };
    scan(code.d2);
    scan(code.d1);
    return w;
}

std::optional<long> distance_exact(const CssCode& code, Side side, std::uint64_t budget) {
    HomologyBasis hb = homology_basis(code, side);
    int k = static_cast<int>(hb.logicals.size());
    int r = static_cast<int>(hb.image.size());
    if (k == 0) return std::nullopt;
    if (k + r >= 63 || (std::uint64_t(1) << (k + r)) > budget)
        throw resource_error("distance_exact kernel enumeration", budget,
                             std::uint64_t(1) << std::min(k + r, 62));

    std::vector<BitVec> basis = hb.logicals;
    basis.insert(basis.end(), hb.image.begin(), hb.image.end());
    std::uint64_t total = std::uint64_t(1) << (k + r);
    std::uint64_t logical_mask = (std::uint64_t(1) << k) - 1;
    BitVec cur(code.nqubits);
    std::uint64_t gray = 0;
    long best = -1;
    for (std::uint64_t t = 1; t < total; ++t) {
        int idx = std::countr_zero(t);
        cur ^= basis[idx];
        gray ^= std::uint64_t(1) << idx;
        if ((gray & logical_mask) == 0) continue;
        int wgt = cur.weight();
        if (best < 0 || wgt < best) best = wgt;
    }
    return best;
}

long distance_cycle_q1(const CssCode& code, Side side) {
    if (code.d != 2) throw std::invalid_argument("distance_cycle_q1: only F_2");
    // graph side: each qubit touches at most two checks
    SideView sv = make_side_view(code, side);
    int n = code.nqubits;
    int nv = static_cast<int>(sv.check_rows.size());

    // labels from the opposite side's logicals
    HomologyBasis opp = homology_basis(code, side == Side::Z ? Side::X : Side::Z);
    HomologyBasis own = homology_basis(code, side);
    int k = static_cast<int>(opp.logicals.size());
    if (k == 0 || own.logicals.empty())
        throw std::invalid_argument("distance_cycle_q1: no logical operators");
    if (k != static_cast<int>(own.logicals.size()))
        throw std::logic_error("distance_cycle_q1: side logical counts differ");
    if (k > 20) throw resource_error("distance_cycle_q1 label space", 20, k);
    // the homology pairing must be perfect, otherwise labels cannot detect
    {
        std::vector<BitVec> pairing;
        for (int i = 0; i < k; ++i) {
            BitVec row(k);
            for (int j = 0; j < k; ++j) {
                std::uint64_t parity = 0;
                for (size_t wd = 0; wd < opp.logicals[i].w.size(); ++wd)
                    parity ^= opp.logicals[i].w[wd] & own.logicals[j].w[wd];
                if (std::popcount(parity) & 1) row.flip(j);
            }
            pairing.push_back(std::move(row));
        }
        Gf2Basis pb;
        int rank = 0;
        for (const auto& rw : pairing) rank += pb.insert(rw) ? 1 : 0;
        if (rank != k) throw std::logic_error("distance_cycle_q1: degenerate homology pairing");
    }

    struct Edge {
        int u = -1, v = -1;
        std::uint32_t label = 0;
    };
    std::vector<Edge> edges(n);
    long best = -1;
    for (int j = 0; j < n; ++j) {
        std::vector<int> ends;
        for (int s = 0; s < nv; ++s)
            if (sv.check_rows[s].get(j)) ends.push_back(s);
        std::uint32_t label = 0;
        for (int i = 0; i < k; ++i)
            if (opp.logicals[i].get(j)) label |= 1u << i;
        if (ends.size() == 0) {
            // boundaryless qubit: the single-cell chain is already a cycle
            if (label != 0) best = (best < 0) ? 1 : std::min(best, 1L);
            edges[j].label = label;
            continue;
        }
        if (ends.size() != 2)
            throw std::invalid_argument("distance_cycle_q1: side is not graph-like (q != 1?)");
        edges[j] = Edge{ends[0], ends[1], label};
    }

    std::uint32_t states = std::uint32_t(1) << k;
    std::vector<std::vector<std::pair<int, std::uint32_t>>> adj(nv);
    for (const auto& e : edges)
        if (e.u >= 0) {
            adj[e.u].push_back({e.v, e.label});
            adj[e.v].push_back({e.u, e.label});
        }

    std::vector<int> dist(std::size_t(nv) * states);
    for (int s = 0; s < nv; ++s) {
        std::fill(dist.begin(), dist.end(), -1);
        std::queue<std::pair<int, std::uint32_t>> q;
        dist[std::size_t(s) * states] = 0;
        q.push({s, 0});
        while (!q.empty()) {
            auto [v, g] = q.front();
            q.pop();
            int dcur = dist[std::size_t(v) * states + g];
            if (best >= 0 && dcur >= best) continue;
            for (auto [to, lbl] : adj[v]) {
                std::uint32_t g2 = g ^ lbl;
                auto& slot = dist[std::size_t(to) * states + g2];
                if (slot < 0) {
                    slot = dcur + 1;
                    q.push({to, g2});
                }
            }
        }
        for (std::uint32_t g = 1; g < states; ++g) {
            int dd = dist[std::size_t(s) * states + g];
            if (dd > 0 && (best < 0 || dd < best)) best = dd;
        }
    }
    if (best < 0) throw std::logic_error("distance_cycle_q1: no nontrivial cycle found");
    return best;
}

// ---------------------------------------------------------------------------

namespace {

// does rhs lie in the lattice generated by the columns of a?
bool in_column_span_z(const ZMat& a, const ZVec& rhs) {
    // column basis via the same unimodular column reduction as integer_kernel
    ZMat w = a;
    ZMat v = ZMat::identity(a.cols);
    int used = 0;
    for (int r = 0; r < w.rows && used < w.cols; ++r) {
        for (;;) {
            int nz = -1;
            for (int j = used; j < w.cols; ++j) {
                if (w(r, j) == 0) continue;
                if (nz < 0 || cmp(abs(w(r, j)), abs(w(r, nz))) < 0) nz = j;
            }
            if (nz < 0) break;
            bool more = false;
            for (int j = used; j < w.cols; ++j) {
                if (j == nz || w(r, j) == 0) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), w(r, j).get_mpz_t(), w(r, nz).get_mpz_t());
                for (int i = 0; i < w.rows; ++i) w(i, j) -= q * w(i, nz);
                for (int i = 0; i < v.rows; ++i) v(i, j) -= q * v(i, nz);
                if (w(r, j) != 0) more = true;
            }
            if (!more) {
                for (int i = 0; i < w.rows; ++i) std::swap(w(i, nz), w(i, used));
                for (int i = 0; i < v.rows; ++i) std::swap(v(i, nz), v(i, used));
                ++used;
                break;
            }
        }
    }
    if (used == 0) return std::all_of(rhs.begin(), rhs.end(), [](const Int& x) { return x == 0; });
    ZMat basis(w.rows, used);
    for (int i = 0; i < w.rows; ++i)
        for (int j = 0; j < used; ++j) basis(i, j) = w(i, j);
    // solve basis * t = rhs over Q, then check integrality and exactness
    QMat bq = to_rational(basis);
    QMat g = gram(bq);
    QVec btr(used);
    for (int j = 0; j < used; ++j)
        for (int i = 0; i < w.rows; ++i) btr[j] += bq(i, j) * Rat(rhs[i]);
    QVec t = solve(g, btr);
    for (const auto& x : t)
        if (x.get_den() != 1) return false;
    QVec back(w.rows);
    for (int i = 0; i < w.rows; ++i)
        for (int j = 0; j < used; ++j) back[i] += bq(i, j) * t[j];
    for (int i = 0; i < w.rows; ++i)
        if (back[i] != Rat(rhs[i])) return false;
    return true;
}

} // namespace

PlaneLogical plane_logical(const CssCode& code, std::uint32_t s_mask, const ZVec& offsets) {
    const auto* tp = std::get_if<TorusProvenance>(&code.prov);
    if (!tp) throw std::invalid_argument("plane_logical: needs a torus-built code");
    const TorusComplex& t = *tp->complex;
    int q = tp->q, n = t.n;
    if (__builtin_popcount(s_mask) != q)
        throw std::invalid_argument("plane_logical: direction set must have size q");
    if (static_cast<int>(offsets.size()) != n)
        throw std::invalid_argument("plane_logical: offsets must have length n");

    std::vector<int> off_s, in_s;
    for (int i = 0; i < n; ++i)
        ((s_mask >> i) & 1 ? in_s : off_s).push_back(i);

    const ZMat& basis = t.basis.m;
    auto rows_restrict = [&](const std::vector<int>& rows) {
        ZMat a(static_cast<int>(rows.size()), n);
        for (size_t i = 0; i < rows.size(); ++i)
            for (int j = 0; j < n; ++j) a(static_cast<int>(i), j) = basis(rows[i], j);
        return a;
    };
    ZMat a_off = rows_restrict(off_s);
    ZMat a_in = rows_restrict(in_s);

    PlaneLogical out;
    out.z_plane.assign(t.cx.cells(q), 0);
    out.x_plane_dual.assign(t.cx.cells(q), 0);
    for (int idx = 0; idx < t.cx.cells(q); ++idx) {
        const TorusCell& cell = t.cells[q][idx];
        if (cell.direction_mask != s_mask) continue;
        ZVec rhs_off(off_s.size()), rhs_in(in_s.size());
        for (size_t i = 0; i < off_s.size(); ++i) rhs_off[i] = offsets[off_s[i]] - cell.coset[off_s[i]];
        for (size_t i = 0; i < in_s.size(); ++i) rhs_in[i] = offsets[in_s[i]] - cell.coset[in_s[i]];
        if (in_column_span_z(a_off, rhs_off)) out.z_plane[idx] = 1;
        if (in_column_span_z(a_in, rhs_in)) out.x_plane_dual[idx] = 1;
    }
    out.weight = chain_weight(out.z_plane);

    // certify: the plane is a cycle, the dual commutes with Z stabilizers, and
    // the two pair oddly
    Chain bz = boundary_apply(t.cx, q, out.z_plane);
    out.z_is_cycle = chain_weight(bz) == 0;
    out.x_commutes = true;
    for (int s = 0; s < code.d2.cols; ++s) {
        std::uint64_t parity = 0;
        for (auto [qubit, c] : code.d2.entries[s]) parity += std::uint64_t(c) * out.x_plane_dual[qubit];
        if (parity % code.d != 0) {
            out.x_commutes = false;
            break;
        }
    }
    std::uint64_t pair = 0;
    for (int j = 0; j < code.nqubits; ++j) pair += std::uint64_t(out.z_plane[j]) * out.x_plane_dual[j];
    out.pairing = static_cast<int>(pair % 2);
    if (!out.z_is_cycle || !out.x_commutes || out.pairing != 1)
        throw std::logic_error("plane_logical: certification failed");
    return out;
}

// ---------------------------------------------------------------------------

SoundnessProfile soundness_profile(const CssCode& code, int w_max, SoundnessMode mode,
                                   std::uint64_t seed, std::uint64_t samples_per_weight,
                                   std::uint64_t budget) {
    if (code.d != 2) throw std::invalid_argument("soundness_profile: only F_2");
    int n = code.nqubits;
    if (w_max < 1 || w_max > n) throw std::invalid_argument("soundness_profile: bad w_max");
    SoundnessProfile prof;
    prof.w_max = w_max;
    prof.exhaustive = mode == SoundnessMode::Exhaustive;
    prof.z.assign(w_max + 1, SoundnessEntry{});
    prof.x.assign(w_max + 1, SoundnessEntry{});

    auto run_side = [&](Side side, std::vector<SoundnessEntry>& entries) {
        SideView sv = make_side_view(code, side);
        int checks = static_cast<int>(sv.check_rows.size());
        // per-qubit syndrome columns
        std::vector<BitVec> syn_col(n, BitVec(checks));
        for (int s = 0; s < checks; ++s)
            for (int j = 0; j < n; ++j)
                if (sv.check_rows[s].get(j)) syn_col[j].flip(s);

        // all cycles, enumerated once
        auto kernel_basis = nullspace(sv.check_rows, n);
        int kd = static_cast<int>(kernel_basis.size());
        if (kd >= 62 || (std::uint64_t(1) << kd) > budget)
            throw resource_error("soundness kernel enumeration", budget,
                                 std::uint64_t(1) << std::min(kd, 62));
        std::vector<BitVec> kernel;
        kernel.reserve(std::size_t(1) << kd);
        kernel.push_back(BitVec(n));
        {
            BitVec cur(n);
            for (std::uint64_t tc = 1; tc < (std::uint64_t(1) << kd); ++tc) {
                cur ^= kernel_basis[std::countr_zero(tc)];
                kernel.push_back(cur);
            }
        }
        auto coset_min = [&](const BitVec& v) {
            int best = v.n + 1;
            std::vector<std::uint64_t> tmp(v.w.size());
            for (const auto& u : kernel) {
                int wgt = 0;
                for (size_t i = 0; i < tmp.size(); ++i) wgt += std::popcount(v.w[i] ^ u.w[i]);
                best = std::min(best, wgt);
            }
            return best;
        };
        auto consider = [&](const BitVec& v, const BitVec& syn) {
            int w = v.weight();
            if (w < 1 || w > w_max) return;
            int sw = syn.weight();
            if (sw == 0) return;
            int cm = coset_min(v);
            SoundnessEntry& e = entries[w];
            // min of fractions sw/cm
            if (e.vacuous || std::int64_t(sw) * e.den < std::int64_t(e.num) * cm) {
                e.vacuous = false;
                e.num = sw;
                e.den = cm;
                e.value = double(sw) / cm;
            }
            ++e.samples;
        };

        if (mode == SoundnessMode::Exhaustive) {
            if (n >= 62 || (std::uint64_t(1) << n) > budget)
                throw resource_error("soundness exhaustive enumeration", budget,
                                     std::uint64_t(1) << std::min(n, 62));
            BitVec v(n), syn(checks);
            for (std::uint64_t t = 1; t < (std::uint64_t(1) << n); ++t) {
                int j = std::countr_zero(t);
                v.flip(j);
                syn ^= syn_col[j];
                consider(v, syn);
            }
        } else {
            SplitRng rng(seed ^ (side == Side::Z ? 0x5au : 0xa5u));
            for (int w = 1; w <= w_max; ++w) {
                for (std::uint64_t s = 0; s < samples_per_weight; ++s) {
                    BitVec v(n), syn(checks);
                    // random weight-w subset
                    std::vector<int> idx(n);
                    for (int i = 0; i < n; ++i) idx[i] = i;
                    for (int i = 0; i < w; ++i) {
                        int j = i + static_cast<int>(rng.below(n - i));
                        std::swap(idx[i], idx[j]);
                    }
                    for (int i = 0; i < w; ++i) {
                        v.flip(idx[i]);
                        syn ^= syn_col[idx[i]];
                    }
                    consider(v, syn);
                }
            }
        }
    };
    run_side(Side::Z, prof.z);
    run_side(Side::X, prof.x);
    return prof;
}

// ---------------------------------------------------------------------------

Chain simplex_contraction(const CssCode& code, const Chain& v) {
    const auto* sp = std::get_if<SimplexProvenance>(&code.prov);
    if (!sp) throw std::invalid_argument("simplex_contraction: needs a simplex-built code");
    const SimplexSphere& s = *sp->complex;
    int q = sp->q;
    if (static_cast<int>(v.size()) != code.nqubits)
        throw std::invalid_argument("simplex_contraction: wrong chain length");
    Chain w = boundary_apply(s.cx, q, v);
    Chain x = cup_with_set(s, q - 1, w, 1u << 0);
    // guaranteed by the cone identity; cheap to verify on every call
    Chain bx = boundary_apply(s.cx, q, x);
    if (bx != w) throw std::logic_error("simplex_contraction: boundary mismatch");
    if (chain_weight(x) > chain_weight(w))
        throw std::logic_error("simplex_contraction: weight bound violated");
    return x;
}

// ---------------------------------------------------------------------------
// hypersphere product sweep

namespace {

struct PairCell {
    CubeCell a, b;
    bool operator==(const PairCell& o) const { return a == o.a && b == o.b; }
};

struct PairCellHash {
    std::size_t operator()(const PairCell& c) const {
        std::uint64_t x = c.a.key() * 0x9e3779b97f4a7c15ULL ^ c.b.key();
        x ^= x >> 33;
        x *= 0xff51afd7ed558ccdULL;
        x ^= x >> 33;
        return static_cast<std::size_t>(x);
    }
};

using CellSet = std::unordered_set<PairCell, PairCellHash>;

void toggle(CellSet& s, const PairCell& c) {
    auto it = s.find(c);
    if (it == s.end())
        s.insert(c);
    else
        s.erase(it);
}

std::vector<CubeCell> factor_faces(const CubeCell& c) {
    std::vector<CubeCell> out;
    for (int j = 0; j < c.m; ++j) {
        if (!c.is_interval(j)) continue;
        CubeCell top = c, bottom = c;
        top.interval_mask &= ~(std::uint16_t(1) << j);
        bottom.interval_mask &= ~(std::uint16_t(1) << j);
        top.base[j] = static_cast<std::uint8_t>(c.base[j] + 1);
        out.push_back(top);
        out.push_back(bottom);
    }
    return out;
}

void toggle_boundary(CellSet& w, const PairCell& c) {
    for (const auto& fa : factor_faces(c.a)) toggle(w, PairCell{fa, c.b});
    for (const auto& fb : factor_faces(c.b)) toggle(w, PairCell{c.a, fb});
}

// slot j of the factor cell is a 0-cell at x
bool slot_is_point_at(const CubeCell& c, int j, int x) {
    return !c.is_interval(j) && c.base[j] == x;
}

} // namespace

SweepResult sphere_product_contraction(const CssCode& code, const Chain& v) {
    const auto* spp = std::get_if<SphereProductProvenance>(&code.prov);
    if (!spp) throw std::invalid_argument("sphere_product_contraction: needs a product-built code");
    const SphereProduct& sp = *spp->complex;
    const CubeSphere& sph = sp.sphere;
    int q = spp->q, n = sph.n, p = sph.p, m = n + 1;
    if (static_cast<int>(v.size()) != code.nqubits)
        throw std::invalid_argument("sphere_product_contraction: wrong chain length");

    // dense chain -> cell set
    CellSet w;
    for (int idx = 0; idx < code.nqubits; ++idx) {
        if (!(v[idx] & 1)) continue;
        auto [ra, ia, ib] = sp.prod.pairs[q][idx];
        toggle(w, PairCell{sph.cells[ra][ia], sph.cells[q - ra][ib]});
    }
    CellSet boundary;
    for (const auto& c : w) toggle_boundary(boundary, c);

    SweepResult res;
    res.boundary_weight = static_cast<long>(boundary.size());
    res.max_intermediate_boundary = res.boundary_weight;
    CellSet moves;

    long w0 = res.boundary_weight;
    auto push_slice = [&](int factor, int slot, auto&& in_slice) {
        std::vector<PairCell> slice;
        for (const auto& c : boundary)
            if (in_slice(c)) slice.push_back(c);
        if (slice.empty()) return;
        for (const auto& c : slice) {
            const CubeCell& f = (factor == 0) ? c.a : c.b;
            CubeCell pushed = f;
            if (pushed.base[slot] == 0) throw std::logic_error("sweep: push below zero");
            pushed.base[slot] = static_cast<std::uint8_t>(pushed.base[slot] - 1);
            pushed.interval_mask |= std::uint16_t(1) << slot;
            if (!cube_cell_on_sphere(pushed, p)) throw std::logic_error("sweep: push left the sphere");
            PairCell qcell = (factor == 0) ? PairCell{pushed, c.b} : PairCell{c.a, pushed};
            toggle(moves, qcell);
            toggle_boundary(boundary, qcell);
        }
        ++res.steps;
        long bw = static_cast<long>(boundary.size());
        res.max_intermediate_boundary = std::max(res.max_intermediate_boundary, bw);
        if (bw > w0) throw std::logic_error("sweep: boundary weight grew beyond the input");
    };

    for (int factor = 0; factor < 2; ++factor) {
        auto fpart = [factor](const PairCell& c) -> const CubeCell& {
            return factor == 0 ? c.a : c.b;
        };
        // clear the top cap: in-cap sweeps of the remaining coordinates
        for (int j = 1; j < m; ++j)
            for (int x = p; x >= 1; --x)
                push_slice(factor, j, [&](const PairCell& c) {
                    const CubeCell& f = fpart(c);
                    return slot_is_point_at(f, 0, p) && slot_is_point_at(f, j, x);
                });
        // sweep the first coordinate down to the bottom cap
        for (int x = p; x >= 1; --x)
            push_slice(factor, 0, [&](const PairCell& c) { return slot_is_point_at(fpart(c), 0, x); });
        // collapse within the bottom cap
        for (int j = 1; j < m; ++j)
            for (int x = p; x >= 1; --x)
                push_slice(factor, j, [&](const PairCell& c) {
                    const CubeCell& f = fpart(c);
                    return slot_is_point_at(f, 0, 0) && slot_is_point_at(f, j, x);
                });
        // the factor part of every remaining boundary cell is now the corner
        for (const auto& c : boundary) {
            const CubeCell& f = fpart(c);
            if (f.interval_mask != 0) throw std::logic_error("sweep: interval slot survived");
            for (int j = 0; j < m; ++j)
                if (f.base[j] != 0) throw std::logic_error("sweep: cell not at the corner");
        }
    }
    if (!boundary.empty()) throw std::logic_error("sweep: boundary not contracted");

    // v_f = v + moves
    res.v_f = v;
    for (const auto& c : moves) {
        int da = c.a.dim();
        int ia = sph.cell_index(da, c.a);
        int ib = sph.cell_index(q - da, c.b);
        int idx = sp.prod.cell_index(q, da, ia, ib);
        res.v_f[idx] ^= 1;
    }
    res.moved_weight = static_cast<long>(moves.size());

    Chain check = boundary_apply(sp.prod.cx, q, res.v_f);
    if (chain_weight(check) != 0) throw std::logic_error("sweep: result is not a cycle");
    if (res.boundary_weight > 0) {
        res.c0 = double(res.moved_weight) / (double(p) * n * res.boundary_weight);
        if (res.moved_weight > static_cast<long>(sweep_c0 * p * n) * res.boundary_weight)
            throw std::logic_error("sweep: moved weight exceeded the pinned certificate");
    }
    return res;
}

// ---------------------------------------------------------------------------

double torus_calibration_bound(const CssCode& code, const WedgeVector& x) {
    const auto* tp = std::get_if<TorusProvenance>(&code.prov);
    if (!tp) throw std::invalid_argument("torus_calibration_bound: needs a torus-built code");
    if (x.n != tp->complex->n || x.m != tp->q)
        throw std::invalid_argument("torus_calibration_bound: class has wrong shape");
    return calibration_bound(x);
}

long torus_class_min_walk(const CssCode& code, const ZVec& cls, std::uint64_t budget) {
    const auto* tp = std::get_if<TorusProvenance>(&code.prov);
    if (!tp) throw std::invalid_argument("torus_class_min_walk: needs a torus-built code");
    if (tp->q != 1) throw std::invalid_argument("torus_class_min_walk: q must be 1");
    int n = tp->complex->n;
    if (static_cast<int>(cls.size()) != n)
        throw std::invalid_argument("torus_class_min_walk: class has wrong length");

    // BFS on the integer-grid cover inside a bounding box around [0, cls]
    std::vector<long> lo(n), hi(n), dims(n);
    std::uint64_t cellcount = 1;
    for (int i = 0; i < n; ++i) {
        long c = cls[i].get_si();
        lo[i] = std::min(0L, c) - 1;
        hi[i] = std::max(0L, c) + 1;
        dims[i] = hi[i] - lo[i] + 1;
        cellcount *= static_cast<std::uint64_t>(dims[i]);
        if (cellcount > budget) throw resource_error("torus_class_min_walk box", budget, cellcount);
    }
    auto encode = [&](const std::vector<long>& pt) {
        std::uint64_t idx = 0;
        for (int i = 0; i < n; ++i) idx = idx * dims[i] + static_cast<std::uint64_t>(pt[i] - lo[i]);
        return idx;
    };
    std::vector<int> dist(cellcount, -1);
    std::vector<long> start(n, 0), target(n);
    for (int i = 0; i < n; ++i) target[i] = cls[i].get_si();
    std::queue<std::vector<long>> q;
    dist[encode(start)] = 0;
    q.push(start);
    while (!q.empty()) {
        auto pt = q.front();
        q.pop();
        int dcur = dist[encode(pt)];
        if (pt == target) return dcur;
        for (int i = 0; i < n; ++i)
            for (int step : {-1, +1}) {
                auto np = pt;
                np[i] += step;
                if (np[i] < lo[i] || np[i] > hi[i]) continue;
                auto& slot = dist[encode(np)];
                if (slot < 0) {
                    slot = dcur + 1;
                    q.push(np);
                }
            }
    }
    throw std::logic_error("torus_class_min_walk: target unreachable");
}

} // namespace latcode
