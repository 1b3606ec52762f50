#include "latcode/chain_complex.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "latcode/fp_matrix.hpp"
#include "latcode/wedge.hpp"

namespace latcode {

void ChainComplex::validate() const {
    if (!is_prime(d)) throw std::logic_error("complex: field size must be prime");
    if (static_cast<int>(labels.size()) != dim + 1 || static_cast<int>(bnd.size()) != dim + 1)
        throw std::logic_error("complex: dimension bookkeeping broken");
    for (int r = 0; r <= dim; ++r) {
        std::set<std::string> uniq(labels[r].begin(), labels[r].end());
        if (uniq.size() != labels[r].size()) throw std::logic_error("complex: duplicate cell label");
    }
    for (int r = 1; r <= dim; ++r) {
        const SparseMat& m = bnd[r];
        if (m.cols != cells(r) || m.rows != cells(r - 1))
            throw std::logic_error("complex: boundary shape mismatch");
        for (const auto& col : m.entries)
            for (auto [row, coeff] : col) {
                if (row < 0 || row >= m.rows) throw std::logic_error("complex: boundary row out of range");
                if (coeff == 0 || coeff >= d) throw std::logic_error("complex: coefficient out of range");
            }
    }
    // dd = 0, exactly
    for (int r = 2; r <= dim; ++r) {
        for (int j = 0; j < cells(r); ++j) {
            std::map<int, std::uint64_t> acc;
            for (auto [mid, c1] : bnd[r].entries[j])
                for (auto [low, c2] : bnd[r - 1].entries[mid])
                    acc[low] = (acc[low] + static_cast<std::uint64_t>(c1) * c2) % d;
            for (auto& [low, c] : acc)
                if (c != 0) throw std::logic_error("complex: dd != 0");
        }
    }
}

Chain boundary_apply(const ChainComplex& cx, int r, const Chain& v) {
    if (r < 1 || r > cx.dim) return Chain(cx.cells(r - 1), 0);
    if (static_cast<int>(v.size()) != cx.cells(r))
        throw std::invalid_argument("boundary_apply: wrong chain length");
    Chain out(cx.cells(r - 1), 0);
    for (int j = 0; j < cx.cells(r); ++j) {
        if (v[j] == 0) continue;
        for (auto [row, coeff] : cx.bnd[r].entries[j])
            out[row] = (out[row] + static_cast<std::uint64_t>(v[j]) * coeff) % cx.d;
    }
    return out;
}

int chain_weight(const Chain& v) {
    return static_cast<int>(std::count_if(v.begin(), v.end(), [](std::uint32_t x) { return x != 0; }));
}

int boundary_rank(const ChainComplex& cx, int r, std::uint64_t dense_budget) {
    if (r < 1 || r > cx.dim) return 0;
    const SparseMat& m = cx.bnd[r];
    std::uint64_t size = static_cast<std::uint64_t>(m.rows) * m.cols;
    if (size > dense_budget) throw resource_error("boundary_rank dense matrix", dense_budget, size);
    std::vector<std::uint32_t> e(size, 0);
    for (int j = 0; j < m.cols; ++j)
        for (auto [row, coeff] : m.entries[j]) e[static_cast<std::uint64_t>(row) * m.cols + j] = coeff;
    return FpMatrix(m.rows, m.cols, cx.d, std::move(e)).rank();
}

int betti(const ChainComplex& cx, int r, std::uint64_t dense_budget) {
    if (r < 0 || r > cx.dim) return 0;
    int ker = cx.cells(r) - boundary_rank(cx, r, dense_budget);
    return ker - boundary_rank(cx, r + 1, dense_budget);
}

// --------------------------------------------------------------------------

int SimplexSphere::cell_index(int r, std::uint32_t mask) const {
    auto it = index[r].find(mask);
    if (it == index[r].end()) throw std::invalid_argument("simplex: unknown cell");
    return it->second;
}

SimplexSphere simplex_sphere(int n, std::uint32_t d, std::uint64_t cell_budget) {
    if (n < 1) throw std::invalid_argument("simplex_sphere: n >= 1");
    int verts = n + 2;
    if (verts > 30) throw std::invalid_argument("simplex_sphere: too many vertices");
    SimplexSphere s;
    s.n = n;
    s.cx.d = d;
    s.cx.dim = n;
    s.cx.labels.resize(n + 1);
    s.cx.bnd.resize(n + 1);
    s.masks.resize(n + 1);
    s.index.resize(n + 1);

    Budget guard(cell_budget);
    for (int r = 0; r <= n; ++r) {
        for (const auto& sub : lex_subsets(verts, r + 1)) {
            guard.tick("simplex cells");
            std::uint32_t mask = 0;
            for (int v : sub) mask |= 1u << v;
            s.index[r].emplace(mask, static_cast<int>(s.masks[r].size()));
            s.masks[r].push_back(mask);
            std::ostringstream lbl;
            lbl << "{";
            for (size_t i = 0; i < sub.size(); ++i) lbl << (i ? "," : "") << sub[i] + 1;
            lbl << "}";
            s.cx.labels[r].push_back(lbl.str());
        }
    }
    for (int r = 1; r <= n; ++r) {
        SparseMat m(static_cast<int>(s.masks[r - 1].size()), static_cast<int>(s.masks[r].size()));
        for (size_t j = 0; j < s.masks[r].size(); ++j) {
            std::uint32_t mask = s.masks[r][j];
            int pos = 0;
            for (int v = 0; v < verts; ++v) {
                if (!((mask >> v) & 1)) continue;
                std::uint32_t face = mask & ~(1u << v);
                std::uint32_t coeff = (pos % 2 == 0) ? 1 : d - 1; // (-1)^pos mod d
                m.entries[j].push_back({s.index[r - 1].at(face), coeff});
                ++pos;
            }
            std::sort(m.entries[j].begin(), m.entries[j].end());
        }
        s.cx.bnd[r] = std::move(m);
    }
    return s;
}

Chain cup_with_set(const SimplexSphere& s, int r, const Chain& v, std::uint32_t t_mask) {
    if (s.cx.d != 2) throw std::invalid_argument("cup_with_set: defined over F_2");
    if (r < 0 || r > s.n) throw std::invalid_argument("cup_with_set: bad dimension");
    if (static_cast<int>(v.size()) != s.cx.cells(r))
        throw std::invalid_argument("cup_with_set: wrong chain length");
    int tsize = __builtin_popcount(t_mask);
    int rr = r + tsize;
    if (rr > s.n) throw std::invalid_argument("cup_with_set: target dimension out of range");
    Chain out(s.cx.cells(rr), 0);
    for (size_t j = 0; j < v.size(); ++j) {
        if (v[j] == 0) continue;
        std::uint32_t mask = s.masks[r][j];
        if (mask & t_mask) continue; // S meets T: contributes zero
        out[s.index[rr].at(mask | t_mask)] ^= v[j] & 1;
    }
    return out;
}

// --------------------------------------------------------------------------

ZVec TorusComplex::canonical_coset(ZVec x) const {
    for (int j = n - 1; j >= 0; --j) {
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), x[j].get_mpz_t(), basis.m(j, j).get_mpz_t());
        if (q == 0) continue;
        for (int i = 0; i <= j; ++i) x[i] -= q * basis.m(i, j);
    }
    return x;
}

std::uint64_t TorusComplex::coset_index(const ZVec& canonical) const {
    std::uint64_t idx = 0;
    for (int j = 0; j < n; ++j) {
        idx = idx * basis.m(j, j).get_ui() + canonical[j].get_ui();
    }
    return idx;
}

int TorusComplex::cell_index(int r, std::uint32_t mask, const ZVec& c) const {
    (void)r;
    std::vector<int> sub;
    for (int i = 0; i < n; ++i)
        if ((mask >> i) & 1) sub.push_back(i);
    std::uint64_t srank = subset_rank(n, sub);
    return static_cast<int>(srank * cosets.get_ui() + coset_index(c));
}

TorusComplex torus_from_lattice(const Lattice& l, std::uint32_t d, std::uint64_t cell_budget) {
    if (!l.integral()) throw std::invalid_argument("torus_from_lattice: lattice must be integral");
    if (l.rank() != l.ambient_dim())
        throw std::invalid_argument("torus_from_lattice: lattice must be full rank");
    int n = l.rank();
    if (n > 30) throw std::invalid_argument("torus_from_lattice: dimension too large");

    TorusComplex t;
    t.n = n;
    t.d = d;
    t.basis = hnf(l.integer_basis());
    Int cosets = 1;
    for (int j = 0; j < n; ++j) cosets *= t.basis.m(j, j);
    t.cosets = cosets;

    Int total = cosets;
    for (int i = 0; i < n; ++i) total *= 2;
    if (total > Int(static_cast<unsigned long>(cell_budget)))
        throw resource_error("torus cell budget", cell_budget, cosets.get_ui());

    std::uint64_t ncosets = cosets.get_ui();
    t.cx.d = d;
    t.cx.dim = n;
    t.cx.labels.resize(n + 1);
    t.cx.bnd.resize(n + 1);
    t.cells.resize(n + 1);

    // enumerate the canonical box in the same mixed-radix order as coset_index
    std::vector<ZVec> reps;
    reps.reserve(ncosets);
    ZVec cur(n, Int(0));
    for (std::uint64_t c = 0; c < ncosets; ++c) {
        reps.push_back(cur);
        for (int j = n - 1; j >= 0; --j) {
            if (++cur[j] < t.basis.m(j, j)) break;
            cur[j] = 0;
        }
    }

    for (int r = 0; r <= n; ++r) {
        auto subs = lex_subsets(n, r);
        for (const auto& sub : subs) {
            std::uint32_t mask = 0;
            for (int i : sub) mask |= 1u << i;
            for (std::uint64_t c = 0; c < ncosets; ++c) {
                t.cells[r].push_back(TorusCell{mask, reps[c]});
                std::ostringstream lbl;
                lbl << "S={";
                for (size_t i = 0; i < sub.size(); ++i) lbl << (i ? "," : "") << sub[i] + 1;
                lbl << "};x=(";
                for (int i = 0; i < n; ++i) lbl << (i ? "," : "") << reps[c][i].get_str();
                lbl << ")";
                t.cx.labels[r].push_back(lbl.str());
            }
        }
    }

    for (int r = 1; r <= n; ++r) {
        SparseMat m(static_cast<int>(t.cells[r - 1].size()), static_cast<int>(t.cells[r].size()));
        for (size_t j = 0; j < t.cells[r].size(); ++j) {
            const TorusCell& cell = t.cells[r][j];
            std::map<int, std::uint64_t> acc;
            int pos = 0;
            for (int i = 0; i < n; ++i) {
                if (!((cell.direction_mask >> i) & 1)) continue;
                std::uint32_t face_mask = cell.direction_mask & ~(1u << i);
                std::uint32_t sign_pos = (pos % 2 == 0) ? 1 : d - 1;      // (-1)^pos
                std::uint32_t sign_neg = (d - sign_pos) % d;              // the paired face
                ZVec shifted = cell.coset;
                shifted[i] += 1;
                int top = t.cell_index(r - 1, face_mask, t.canonical_coset(std::move(shifted)));
                int bottom = t.cell_index(r - 1, face_mask, cell.coset);
                acc[top] = (acc[top] + sign_pos) % d;
                acc[bottom] = (acc[bottom] + sign_neg) % d;
                ++pos;
            }
            for (auto [row, coeff] : acc)
                if (coeff % d != 0) m.entries[j].push_back({row, static_cast<std::uint32_t>(coeff % d)});
        }
        t.cx.bnd[r] = std::move(m);
    }
    return t;
}

// --------------------------------------------------------------------------

int ProductComplex::cell_index(int r, int ra, int ia, int ib) const {
    return offsets[r][ra] + ia * cells_b[r - ra] + ib;
}

ProductComplex product_complex(const ChainComplex& a, const ChainComplex& b,
                               std::uint64_t cell_budget) {
    if (a.d != b.d) throw std::invalid_argument("product_complex: field mismatch");
    ProductComplex p;
    p.dim_a = a.dim;
    p.dim_b = b.dim;
    p.cx.d = a.d;
    p.cx.dim = a.dim + b.dim;
    p.cx.labels.resize(p.cx.dim + 1);
    p.cx.bnd.resize(p.cx.dim + 1);
    p.pairs.resize(p.cx.dim + 1);
    p.offsets.resize(p.cx.dim + 1);
    p.cells_a.resize(p.cx.dim + 1, 0);
    p.cells_b.resize(p.cx.dim + 1, 0);
    for (int r = 0; r <= a.dim; ++r) p.cells_a[r] = a.cells(r);
    for (int r = 0; r <= b.dim; ++r) p.cells_b[r] = b.cells(r);

    Budget guard(cell_budget);
    for (int r = 0; r <= p.cx.dim; ++r) {
        p.offsets[r].assign(r + 1, -1);
        for (int ra = std::max(0, r - b.dim); ra <= std::min(r, a.dim); ++ra) {
            int rb = r - ra;
            p.offsets[r][ra] = static_cast<int>(p.pairs[r].size());
            for (int ia = 0; ia < a.cells(ra); ++ia)
                for (int ib = 0; ib < b.cells(rb); ++ib) {
                    guard.tick("product cells");
                    p.pairs[r].push_back({ra, ia, ib});
                    p.cx.labels[r].push_back("(" + a.labels[ra][ia] + ")x(" + b.labels[rb][ib] + ")");
                }
        }
    }

    std::uint32_t d = p.cx.d;
    for (int r = 1; r <= p.cx.dim; ++r) {
        SparseMat m(static_cast<int>(p.pairs[r - 1].size()), static_cast<int>(p.pairs[r].size()));
        for (size_t j = 0; j < p.pairs[r].size(); ++j) {
            auto [ra, ia, ib] = p.pairs[r][j];
            int rb = r - ra;
            std::map<int, std::uint64_t> acc;
            if (ra >= 1)
                for (auto [row, coeff] : a.bnd[ra].entries[ia]) {
                    int idx = p.cell_index(r - 1, ra - 1, row, ib);
                    acc[idx] = (acc[idx] + coeff) % d;
                }
            if (rb >= 1) {
                // graded sign (-1)^{ra} on the second factor
                for (auto [row, coeff] : b.bnd[rb].entries[ib]) {
                    std::uint64_t c = (ra % 2 == 0) ? coeff : (d - coeff) % d;
                    int idx = p.cell_index(r - 1, ra, ia, row);
                    acc[idx] = (acc[idx] + c) % d;
                }
            }
            for (auto [row, coeff] : acc)
                if (coeff != 0) m.entries[j].push_back({row, static_cast<std::uint32_t>(coeff)});
            std::sort(m.entries[j].begin(), m.entries[j].end());
        }
        p.cx.bnd[r] = std::move(m);
    }
    return p;
}

} // namespace latcode
