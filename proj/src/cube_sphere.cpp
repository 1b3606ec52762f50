#include "latcode/cube_sphere.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include "latcode/wedge.hpp"

namespace latcode {

std::uint64_t CubeCell::key() const {
    std::uint64_t k = 0;
    for (int j = 0; j < m; ++j) k = (k << 5) | (base[j] & 0x1f);
    return (k << 12) | interval_mask;
}

bool cube_cell_on_sphere(const CubeCell& c, int p) {
    for (int j = 0; j < c.m; ++j)
        if (!c.is_interval(j) && (c.base[j] == 0 || c.base[j] == p)) return true;
    return false;
}

int CubeSphere::cell_index(int r, const CubeCell& c) const {
    auto it = index[r].find(c.key());
    if (it == index[r].end()) throw std::invalid_argument("cube_sphere: unknown cell");
    return it->second;
}

namespace {

std::string cube_label(const CubeCell& c) {
    std::ostringstream s;
    for (int j = 0; j < c.m; ++j) {
        if (j) s << "x";
        if (c.is_interval(j))
            s << "[" << int(c.base[j]) << "," << int(c.base[j]) + 1 << "]";
        else
            s << "{" << int(c.base[j]) << "}";
    }
    return s.str();
}

} // namespace

CubeSphere cube_sphere(int n, int p, std::uint32_t d, std::uint64_t cell_budget) {
    if (n < 1 || p < 1) throw std::invalid_argument("cube_sphere: need n >= 1 and p >= 1");
    int m = n + 1;
    if (m > CubeCell::max_slots || p > 30) throw std::invalid_argument("cube_sphere: size out of range");

    CubeSphere s;
    s.n = n;
    s.p = p;
    s.cx.d = d;
    s.cx.dim = n;
    s.cx.labels.resize(n + 1);
    s.cx.bnd.resize(n + 1);
    s.cells.resize(n + 1);
    s.index.resize(n + 1);

    Budget guard(cell_budget);
    for (int r = 0; r <= n; ++r) {
        for (const auto& dirs : lex_subsets(m, r)) {
            std::uint16_t imask = 0;
            for (int j : dirs) imask |= std::uint16_t(1) << j;
            // mixed-radix scan over slot positions
            CubeCell c;
            c.m = static_cast<std::uint8_t>(m);
            c.interval_mask = imask;
            std::vector<int> radix(m);
            for (int j = 0; j < m; ++j) radix[j] = c.is_interval(j) ? p : p + 1;
            std::vector<int> pos(m, 0);
            for (;;) {
                for (int j = 0; j < m; ++j) c.base[j] = static_cast<std::uint8_t>(pos[j]);
                if (cube_cell_on_sphere(c, p)) {
                    guard.tick("cube sphere cells");
                    s.index[r].emplace(c.key(), static_cast<int>(s.cells[r].size()));
                    s.cells[r].push_back(c);
                    s.cx.labels[r].push_back(cube_label(c));
                }
                int j = m - 1;
                while (j >= 0 && ++pos[j] == radix[j]) pos[j--] = 0;
                if (j < 0) break;
            }
        }
    }

    for (int r = 1; r <= n; ++r) {
        SparseMat bm(static_cast<int>(s.cells[r - 1].size()), static_cast<int>(s.cells[r].size()));
        for (size_t j = 0; j < s.cells[r].size(); ++j) {
            const CubeCell& c = s.cells[r][j];
            std::map<int, std::uint64_t> acc;
            int pos = 0;
            for (int slot = 0; slot < m; ++slot) {
                if (!c.is_interval(slot)) continue;
                std::uint32_t sign_pos = (pos % 2 == 0) ? 1 : d - 1;
                std::uint32_t sign_neg = (d - sign_pos) % d;
                CubeCell top = c, bottom = c;
                top.interval_mask &= ~(std::uint16_t(1) << slot);
                bottom.interval_mask &= ~(std::uint16_t(1) << slot);
                top.base[slot] = static_cast<std::uint8_t>(c.base[slot] + 1);
                // faces of boundary cells stay on the boundary
                int ti = s.index[r - 1].at(top.key());
                int bi = s.index[r - 1].at(bottom.key());
                acc[ti] = (acc[ti] + sign_pos) % d;
                acc[bi] = (acc[bi] + sign_neg) % d;
                ++pos;
            }
            for (auto [row, coeff] : acc)
                if (coeff != 0) bm.entries[j].push_back({row, static_cast<std::uint32_t>(coeff)});
            std::sort(bm.entries[j].begin(), bm.entries[j].end());
        }
        s.cx.bnd[r] = std::move(bm);
    }
    return s;
}

double cube_sphere_cell_count(int n, int p, int r) {
    // C(n+1, r) (p+1)^{n+1-r} p^r (1 - ((p-1)/(p+1))^{n+1-r})
    double bin = static_cast<double>(binomial_u64(n + 1, r));
    double full = bin * std::pow(p + 1.0, n + 1 - r) * std::pow(double(p), r);
    return full * (1.0 - std::pow((p - 1.0) / (p + 1.0), n + 1 - r));
}

SphereProduct sphere_product(int n, int p, std::uint32_t d, std::uint64_t cell_budget) {
    SphereProduct sp{cube_sphere(n, p, d, cell_budget), {}};
    sp.prod = product_complex(sp.sphere.cx, sp.sphere.cx, cell_budget);
    return sp;
}

} // namespace latcode
