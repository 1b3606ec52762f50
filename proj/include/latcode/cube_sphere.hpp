#pragma once

#include <array>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "latcode/chain_complex.hpp"

namespace latcode {

// Cell of the boundary-of-a-hypercube cellulation of S^n: one slot per
// coordinate of the ambient (n+1)-cube of side p. A slot is either a 0-cell
// at integer x in [0, p] or the unit interval [x, x+1] (x in [0, p-1]).
// On-sphere means some slot is a 0-cell at 0 or p.
struct CubeCell {
    static constexpr int max_slots = 12;
    std::uint8_t m = 0;                    // number of slots (n+1)
    std::uint16_t interval_mask = 0;       // bit j set: slot j is an interval
    std::array<std::uint8_t, max_slots> base{};

    int dim() const { return __builtin_popcount(interval_mask); }
    bool is_interval(int j) const { return (interval_mask >> j) & 1; }

    std::uint64_t key() const; // packs (interval, base) per slot; unique for p <= 30
    bool operator==(const CubeCell& o) const {
        return m == o.m && interval_mask == o.interval_mask && base == o.base;
    }
};

bool cube_cell_on_sphere(const CubeCell& c, int p);

struct CubeSphere {
    int n = 0, p = 0;
    ChainComplex cx;
    std::vector<std::vector<CubeCell>> cells;                    // per dim
    std::vector<std::unordered_map<std::uint64_t, int>> index;   // key -> cell id

    int cell_index(int r, const CubeCell& c) const;
};

// Boundary of the side-p (n+1)-cube cellulated by unit cubes.
CubeSphere cube_sphere(int n, int p, std::uint32_t d = 2, std::uint64_t cell_budget = 1u << 24);

// closed form for the number of r-cells
double cube_sphere_cell_count(int n, int p, int r);

// S^n x S^n with the cube-sphere cellulation; the contraction sweep and the
// hypersphere product code build on this.
struct SphereProduct {
    CubeSphere sphere; // both factors identical
    ProductComplex prod;
};

SphereProduct sphere_product(int n, int p, std::uint32_t d = 2,
                             std::uint64_t cell_budget = 1u << 24);

} // namespace latcode
