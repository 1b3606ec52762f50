#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "latcode/lattice.hpp"
#include "latcode/util.hpp"

namespace latcode {

// Sparse matrix over F_d in column-major adjacency form: both the boundary
// and its transpose get traversed, so each column keeps (row, coeff) pairs
// sorted by row.
struct SparseMat {
    int rows = 0, cols = 0;
    std::vector<std::vector<std::pair<int, std::uint32_t>>> entries;

    SparseMat() = default;
    SparseMat(int r, int c) : rows(r), cols(c), entries(c) {}
};

// Chain complex over the prime field F_d with labeled cells; boundary
// matrices satisfy bnd[r-1] * bnd[r] = 0 (checked by validate()).
struct ChainComplex {
    std::uint32_t d = 2;
    int dim = 0;
    std::vector<std::vector<std::string>> labels; // labels[r], unique per dimension
    std::vector<SparseMat> bnd;                   // bnd[r]: C_r -> C_{r-1}, r in [1, dim]

    int cells(int r) const {
        return (r < 0 || r > dim) ? 0 : static_cast<int>(labels[r].size());
    }
    void validate() const; // throws std::logic_error on any broken invariant
};

using Chain = std::vector<std::uint32_t>; // dense coefficients mod d

Chain boundary_apply(const ChainComplex& cx, int r, const Chain& v);
int chain_weight(const Chain& v);

// dense rank of bnd[r] over F_d; 0 for out-of-range r
int boundary_rank(const ChainComplex& cx, int r, std::uint64_t dense_budget = 1u << 26);

// dim ker bnd[r] - rank bnd[r+1]
int betti(const ChainComplex& cx, int r, std::uint64_t dense_budget = 1u << 26);

// --------------------------------------------------------------------------
// simplex sphere: boundary of the (n+1)-simplex, cells = vertex subsets

struct SimplexSphere {
    int n = 0;
    ChainComplex cx;
    std::vector<std::vector<std::uint32_t>> masks;           // per dim, sorted
    std::vector<std::unordered_map<std::uint32_t, int>> index;

    int cell_index(int r, std::uint32_t mask) const;
};

SimplexSphere simplex_sphere(int n, std::uint32_t d = 2, std::uint64_t cell_budget = 1u << 24);

// v cup T on the simplex sphere (F_2): cells meeting T are dropped, others
// extended by T; extended linearly. T is a vertex bitmask.
Chain cup_with_set(const SimplexSphere& s, int r, const Chain& v, std::uint32_t t_mask);

// --------------------------------------------------------------------------
// torus from a full-rank integral lattice, cellulated by unit hypercubes

struct TorusCell {
    std::uint32_t direction_mask = 0; // S, the interval directions
    ZVec coset;                       // canonical representative
};

struct TorusComplex {
    int n = 0;
    std::uint32_t d = 2;
    HnfMatrix basis; // upper triangular in the reversed convention
    Int cosets;
    ChainComplex cx;
    std::vector<std::vector<TorusCell>> cells; // per dim, in index order

    ZVec canonical_coset(ZVec x) const;
    std::uint64_t coset_index(const ZVec& canonical) const;
    int cell_index(int r, std::uint32_t mask, const ZVec& coset_canonical) const;
};

TorusComplex torus_from_lattice(const Lattice& l, std::uint32_t d = 2,
                                std::uint64_t cell_budget = 1u << 24);

// --------------------------------------------------------------------------
// products

struct ProductComplex {
    ChainComplex cx;
    int dim_a = 0, dim_b = 0;
    // pairs[r] lists (ra, ia, ib) in index order; offsets[r][ra] is the base
    // index of the (ra, r-ra) block
    std::vector<std::vector<std::array<int, 3>>> pairs;
    std::vector<std::vector<int>> offsets;
    std::vector<int> cells_a, cells_b; // per-dimension counts of the factors

    int cell_index(int r, int ra, int ia, int ib) const;
};

// graded Leibniz boundary with signs mod d; requires matching field
ProductComplex product_complex(const ChainComplex& a, const ChainComplex& b,
                               std::uint64_t cell_budget = 1u << 24);

} // namespace latcode
