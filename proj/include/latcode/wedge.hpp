#pragma once

#include <optional>
#include <vector>

#include "latcode/lattice.hpp"
#include "latcode/rational.hpp"

namespace latcode {

// Exact-rational vector in the m-th exterior power of R^n, coordinates on the
// lex-ordered m-subsets of {0..n-1}. The ambient basis is orthonormal, so the
// squared norm is the plain sum of squared coefficients.
struct WedgeVector {
    int n = 0, m = 0;
    QVec coeff; // size C(n, m)

    Rat norm2() const;
    bool is_zero() const;
};

// lex-ordered m-subsets of {0..n-1}
std::vector<std::vector<int>> lex_subsets(int n, int m);
int subset_rank(int n, const std::vector<int>& subset); // position in lex order

// Plücker coordinates (all m-by-m minors in lex order) of the given columns.
// Dependent columns give the zero vector.
WedgeVector wedge(const QMat& columns);
WedgeVector wedge(const std::vector<QVec>& columns, int n);

// The rank-C(rank,m) lattice generated by wedges of basis m-subsets, living in
// C(n,m) dimensions. vol identity: vol2(result) = vol2(L)^{C(rank-1, m-1)}.
Lattice exterior_power(const Lattice& l, int m);

// true iff x = x_1 ^ ... ^ x_m for some real vectors (all Grassmann-Pluecker
// quadratic relations vanish; exact in rational arithmetic)
bool is_decomposable(const WedgeVector& x);

// |X|: lower bound on the volume of any closed chain representing class X.
double calibration_bound(const WedgeVector& x); // throws on zero vector
Rat calibration_bound2(const WedgeVector& x);   // exact squared value

// Lower estimate of max over unit split V of (V, X): the coordinate-axis scan
// already certifies >= |X| / sqrt(C(n,m)); random alternating local search can
// only improve it; decomposable X returns |X| exactly.
double best_split_overlap(const WedgeVector& x, int starts = 64, std::uint64_t seed = 0);

// min(exact Hermite constant where known (r <= 8 and r = 24), 1 + r/4)
double hermite_upper(int r);
bool hermite_is_exact(int r);

struct ShortestWedgeReport {
    int n = 0, m = 0, wedge_rank = 0;
    Rat shortest_norm2;
    double shortest_norm = 0;
    double norm_bound = 0;          // sqrt(gamma_{C(n,m)}) vol(L)^{m/n}
    bool decomposable = false;
    double rankin_value = 0;        // gamma_{n,m}(L) as searched
    bool rankin_certified = false;
    double hermite_of_wedge_rank = 0;
    // the non-splitness criterion gamma_{n,m}(L) >= gamma_{C(n,m)}:
    // +1 applies, -1 fails, 0 inconclusive at desk scale
    int criterion = 0;
    double improved_ratio = 0;      // |X|^2 / best_split_overlap, informational
};

ShortestWedgeReport shortest_wedge_report(const Lattice& l, int m,
                                          std::optional<Rat> radius2 = std::nullopt,
                                          std::uint64_t budget = 1u << 24);

} // namespace latcode
