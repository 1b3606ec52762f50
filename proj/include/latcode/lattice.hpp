#pragma once

#include <optional>
#include <vector>

#include "latcode/rational.hpp"
#include "latcode/util.hpp"

namespace latcode {

// Hermite normal form in the reversed row/column convention used throughout
// this project: pivot rows i_1 < i_2 < ... < i_m, column j vanishes below row
// i_j, pivots are positive, and pivot-row entries to the right of a pivot are
// reduced into [0, pivot).
struct HnfMatrix {
    ZMat m;
    std::vector<int> pivot_rows; // 0-based, strictly increasing

    bool operator==(const HnfMatrix& o) const { return m == o.m && pivot_rows == o.pivot_rows; }
};

// Unique HNF of a full-column-rank integer matrix; the column span over Z is
// preserved and the map is idempotent.
HnfMatrix hnf(const ZMat& m);
bool is_hnf(const ZMat& m, std::vector<int>* pivot_rows = nullptr);

// Conversion to the standard (textbook) column HNF, for interop only.
ZMat hnf_standard_convention(const ZMat& m);

// Basis of {x : a x = 0} over Z; the result is primitive. May have 0 columns.
ZMat integer_kernel(const ZMat& a);

// For primitive n-by-m M, columns q_1..q_{n-m} with [M | Q] unimodular.
ZMat unimodular_completion(const ZMat& m);

// Lattice given by an exact-rational basis (n-by-m, full column rank) or, for
// basis-free uses (e.g. the hexagonal lattice), by its Gram matrix alone.
class Lattice {
public:
    static Lattice from_basis(QMat basis);
    static Lattice from_integer_basis(const ZMat& basis);
    static Lattice from_gram(int ambient_dim, QMat gram);

    int ambient_dim() const { return ambient_; }
    int rank() const { return rank_; }
    bool integral() const { return integral_; }
    bool has_basis() const { return basis_.has_value(); }
    const QMat& basis() const;
    ZMat integer_basis() const; // requires integral
    const QMat& gram() const { return gram_; }

    Rat vol2() const { return vol2_; }
    double volume() const;

    // point with coefficient vector c is basis * c; norm^2 = c^T G c
    Rat norm2_of_coeffs(const ZVec& c) const;
    QVec coords_of_coeffs(const ZVec& c) const; // requires basis

    Lattice scaled(const Rat& c) const; // basis scaled by c (gram by c^2)

private:
    Lattice() = default;
    int ambient_ = 0, rank_ = 0;
    bool integral_ = false;
    std::optional<QMat> basis_;
    QMat gram_;
    Rat vol2_;
};

// Canonical equality: unimodular column transforms identified (via HNF after
// clearing denominators). Both lattices need bases.
bool lattice_equal(const Lattice& a, const Lattice& b);

// The unique primitive lattice spanning the same subspace and containing L.
Lattice primitive_closure(const Lattice& l);
bool is_primitive(const Lattice& l);

// All vectors of span(L) with integral inner products against L.
Lattice polar(const Lattice& l);

// All integer points orthogonal to L; requires L primitive with rank < n.
Lattice orthogonal(const Lattice& l);

// Projection of Z^n onto the orthogonal complement of span(L); requires L
// primitive with rank < n. Computed as polar(orthogonal(L)).
Lattice factor(const Lattice& l);

// I - B (B^T B)^{-1} B^T, the orthogonal projector killing span(basis).
QMat complement_projector(const QMat& basis, int ambient_dim);

bool lattice_contains_point(const Lattice& l, const QVec& point);

struct LatticePoint {
    ZVec coeffs;
    Rat norm2; // squared distance to the enumeration center
};

// Every lattice point within squared distance r2 of center (empty center =
// origin). Exact; complete by construction. center requires a basis.
std::vector<LatticePoint> enumerate_points(const Lattice& l, const QVec& center, const Rat& r2,
                                           std::uint64_t budget = 1u << 24);
std::vector<LatticePoint> enumerate_points(const Lattice& l, const Rat& r2,
                                           std::uint64_t budget = 1u << 24);

double ball_volume(int d, double r);

// A nonzero vector of minimum norm, by complete enumeration inside the
// shortest-basis-vector radius.
LatticePoint shortest_vector(const Lattice& l, std::uint64_t budget = 1u << 24);

struct RankinResult {
    double value = 0;     // (vol(v_1..v_m) / vol(L)^{m/n})^2, minimized
    Rat min_vol2;         // exact squared volume of the best tuple
    Rat vol2;             // exact squared volume of L
    int n = 0, m = 0;
    bool certified = false;
    Rat radius2;          // squared search radius actually used
    ZMat witness;         // coefficient vectors of the minimizing tuple
};

// Min over m-tuples of enumerated lattice vectors with norm^2 <= radius2.
// certified only for m = 1 (self-shrinking radius) and m = rank (identically
// 1); the counting module upgrades integral lattices to exact.
RankinResult rankin(const Lattice& l, int m, std::optional<Rat> radius2 = std::nullopt,
                    std::uint64_t budget = 1u << 24);

// Upper bound on the squared diameter of the Voronoi cell: (sum of basis
// lengths)^2 bounded via Cauchy-Schwarz by rank * sum of squared lengths.
Rat voronoi_diameter2_bound(const Lattice& l);

} // namespace latcode
