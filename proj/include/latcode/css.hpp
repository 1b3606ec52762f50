#pragma once

#include <memory>
#include <optional>
#include <variant>

#include "latcode/chain_complex.hpp"
#include "latcode/cube_sphere.hpp"
#include "latcode/wedge.hpp"

namespace latcode {

struct TorusProvenance {
    std::shared_ptr<const TorusComplex> complex;
    int q = 0;
};
struct SimplexProvenance {
    std::shared_ptr<const SimplexSphere> complex;
    int q = 0;
};
struct SphereProductProvenance {
    std::shared_ptr<const SphereProduct> complex;
    int q = 0;
};
using Provenance =
    std::variant<std::monostate, TorusProvenance, SimplexProvenance, SphereProductProvenance>;

// CSS code as the pair (d2, d1): d2 has one column per Z stabilizer over the
// N qubits, d1 has one row per X stabilizer; d1 d2 = 0 over F_d.
struct CssCode {
    std::uint32_t d = 2;
    int nqubits = 0;
    SparseMat d2; // N rows (qubits), one column per Z stabilizer
    SparseMat d1; // column per qubit listing its X stabilizers (rows)
    Provenance prov;

    int z_stabilizers() const { return d2.cols; }
    int x_stabilizers() const { return d1.rows; }
    void check_commutation() const; // throws unless d1 d2 = 0
};

CssCode css_from_complex(const ChainComplex& cx, int q);
CssCode css_from_torus(std::shared_ptr<const TorusComplex> t, int q);
CssCode css_from_simplex(std::shared_ptr<const SimplexSphere> s, int q);
CssCode css_from_sphere_product(std::shared_ptr<const SphereProduct> sp, int q);

// K = N - rank(d2) - rank(d1) over F_d
int logical_count(const CssCode& code, std::uint64_t dense_budget = 1u << 26);

// least W bounding every row and column weight of both matrices
int weight_w(const CssCode& code);

enum class Side { Z, X };

// Exact minimum logical weight by kernel enumeration (F_2 only); nullopt when
// there are no logicals on that side. Budget counts enumerated kernel vectors.
std::optional<long> distance_exact(const CssCode& code, Side side,
                                   std::uint64_t budget = 1u << 26);

// Exact distance for q = 1 complexes over F_2 (each qubit touches at most two
// stabilizers on the graph side): per-homology-class labeled BFS.
long distance_cycle_q1(const CssCode& code, Side side = Side::Z);

// Indicator of the q-cells with direction set S and the complementary
// coordinates pinned to `offsets` on a torus code; certified nontrivial
// against the dual plane before returning.
struct PlaneLogical {
    Chain z_plane;
    Chain x_plane_dual;
    long weight = 0;
    bool z_is_cycle = false, x_commutes = false;
    int pairing = 0; // odd = certified nontrivial
};
PlaneLogical plane_logical(const CssCode& code, std::uint32_t s_mask, const ZVec& offsets);

struct SoundnessEntry {
    bool vacuous = true;
    long num = 0, den = 1; // min ratio wt(boundary)/coset-weight as a fraction
    double value = 0;
    std::uint64_t samples = 0;
};

struct SoundnessProfile {
    int w_max = 0;
    bool exhaustive = true;
    std::vector<SoundnessEntry> z, x; // index by w, entry 0 unused
};

enum class SoundnessMode { Exhaustive, Sampled };

// epsilon(w): min over weight-w v with nonzero syndrome of
// wt(syndrome) / min_{cycle u} wt(v + u). Exhaustive mode is exact; sampled
// mode reports an upper bound with the sample count. F_2 only.
SoundnessProfile soundness_profile(const CssCode& code, int w_max, SoundnessMode mode,
                                   std::uint64_t seed = 0, std::uint64_t samples_per_weight = 200,
                                   std::uint64_t budget = 1u << 26);

// x = (boundary of v) cup {1} on the simplex-sphere code: same boundary as v,
// weight at most wt(boundary of v).
Chain simplex_contraction(const CssCode& code, const Chain& v);

struct SweepResult {
    Chain v_f;           // cycle: v + all moves
    long moved_weight = 0; // wt(v + v_f)
    long boundary_weight = 0;
    long steps = 0;
    long max_intermediate_boundary = 0;
    double c0 = 0; // moved_weight / (p * n * boundary_weight), 0 when boundary empty
};

// Pinned certificate constant: wt(v + v_f) <= sweep_c0 * p * n * wt(dv).
inline constexpr double sweep_c0 = 6.0;

// Coordinate sweep on the hypersphere product code: clears the top cap,
// sweeps the first coordinate down, collapses at the bottom cap, then repeats
// on the second factor. Intermediate boundary weight never exceeds wt(dv)
// (asserted), the result is a cycle, and the moved weight obeys the pinned
// certificate above.
SweepResult sphere_product_contraction(const CssCode& code, const Chain& v);

// Calibration lower bound |X| for a torus homology class in wedge coordinates.
double torus_calibration_bound(const CssCode& code, const WedgeVector& x);

// Minimum closed-walk length with winding vector `cls` on the q=1 torus code,
// by breadth-first search on the integer-grid cover. Oracle for the
// calibration bound.
long torus_class_min_walk(const CssCode& code, const ZVec& cls, std::uint64_t budget = 1u << 24);

} // namespace latcode
