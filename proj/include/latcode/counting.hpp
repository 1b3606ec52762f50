#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "latcode/fp_matrix.hpp"
#include "latcode/lattice.hpp"
#include "latcode/lda.hpp"

namespace latcode {

// Partial lattice generator matrix whose first columns are in Hermite normal
// form; tracks the exact telescoping vol(K_a)^2 = vol(K_{a-1})^2 |pi(v_a)|^2.
class ColumnChain {
public:
    explicit ColumnChain(int ambient);

    int ambient() const { return ambient_; }
    int length() const { return static_cast<int>(pivot_rows_.size()); }
    const std::vector<int>& pivot_rows() const { return pivot_rows_; } // 0-based
    const ZMat& cols() const { return cols_; }                        // ambient x length
    const std::vector<Rat>& proj_len2() const { return proj_len2_; }
    const Rat& vol2() const { return vol2_; }

    // Appends column v (full ambient length, zeros below pivot_row) after
    // validating the Hermite-prefix conditions; exact projected length is
    // computed against the span of the existing columns.
    ColumnChain extended(int pivot_row, const ZVec& v) const;

    HnfMatrix to_hnf() const;

private:
    int ambient_;
    std::vector<int> pivot_rows_;
    ZMat cols_;
    std::vector<Rat> proj_len2_;
    Rat vol2_ = 1;
};

struct PrimitiveFactorization {
    HnfMatrix m_kp; // primitive part, same pivot rows
    ZMat f;         // upper triangular, positive diagonal; m_kp * f reconstructs
    Int det_f;
};

PrimitiveFactorization factorize_primitive(const HnfMatrix& m);

// All valid next columns v (full ambient length, positive pivot entry, zeros
// below, earlier pivot-row entries reduced) with |pi_{a-1}(v)|^2 <= r2,
// enumerated through the factor lattice and its det(F) lifts. Complete.
std::vector<ZVec> enumerate_extensions(const ColumnChain& chain, int pivot_row, const Rat& r2,
                                       std::uint64_t budget = 1u << 24);

std::uint64_t count_column_choices(const ColumnChain& chain, int pivot_row, const Rat& r2,
                                   std::uint64_t budget = 1u << 24);

// The closed-form bound vol(K_{a-1}) V_d(r + sqrt(d)) with d = i_a - a + 1.
double column_count_bound(const ColumnChain& chain, int pivot_row, double r);

// Predicate on generator columns; must define a subgroup of Z^n (membership
// of every basis column then certifies the whole lattice).
using ColumnPredicate = std::function<bool(const ZVec&)>;

ColumnPredicate always_true_predicate();
ColumnPredicate multiple_of_predicate(const Int& p);      // x in p Z^n
ColumnPredicate code_consistency_predicate(FpMatrix g);   // x mod p in code(g)
ColumnPredicate lattice_membership_predicate(Lattice l);  // x in L (integral L)

struct MinVolResult {
    bool found = false;
    HnfMatrix witness;
    Rat vol2;
    std::uint64_t nodes = 0;
    bool exact = true; // search ran to completion (errors are thrown instead)
};

// Minimum-volume rank-m integral sublattice of Z^n whose generator columns all
// satisfy the predicate, with vol^2 <= h2_cap; complete branch-and-bound over
// pivot sequences (i_a <= n-m+a) and column extensions. A miss proves
// nonexistence below the cap. Tie-break: lexicographically smallest
// (pivot rows, column entries).
MinVolResult min_volume_sublattice(int n, int m, const ColumnPredicate& pred, const Rat& h2_cap,
                                   std::uint64_t budget = 1u << 26);

// Exact Rankin invariant of an integral lattice via the complete search,
// cross-checked against the enumerative rankin(); certified.
RankinResult rankin_exact(const Lattice& l, int m, std::uint64_t budget = 1u << 26);

struct FirstMomentTrial {
    std::uint64_t index = 0;
    bool found = false;
    bool complete = true; // false if this trial hit its budget
    Rat min_vol2;         // meaningful when found
    double runtime_ms = 0;
};

struct FirstMomentReport {
    int n = 0, k = 0, m = 0, m_effective = 0;
    std::uint32_t p = 0;
    Rat c;
    double x = 0;
    std::uint64_t seed = 0;
    int trials = 0;
    Rat volume_cap; // (c p)^{min(m, n-k)}
    int found_count = 0;
    double p_hat = 0, wilson_lo = 0, wilson_hi = 0;
    double theorem_bound = 0; // m c^m x^{n-m+1} at the effective m
    bool clamped = false;
    bool complete = true;
    std::vector<FirstMomentTrial> rows;
    std::string note; // desk-scale caveat
};

FirstMomentReport first_moment_experiment(int n, int k, std::uint32_t p, int m, const Rat& c,
                                          double x, int trials, std::uint64_t seed,
                                          int threads = 1, std::uint64_t budget = 1u << 26);

struct RankinBoundReport {
    int n = 0, k = 0, m = 0;
    std::uint32_t p = 0;
    Rat c;
    Rat min_vol2;      // exact minimum consistent sublattice volume squared
    Rat rhs_vol2;      // (c p)^{2 min(m, n-k)}
    bool holds = false; // min_vol2 >= rhs_vol2, equivalent to the corollary
    double gamma = 0;   // exact gamma_{n,m}(L0)
    double gamma_bound = 0;
};

RankinBoundReport rankin_lower_bound_check(const LdaLattice& l0, int m, const Rat& c,
                                           std::uint64_t budget = 1u << 26);

double wilson_interval_low(int successes, int trials, double z = 1.959963984540054);
double wilson_interval_high(int successes, int trials, double z = 1.959963984540054);

} // namespace latcode
