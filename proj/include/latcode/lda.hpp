#pragma once

#include "latcode/fp_matrix.hpp"
#include "latcode/lattice.hpp"

namespace latcode {

// The lift of a random linear code over F_p to a sublattice of Z^n:
// all integer vectors whose residue mod p is a codeword. Holds the
// systematic-form bookkeeping so that membership is a direct check.
class LdaLattice {
public:
    int n() const { return n_; }
    int k() const { return k_; }
    std::uint32_t p() const { return p_; }

    const FpMatrix& generator() const { return g_; }
    const FpMatrix& c_block() const { return c_; }
    const std::vector<int>& row_perm() const { return perm_; }

    // [[I, 0], [C, pI]] in the permuted row order
    const ZMat& b0() const { return b0_; }
    // the lattice in the original coordinate order
    const Lattice& lattice() const { return lattice_; }

    // x mod p is a codeword (fast path through the systematic form)
    bool contains(const ZVec& x) const;
    // independent oracle: solve B0 y = x over the integers
    bool contains_by_integer_solve(const ZVec& x) const;
    // independent oracle: rank test against the raw generator matrix
    bool contains_by_rank_test(const ZVec& x) const;

private:
    friend LdaLattice build_lda(const FpMatrix& g);
    LdaLattice(FpMatrix g, FpMatrix c, std::vector<int> perm, ZMat b0, Lattice lat)
        : n_(g.rows()), k_(g.cols()), p_(g.p()), g_(std::move(g)), c_(std::move(c)),
          perm_(std::move(perm)), b0_(std::move(b0)), lattice_(std::move(lat)) {}

    int n_, k_;
    std::uint32_t p_;
    FpMatrix g_;
    FpMatrix c_;
    std::vector<int> perm_;
    ZMat b0_;
    Lattice lattice_;
};

// throws on degenerate g or k outside (0, n)
LdaLattice build_lda(const FpMatrix& g);
LdaLattice build_lda(int n, int k, std::uint32_t p, std::uint64_t seed);

} // namespace latcode
