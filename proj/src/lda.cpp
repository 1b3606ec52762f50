#include "latcode/lda.hpp"

#include <stdexcept>

namespace latcode {

namespace {

Lattice unpermuted_lattice(const ZMat& b0, const std::vector<int>& perm) {
    // b0 lives in permuted coordinates: row i of b0 is coordinate perm[i]
    ZMat b(b0.rows, b0.cols);
    for (int i = 0; i < b0.rows; ++i)
        for (int j = 0; j < b0.cols; ++j) b(perm[i], j) = b0(i, j);
    return Lattice::from_integer_basis(b);
}

} // namespace

LdaLattice build_lda(const FpMatrix& g) {
    int n = g.rows(), k = g.cols();
    std::uint32_t p = g.p();
    if (!(0 < k && k < n)) throw std::invalid_argument("build_lda: need 0 < k < n");
    auto sys = systematic_form(g); // throws on degenerate input

    ZMat b0(n, n);
    for (int i = 0; i < k; ++i) b0(i, i) = 1;
    for (int i = 0; i < n - k; ++i) {
        for (int j = 0; j < k; ++j) b0(k + i, j) = Int(sys.c.at(i, j));
        b0(k + i, k + i) = Int(p);
    }
    Lattice lat = unpermuted_lattice(b0, sys.row_perm);
    return LdaLattice(g, std::move(sys.c), std::move(sys.row_perm), std::move(b0), std::move(lat));
}

LdaLattice build_lda(int n, int k, std::uint32_t p, std::uint64_t seed) {
    return build_lda(random_code_generator(n, k, p, seed));
}

bool LdaLattice::contains(const ZVec& x) const {
    if (static_cast<int>(x.size()) != n_) throw std::invalid_argument("contains: wrong length");
    // permuted coordinates: the top block determines the codeword, the bottom
    // must match C * top mod p
    std::vector<std::uint32_t> top(k_);
    for (int i = 0; i < k_; ++i) {
        Int r = x[perm_[i]] % p_;
        if (r < 0) r += p_;
        top[i] = static_cast<std::uint32_t>(r.get_ui());
    }
    for (int i = 0; i < n_ - k_; ++i) {
        std::uint64_t s = 0;
        for (int j = 0; j < k_; ++j) s += static_cast<std::uint64_t>(c_.at(i, j)) * top[j] % p_;
        Int r = x[perm_[k_ + i]] % p_;
        if (r < 0) r += p_;
        if (r.get_ui() != s % p_) return false;
    }
    return true;
}

bool LdaLattice::contains_by_integer_solve(const ZVec& x) const {
    // B0 is block triangular: y_top = x_top, then p * y_bot = x_bot - C x_top
    ZVec xp(n_);
    for (int i = 0; i < n_; ++i) xp[i] = x[perm_[i]];
    for (int i = 0; i < n_ - k_; ++i) {
        Int s = xp[k_ + i];
        for (int j = 0; j < k_; ++j) s -= Int(c_.at(i, j)) * xp[j];
        if (s % p_ != 0) return false;
    }
    return true;
}

bool LdaLattice::contains_by_rank_test(const ZVec& x) const {
    std::vector<std::uint32_t> v(n_);
    for (int i = 0; i < n_; ++i) {
        Int r = x[i] % p_;
        if (r < 0) r += p_;
        v[i] = static_cast<std::uint32_t>(r.get_ui());
    }
    return g_.in_column_span(v);
}

} // namespace latcode
