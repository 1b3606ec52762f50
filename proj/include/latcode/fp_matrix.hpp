#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "latcode/rng.hpp"

namespace latcode {

bool is_prime(std::uint64_t p);

// Dense matrix over the prime field F_p; immutable after construction.
class FpMatrix {
public:
    FpMatrix(int rows, int cols, std::uint32_t p);
    FpMatrix(int rows, int cols, std::uint32_t p, std::vector<std::uint32_t> entries);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    std::uint32_t p() const { return p_; }

    std::uint32_t at(int i, int j) const { return e_[static_cast<size_t>(i) * cols_ + j]; }
    const std::vector<std::uint32_t>& entries() const { return e_; }

    FpMatrix transposed() const;
    int rank() const;

    // true iff v (length rows) lies in the span of the columns mod p
    bool in_column_span(std::span<const std::uint32_t> v) const;

    bool operator==(const FpMatrix& o) const = default;

private:
    int rows_, cols_;
    std::uint32_t p_;
    std::vector<std::uint32_t> e_;
};

// n-by-k code generator matrix with i.i.d. uniform entries; requires 0 < k < n
// and p prime. Deterministic for a fixed seed.
FpMatrix random_code_generator(int n, int k, std::uint32_t p, std::uint64_t seed);
FpMatrix random_code_generator(int n, int k, std::uint32_t p, SplitRng& rng);

int rank_fp(const FpMatrix& m);
bool is_nondegenerate(const FpMatrix& g);

struct SystematicForm {
    std::vector<int> row_perm; // row_perm[i] = source row of permuted row i
    FpMatrix c;                // (n-k) x k block below the identity
};

// Row permutation and C with permuted G column-equivalent to [I; C]; the
// column span mod p (the code) is unchanged. Throws on degenerate input.
SystematicForm systematic_form(const FpMatrix& g);

// All p^k codewords of the column span; requires p^k to be small.
std::vector<std::vector<std::uint32_t>> enumerate_codewords(const FpMatrix& g,
                                                            std::uint64_t limit = 1u << 16);

} // namespace latcode
