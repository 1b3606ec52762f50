#include "latcode/fp_matrix.hpp"

#include <algorithm>
#include <stdexcept>

#include "latcode/util.hpp"

namespace latcode {

bool is_prime(std::uint64_t p) {
    if (p < 2) return false;
    for (std::uint64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

namespace {

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
    // extended euclid; a != 0 mod p
    std::int64_t t = 0, newt = 1, r = p, newr = a % p;
    while (newr != 0) {
        std::int64_t q = r / newr;
        std::int64_t tmp = t - q * newt;
        t = newt;
        newt = tmp;
        tmp = r - q * newr;
        r = newr;
        newr = tmp;
    }
    if (r != 1) throw std::logic_error("inv_mod: not invertible");
    if (t < 0) t += p;
    return static_cast<std::uint32_t>(t);
}

// in-place column elimination; returns rank, optionally records pivot rows
int eliminate(std::vector<std::uint32_t>& a, int rows, int cols, std::uint32_t p,
              std::vector<int>* pivot_rows = nullptr) {
    auto at = [&](int i, int j) -> std::uint32_t& { return a[static_cast<size_t>(i) * cols + j]; };
    int rank = 0;
    for (int c = 0; c < cols && rank < rows; ++c) {
        int piv = -1;
        for (int r = rank; r < rows; ++r)
            if (at(r, c) != 0) { piv = r; break; }
        if (piv < 0) continue;
        if (piv != rank)
            for (int j = 0; j < cols; ++j) std::swap(at(piv, j), at(rank, j));
        std::uint64_t inv = inv_mod(at(rank, c), p);
        for (int r = rank + 1; r < rows; ++r) {
            if (at(r, c) == 0) continue;
            std::uint64_t f = (static_cast<std::uint64_t>(at(r, c)) * inv) % p;
            for (int j = c; j < cols; ++j) {
                std::uint64_t v = at(r, j) + (p - static_cast<std::uint32_t>((f * at(rank, j)) % p));
                at(r, j) = static_cast<std::uint32_t>(v % p);
            }
        }
        if (pivot_rows) pivot_rows->push_back(c);
        ++rank;
    }
    return rank;
}

} // namespace

FpMatrix::FpMatrix(int rows, int cols, std::uint32_t p)
    : rows_(rows), cols_(cols), p_(p), e_(static_cast<size_t>(rows) * cols, 0) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("FpMatrix: negative shape");
    if (!is_prime(p)) throw std::invalid_argument("FpMatrix: p must be prime");
}

FpMatrix::FpMatrix(int rows, int cols, std::uint32_t p, std::vector<std::uint32_t> entries)
    : FpMatrix(rows, cols, p) {
    if (entries.size() != e_.size()) throw std::invalid_argument("FpMatrix: wrong entry count");
    for (auto v : entries)
        if (v >= p) throw std::invalid_argument("FpMatrix: entry out of range");
    e_ = std::move(entries);
}

FpMatrix FpMatrix::transposed() const {
    FpMatrix t(cols_, rows_, p_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) t.e_[static_cast<size_t>(j) * rows_ + i] = at(i, j);
    return t;
}

int FpMatrix::rank() const {
    auto work = e_;
    return eliminate(work, rows_, cols_, p_);
}

bool FpMatrix::in_column_span(std::span<const std::uint32_t> v) const {
    if (static_cast<int>(v.size()) != rows_) throw std::invalid_argument("in_column_span: bad length");
    // rank([M | v]) == rank(M)
    std::vector<std::uint32_t> aug(static_cast<size_t>(rows_) * (cols_ + 1));
    for (int i = 0; i < rows_; ++i) {
        for (int j = 0; j < cols_; ++j) aug[static_cast<size_t>(i) * (cols_ + 1) + j] = at(i, j);
        aug[static_cast<size_t>(i) * (cols_ + 1) + cols_] = v[i] % p_;
    }
    int r0 = rank();
    int r1 = eliminate(aug, rows_, cols_ + 1, p_);
    return r0 == r1;
}

FpMatrix random_code_generator(int n, int k, std::uint32_t p, SplitRng& rng) {
    if (!(0 < k && k < n)) throw std::invalid_argument("random_code_generator: need 0 < k < n");
    if (!is_prime(p)) throw std::invalid_argument("random_code_generator: p must be prime");
    std::vector<std::uint32_t> e(static_cast<size_t>(n) * k);
    for (auto& v : e) v = static_cast<std::uint32_t>(rng.below(p));
    return FpMatrix(n, k, p, std::move(e));
}

FpMatrix random_code_generator(int n, int k, std::uint32_t p, std::uint64_t seed) {
    SplitRng rng(seed);
    return random_code_generator(n, k, p, rng);
}

int rank_fp(const FpMatrix& m) { return m.rank(); }

bool is_nondegenerate(const FpMatrix& g) {
    return g.cols() <= g.rows() && g.rank() == g.cols();
}

SystematicForm systematic_form(const FpMatrix& g) {
    if (!is_nondegenerate(g)) throw std::invalid_argument("systematic_form: degenerate generator");
    int n = g.rows(), k = g.cols();
    std::uint32_t p = g.p();

    // greedy row selection: pick rows making the top k-by-k block invertible
    std::vector<int> chosen;
    std::vector<std::uint32_t> acc; // chosen rows, re-eliminated each time (k is small)
    for (int i = 0; i < n && static_cast<int>(chosen.size()) < k; ++i) {
        std::vector<std::uint32_t> trial = acc;
        for (int j = 0; j < k; ++j) trial.push_back(g.at(i, j));
        auto work = trial;
        int r = eliminate(work, static_cast<int>(trial.size()) / k, k, p);
        if (r == static_cast<int>(chosen.size()) + 1) {
            chosen.push_back(i);
            acc = std::move(trial);
        }
    }
    if (static_cast<int>(chosen.size()) != k) throw std::logic_error("systematic_form: rank bookkeeping");

    std::vector<int> perm = chosen;
    for (int i = 0; i < n; ++i)
        if (std::find(chosen.begin(), chosen.end(), i) == chosen.end()) perm.push_back(i);

    // invert the top block A over F_p: C = B A^{-1}
    std::vector<std::uint32_t> a(static_cast<size_t>(k) * 2 * k, 0);
    auto at = [&](int i, int j) -> std::uint32_t& { return a[static_cast<size_t>(i) * 2 * k + j]; };
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) at(i, j) = g.at(perm[i], j);
        at(i, k + i) = 1;
    }
    for (int c = 0; c < k; ++c) {
        int piv = -1;
        for (int r = c; r < k; ++r)
            if (at(r, c) != 0) { piv = r; break; }
        if (piv < 0) throw std::logic_error("systematic_form: singular top block");
        if (piv != c)
            for (int j = 0; j < 2 * k; ++j) std::swap(at(piv, j), at(c, j));
        std::uint64_t inv = inv_mod(at(c, c), p);
        for (int j = 0; j < 2 * k; ++j) at(c, j) = static_cast<std::uint32_t>((at(c, j) * inv) % p);
        for (int r = 0; r < k; ++r) {
            if (r == c || at(r, c) == 0) continue;
            std::uint64_t f = at(r, c);
            for (int j = 0; j < 2 * k; ++j) {
                std::uint64_t v = at(r, j) + (p - static_cast<std::uint32_t>((f * at(c, j)) % p));
                at(r, j) = static_cast<std::uint32_t>(v % p);
            }
        }
    }

    FpMatrix cmat(n - k, k, p);
    std::vector<std::uint32_t> ce(static_cast<size_t>(n - k) * k, 0);
    for (int i = 0; i < n - k; ++i)
        for (int j = 0; j < k; ++j) {
            std::uint64_t s = 0;
            for (int l = 0; l < k; ++l)
                s += static_cast<std::uint64_t>(g.at(perm[k + i], l)) * at(l, k + j) % p;
            ce[static_cast<size_t>(i) * k + j] = static_cast<std::uint32_t>(s % p);
        }
    return SystematicForm{perm, FpMatrix(n - k, k, p, std::move(ce))};
}

std::vector<std::vector<std::uint32_t>> enumerate_codewords(const FpMatrix& g, std::uint64_t limit) {
    int n = g.rows(), k = g.cols();
    std::uint32_t p = g.p();
    std::uint64_t total = 1;
    for (int i = 0; i < k; ++i) {
        total *= p;
        if (total > limit) throw resource_error("enumerate_codewords", limit, total);
    }
    std::vector<std::vector<std::uint32_t>> out;
    out.reserve(total);
    std::vector<std::uint32_t> coeff(k, 0);
    for (std::uint64_t t = 0; t < total; ++t) {
        std::vector<std::uint32_t> w(n, 0);
        for (int j = 0; j < k; ++j) {
            if (coeff[j] == 0) continue;
            for (int i = 0; i < n; ++i)
                w[i] = (w[i] + coeff[j] * g.at(i, j)) % p;
        }
        out.push_back(std::move(w));
        for (int j = 0; j < k; ++j) {
            if (++coeff[j] < p) break;
            coeff[j] = 0;
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace latcode
