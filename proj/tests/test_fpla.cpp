#include <doctest.h>

#include <cmath>
#include <set>

#include "latcode/fp_matrix.hpp"
#include "latcode/util.hpp"

using namespace latcode;

namespace {

// all p^k codewords as sorted vectors; independent of in_column_span
std::set<std::vector<std::uint32_t>> codeword_set(const FpMatrix& g) {
    auto words = enumerate_codewords(g);
    return {words.begin(), words.end()};
}

} // namespace

TEST_CASE("random generator shape, range, determinism") {
    FpMatrix g = random_code_generator(4, 2, 3, 42);
    CHECK(g.rows() == 4);
    CHECK(g.cols() == 2);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 2; ++j) CHECK(g.at(i, j) < 3);
    CHECK(random_code_generator(4, 2, 3, 42) == g);
    CHECK(!(random_code_generator(4, 2, 3, 43) == g));

    CHECK_THROWS_AS(random_code_generator(4, 4, 3, 1), std::invalid_argument);
    CHECK_THROWS_AS(random_code_generator(4, 5, 3, 1), std::invalid_argument);
    CHECK_THROWS_AS(random_code_generator(4, 2, 4, 1), std::invalid_argument); // composite p
    CHECK_THROWS_AS(random_code_generator(4, 0, 3, 1), std::invalid_argument);
}

TEST_CASE("entry uniformity: chi-square at significance 0.001") {
    // thresholds chi2_{0.999} for df = p-1
    const struct { std::uint32_t p; double threshold; } cases[] = {
        {2, 10.828}, {3, 13.816}, {5, 18.467}};
    for (auto [p, threshold] : cases) {
        std::vector<std::uint64_t> counts(p, 0);
        std::uint64_t draws = 0;
        for (std::uint64_t s = 0; s < 10000; ++s) {
            FpMatrix g = random_code_generator(4, 2, p, 777000 + s);
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 2; ++j) ++counts[g.at(i, j)];
            draws += 8;
        }
        double expect = double(draws) / p, chi2 = 0;
        for (auto c : counts) chi2 += (c - expect) * (c - expect) / expect;
        CHECK(chi2 < threshold);
    }
}

TEST_CASE("rank over F_p") {
    FpMatrix id3(3, 3, 2, {1, 0, 0, 0, 1, 0, 0, 0, 1});
    CHECK(rank_fp(id3) == 3);
    FpMatrix zero(3, 4, 2);
    CHECK(rank_fp(zero) == 0);
    FpMatrix ones(2, 2, 2, {1, 1, 1, 1});
    CHECK(rank_fp(ones) == 1);
}

TEST_CASE("rank equals rank of the transpose") {
    SplitRng rng(9001);
    for (int t = 0; t < 200; ++t) {
        int n = 1 + int(rng.below(6)), m = 1 + int(rng.below(6));
        std::uint32_t p = (t % 3 == 0) ? 2 : (t % 3 == 1 ? 3 : 5);
        std::vector<std::uint32_t> e(std::size_t(n) * m);
        for (auto& x : e) x = std::uint32_t(rng.below(p));
        FpMatrix m1(n, m, p, e);
        CHECK(rank_fp(m1) == rank_fp(m1.transposed()));
    }
}

TEST_CASE("non-degeneracy") {
    // [I_k; 0]
    FpMatrix g(4, 2, 3, {1, 0, 0, 1, 0, 0, 0, 0});
    CHECK(is_nondegenerate(g));
    // two equal columns
    FpMatrix h(4, 2, 3, {1, 1, 2, 2, 0, 0, 1, 1});
    CHECK(!is_nondegenerate(h));
}

TEST_CASE("non-degenerate fraction matches the product formula within 3 sigma") {
    const struct { int n, k; std::uint32_t p; } cases[] = {{6, 3, 2}, {8, 4, 3}};
    for (auto [n, k, p] : cases) {
        double q = 1;
        for (int i = 0; i < k; ++i) q *= 1.0 - std::pow(1.0 / p, n - i);
        const int trials = 10000;
        int good = 0;
        for (int t = 0; t < trials; ++t)
            if (is_nondegenerate(random_code_generator(n, k, p, 31337 + t))) ++good;
        double sigma = std::sqrt(q * (1 - q) / trials);
        CHECK(std::fabs(double(good) / trials - q) < 3 * sigma + 1e-12);
    }
}

TEST_CASE("systematic form: fixed examples") {
    // already [I; C]
    FpMatrix g(3, 2, 2, {1, 0, 0, 1, 1, 1});
    auto sys = systematic_form(g);
    CHECK(sys.row_perm == std::vector<int>{0, 1, 2});
    CHECK(sys.c.rows() == 1);
    CHECK(sys.c.at(0, 0) == 1);
    CHECK(sys.c.at(0, 1) == 1);

    // rows need permuting: top block of [[0,1],[1,0],[1,1]] is singular? no:
    // [[0,1],[1,0]] is invertible, so the permutation is the identity but the
    // column operations still normalize it
    FpMatrix h(3, 2, 2, {0, 1, 1, 0, 1, 1});
    auto hs = systematic_form(h);
    CHECK(codeword_set(h) == codeword_set(FpMatrix(
        3, 2, 2,
        [&] {
            // rebuild [I; C] in the original row order
            std::vector<std::uint32_t> e(6, 0);
            auto set = [&](int i, int j, std::uint32_t v) { e[std::size_t(i) * 2 + j] = v; };
            set(hs.row_perm[0], 0, 1);
            set(hs.row_perm[1], 1, 1);
            for (int r = 2; r < 3; ++r)
                for (int j = 0; j < 2; ++j) set(hs.row_perm[r], j, hs.c.at(r - 2, j));
            return e;
        }())));

    FpMatrix deg(4, 2, 3, {1, 2, 2, 4 % 3, 0, 0, 0, 0});
    if (!is_nondegenerate(deg)) CHECK_THROWS_AS(systematic_form(deg), std::invalid_argument);
}

TEST_CASE("systematic form preserves the code on random instances") {
    SplitRng rng(2024);
    int done = 0;
    while (done < 100) {
        int n = 2 + int(rng.below(7));           // up to 8
        int k = 1 + int(rng.below(std::min(n - 1, 4)));
        std::uint32_t p = (done % 3 == 0) ? 2 : (done % 3 == 1 ? 3 : 5);
        FpMatrix g = random_code_generator(n, k, p, rng.next());
        if (!is_nondegenerate(g)) continue;
        ++done;
        auto sys = systematic_form(g);
        // rebuild [I; C] in the original row order and compare codeword sets
        std::vector<std::uint32_t> e(std::size_t(n) * k, 0);
        for (int j = 0; j < k; ++j) e[std::size_t(sys.row_perm[j]) * k + j] = 1;
        for (int r = 0; r < n - k; ++r)
            for (int j = 0; j < k; ++j) e[std::size_t(sys.row_perm[k + r]) * k + j] = sys.c.at(r, j);
        FpMatrix rebuilt(n, k, p, std::move(e));
        CHECK(codeword_set(g) == codeword_set(rebuilt));
    }
}
