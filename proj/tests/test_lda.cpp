#include <doctest.h>

#include <cmath>

#include "latcode/lda.hpp"
#include "latcode/rng.hpp"

using namespace latcode;

TEST_CASE("volume law and B0 shape") {
    for (std::uint32_t p : {2u, 3u, 5u}) {
        for (int n = 2; n <= 6; ++n) {
            for (int k = 1; k < n; ++k) {
                SplitRng rng(1000 * n + 10 * k + p);
                FpMatrix g = random_code_generator(n, k, p, rng.next());
                if (!is_nondegenerate(g)) continue;
                LdaLattice l = build_lda(g);
                Rat expect = 1;
                for (int i = 0; i < 2 * (n - k); ++i) expect *= p;
                CHECK(l.lattice().vol2() == expect);
                // [[I, 0], [C, pI]]
                const ZMat& b0 = l.b0();
                for (int i = 0; i < k; ++i)
                    for (int j = 0; j < n; ++j) CHECK(b0(i, j) == (i == j ? 1 : 0));
                for (int i = k; i < n; ++i)
                    for (int j = k; j < n; ++j) CHECK(b0(i, j) == (i == j ? Int(p) : Int(0)));
            }
        }
    }
}

TEST_CASE("p Z^n is always inside the lattice") {
    LdaLattice l = build_lda(5, 2, 3, 4);
    for (int i = 0; i < 5; ++i) {
        ZVec x(5, 0);
        x[i] = 3;
        CHECK(l.contains(x));
        x[i] = -3;
        CHECK(l.contains(x));
    }
}

TEST_CASE("codeword columns are members; non-codewords are not") {
    // explicit generator over F_2 with nonzero first C entry
    FpMatrix g(3, 1, 2, {1, 1, 1});
    LdaLattice l = build_lda(g);
    CHECK(l.contains(ZVec{1, 1, 1}));
    CHECK(l.contains(ZVec{3, 1, 1}));
    CHECK(!l.contains(ZVec{1, 0, 0})); // (1,0,0) mod 2 is not a codeword
    CHECK(l.contains(ZVec{2, 0, 0}));

    LdaLattice l2 = build_lda(6, 3, 5, 12);
    for (int j = 0; j < 3; ++j) {
        ZVec col(6);
        for (int i = 0; i < 6; ++i) col[i] = long(l2.generator().at(i, j));
        CHECK(l2.contains(col));
    }
}

TEST_CASE("membership oracles agree on random vectors") {
    const struct { int n, k; std::uint32_t p; } cases[] = {{4, 2, 2}, {6, 3, 3}, {8, 4, 5}};
    for (auto [n, k, p] : cases) {
        LdaLattice l = build_lda(n, k, p, 2718);
        SplitRng rng(999 + p);
        for (int t = 0; t < 10000; ++t) {
            ZVec x(n);
            for (int i = 0; i < n; ++i) x[i] = long(rng.below(41)) - 20;
            bool fast = l.contains(x);
            CHECK(fast == l.contains_by_integer_solve(x));
            CHECK(fast == l.contains_by_rank_test(x));
        }
    }
}

TEST_CASE("point-set equality in a box") {
    // {x : x mod p in code} equals the lattice generated by B0, exhaustively
    const struct { int n, k; std::uint32_t p; } cases[] = {{2, 1, 2}, {3, 2, 3}, {4, 2, 3}};
    for (auto [n, k, p] : cases) {
        LdaLattice l = build_lda(n, k, p, 31);
        std::vector<long> c(n, -long(p));
        for (;;) {
            ZVec x(n);
            for (int i = 0; i < n; ++i) x[i] = c[i];
            QVec xq(n);
            for (int i = 0; i < n; ++i) xq[i] = Rat(x[i]);
            CHECK(l.contains(x) == lattice_contains_point(l.lattice(), xq));
            int i = n - 1;
            while (i >= 0 && c[i] == long(p)) c[i--] = -long(p);
            if (i < 0) break;
            ++c[i];
        }
    }
}

TEST_CASE("ensemble invariance under an elementary column operation") {
    // applying a fixed column operation to uniformly sampled generators leaves
    // the ensemble invariant; compare membership frequency of a fixed vector
    const int trials = 4000;
    int n = 6, k = 3;
    std::uint32_t p = 2;
    ZVec probe{1, 0, 1, 1, 0, 0};
    int hits_plain = 0, hits_op = 0;
    for (int t = 0; t < trials; ++t) {
        FpMatrix g = random_code_generator(n, k, p, 5000 + t);
        if (is_nondegenerate(g) && build_lda(g).contains(probe)) ++hits_plain;
        // op: add column 0 to column 1
        std::vector<std::uint32_t> e(std::size_t(n) * k);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < k; ++j) e[std::size_t(i) * k + j] = g.at(i, j);
        for (int i = 0; i < n; ++i)
            e[std::size_t(i) * k + 1] = (e[std::size_t(i) * k + 1] + e[std::size_t(i) * k]) % p;
        FpMatrix g2(n, k, p, std::move(e));
        if (is_nondegenerate(g2) && build_lda(g2).contains(probe)) ++hits_op;
    }
    // identical distribution: proportions agree within 4 sigma of the paired difference
    double p1 = double(hits_plain) / trials, p2 = double(hits_op) / trials;
    double sigma = std::sqrt((p1 * (1 - p1) + p2 * (1 - p2)) / trials);
    CHECK(std::fabs(p1 - p2) <= 4 * sigma + 1e-9);
}

TEST_CASE("boundary cases rejected") {
    CHECK_THROWS_AS(build_lda(4, 4, 3, 1), std::invalid_argument); // k = n
    CHECK_THROWS_AS(build_lda(4, 0, 3, 1), std::invalid_argument); // k = 0
    FpMatrix deg(4, 2, 3, {1, 2, 2, 1, 0, 0, 0, 0});
    if (!is_nondegenerate(deg)) CHECK_THROWS_AS(build_lda(deg), std::invalid_argument);
}
