#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "latcode/lattice.hpp"
#include "latcode/lda.hpp"
#include "latcode/rng.hpp"

using namespace latcode;

namespace {

ZMat zmat(int rows, int cols, std::vector<long> entries) {
    ZMat m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = entries[std::size_t(i) * cols + j];
    return m;
}

// all lattice points B c with coefficients in [-box, box]^m, as coordinate sets
std::set<std::vector<std::string>> point_set_in_box(const Lattice& l, long box, const Rat& r2) {
    std::set<std::vector<std::string>> pts;
    int m = l.rank();
    std::vector<long> c(m, -box);
    for (;;) {
        ZVec coeffs(m);
        for (int i = 0; i < m; ++i) coeffs[i] = c[i];
        if (l.norm2_of_coeffs(coeffs) <= r2) {
            QVec x = l.coords_of_coeffs(coeffs);
            std::vector<std::string> key;
            for (const auto& v : x) key.push_back(rat_to_string(v));
            pts.insert(std::move(key));
        }
        int i = m - 1;
        while (i >= 0 && c[i] == box) c[i--] = -box;
        if (i < 0) break;
        ++c[i];
    }
    return pts;
}

ZMat random_unimodular(int n, SplitRng& rng) {
    ZMat u = ZMat::identity(n);
    for (int step = 0; step < 3 * n; ++step) {
        int i = int(rng.below(n)), j = int(rng.below(n));
        if (i == j) continue;
        long f = long(rng.below(3)) - 1;
        for (int r = 0; r < n; ++r) u(r, j) += Int(f) * u(r, i);
    }
    return u;
}

ZMat random_integer_matrix(int rows, int cols, long lo, long hi, SplitRng& rng) {
    ZMat m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = lo + long(rng.below(std::uint64_t(hi - lo + 1)));
    return m;
}

Lattice hexagonal() {
    QMat g(2, 2);
    g(0, 0) = 1;
    g(1, 1) = 1;
    g(0, 1) = Rat(1, 2);
    g(1, 0) = Rat(1, 2);
    return Lattice::from_gram(2, g);
}

} // namespace

TEST_CASE("volume") {
    Lattice l = Lattice::from_integer_basis(zmat(2, 1, {2, 1}));
    CHECK(l.vol2() == 5); // sqrt(5)
    Lattice zn = Lattice::from_integer_basis(ZMat::identity(4));
    CHECK(zn.vol2() == 1);
    CHECK(zn.volume() == doctest::Approx(1.0));

    LdaLattice lda = build_lda(4, 2, 3, 7);
    CHECK(lda.lattice().vol2() == 81); // vol = p^{n-k} = 9

    QMat bad(2, 2);
    bad(0, 0) = 1;
    bad(0, 1) = 2;
    bad(1, 0) = 2;
    bad(1, 1) = 4;
    CHECK_THROWS_AS(Lattice::from_basis(bad), std::invalid_argument);
}

TEST_CASE("hnf: examples and canonicality") {
    CHECK(hnf(ZMat::identity(3)).m == ZMat::identity(3));

    HnfMatrix h = hnf(zmat(2, 2, {2, 1, 0, 1}));
    CHECK(h.m == zmat(2, 2, {2, 1, 0, 1}));
    CHECK(h.pivot_rows == std::vector<int>{0, 1});

    // idempotent
    CHECK(hnf(h.m) == h);

    // box point-set oracle: the HNF generates the same lattice
    SplitRng rng(5);
    for (int t = 0; t < 30; ++t) {
        int n = 2 + int(rng.below(3));
        ZMat b = random_integer_matrix(n, n, -3, 3, rng);
        if (det(b) == 0) continue;
        Lattice orig = Lattice::from_integer_basis(b);
        Lattice canon = Lattice::from_integer_basis(hnf(b).m);
        CHECK(point_set_in_box(orig, 6, Rat(40)) == point_set_in_box(canon, 6, Rat(40)));
        CHECK(lattice_equal(orig, canon));
        // unimodular transforms land on the same canonical form
        ZMat u = random_unimodular(n, rng);
        CHECK(hnf(matmul(b, u)) == hnf(b));
    }

    CHECK_THROWS_AS(hnf(zmat(2, 2, {1, 1, 1, 1})), std::invalid_argument);
}

TEST_CASE("hnf: the 5x3 pivot-shape template") {
    // pivots at rows 2, 4, 5 (1-based): build a valid instance and check that
    // recovery from a scrambled basis reproduces the shape exactly
    ZMat m = zmat(5, 3, {
        3, 1, 2,
        4, 2, 1,   // pivot of column 1 at row 2: entries right of it reduced
        0, 5, -2,
        0, 3, 1,   // pivot of column 2 at row 4
        0, 0, 6,   // pivot of column 3 at row 5
    });
    std::vector<int> piv;
    REQUIRE(is_hnf(m, &piv));
    CHECK(piv == std::vector<int>{1, 3, 4});
    SplitRng rng(11);
    ZMat u = random_unimodular(3, rng);
    HnfMatrix rec = hnf(matmul(m, u));
    CHECK(rec.m == m);
    CHECK(rec.pivot_rows == piv);
}

TEST_CASE("standard-convention interop") {
    ZMat b = zmat(3, 2, {2, 1, 4, 1, 0, 3});
    ZMat std_form = hnf_standard_convention(b);
    // reversing rows and columns of the standard form gives the reversed-
    // convention form of the reversed input; sanity: same lattice either way
    Lattice l1 = Lattice::from_integer_basis(b);
    Lattice l2 = Lattice::from_integer_basis(std_form);
    CHECK(lattice_equal(l1, l2));
}

TEST_CASE("primitive closure and primitivity") {
    Lattice g21 = Lattice::from_integer_basis(zmat(2, 1, {2, 1}));
    CHECK(is_primitive(g21));
    CHECK(lattice_equal(primitive_closure(g21), g21));

    Lattice g42 = Lattice::from_integer_basis(zmat(2, 1, {4, 2}));
    CHECK(!is_primitive(g42));
    CHECK(lattice_equal(primitive_closure(g42), g21));

    // full-rank: the closure is Z^n
    Lattice three = Lattice::from_integer_basis(zmat(2, 2, {3, 0, 0, 3}));
    CHECK(lattice_equal(primitive_closure(three), Lattice::from_integer_basis(ZMat::identity(2))));
    CHECK(is_primitive(Lattice::from_integer_basis(ZMat::identity(3))));

    // output contains every input basis vector
    SplitRng rng(17);
    for (int t = 0; t < 20; ++t) {
        int n = 2 + int(rng.below(3)), m = 1 + int(rng.below(std::uint64_t(n)));
        ZMat b = random_integer_matrix(n, m, -4, 4, rng);
        if (rank_rational(to_rational(b)) != m) continue;
        Lattice l = Lattice::from_integer_basis(b);
        Lattice cl = primitive_closure(l);
        for (int j = 0; j < m; ++j) {
            QVec col(n);
            for (int i = 0; i < n; ++i) col[i] = Rat(b(i, j));
            CHECK(lattice_contains_point(cl, col));
        }
        CHECK(is_primitive(cl));
    }
}

TEST_CASE("polar lattice") {
    Lattice g21 = Lattice::from_integer_basis(zmat(2, 1, {2, 1}));
    Lattice pol = polar(g21);
    QVec expect{Rat(2, 5), Rat(1, 5)};
    CHECK(lattice_contains_point(pol, expect));
    CHECK(pol.vol2() * g21.vol2() == 1);
    CHECK(lattice_equal(polar(pol), g21));

    Lattice zn = Lattice::from_integer_basis(ZMat::identity(3));
    CHECK(lattice_equal(polar(zn), zn));

    SplitRng rng(23);
    int done = 0;
    while (done < 25) {
        int n = 2 + int(rng.below(4)), m = 1 + int(rng.below(std::uint64_t(n)));
        ZMat b = random_integer_matrix(n, m, -4, 4, rng);
        if (rank_rational(to_rational(b)) != m) continue;
        ++done;
        Lattice l = Lattice::from_integer_basis(b);
        CHECK(polar(l).vol2() * l.vol2() == 1);
        CHECK(lattice_equal(polar(polar(l)), l));
    }
}

TEST_CASE("orthogonal lattice") {
    Lattice g21 = Lattice::from_integer_basis(zmat(2, 1, {2, 1}));
    Lattice orth = orthogonal(g21);
    CHECK(orth.rank() == 1);
    CHECK(lattice_equal(orth, Lattice::from_integer_basis(zmat(2, 1, {1, -2}))));

    Lattice e1 = Lattice::from_integer_basis(zmat(3, 1, {1, 0, 0}));
    Lattice e23 = Lattice::from_integer_basis(zmat(3, 2, {0, 0, 1, 0, 0, 1}));
    CHECK(lattice_equal(orthogonal(e1), e23));

    CHECK_THROWS_AS(orthogonal(Lattice::from_integer_basis(ZMat::identity(2))),
                    std::invalid_argument);
    CHECK_THROWS_AS(orthogonal(Lattice::from_integer_basis(zmat(2, 1, {4, 2}))),
                    std::invalid_argument);

    SplitRng rng(29);
    int done = 0;
    while (done < 20) {
        int n = 2 + int(rng.below(4));
        int m = 1 + int(rng.below(std::uint64_t(n - 1)));
        ZMat b = random_integer_matrix(n, m, -3, 3, rng);
        if (rank_rational(to_rational(b)) != m) continue;
        Lattice l = primitive_closure(Lattice::from_integer_basis(b));
        ++done;
        CHECK(lattice_equal(orthogonal(orthogonal(l)), l));
    }
}

TEST_CASE("factor lattice") {
    Lattice g21 = Lattice::from_integer_basis(zmat(2, 1, {2, 1}));
    Lattice f = factor(g21);
    CHECK(f.rank() == 1);
    // pi((1,0)) = (1,0) - (2/5)(2,1) = (1/5, -2/5), length 1/sqrt(5)
    QVec pi_e1{Rat(1, 5), Rat(-2, 5)};
    CHECK(lattice_contains_point(f, pi_e1));
    CHECK(f.vol2() == Rat(1, 5));
    CHECK(f.vol2() * g21.vol2() == 1);
    // pi((0,1)) = -2 pi((1,0)): the w1-generated sublattice is proper
    QVec pi_e2{Rat(-2, 5), Rat(4, 5)};
    CHECK(lattice_contains_point(f, pi_e2));
    for (int i = 0; i < 2; ++i) CHECK(pi_e2[i] == Rat(-2) * pi_e1[i]);

    CHECK_THROWS_AS(factor(Lattice::from_integer_basis(zmat(2, 1, {4, 2}))), std::invalid_argument);

    // vol identity plus projected integer points land inside the factor lattice
    SplitRng rng(31);
    int done = 0;
    while (done < 20) {
        int n = 2 + int(rng.below(3));
        int m = 1 + int(rng.below(std::uint64_t(n - 1)));
        ZMat b = random_integer_matrix(n, m, -3, 3, rng);
        if (rank_rational(to_rational(b)) != m) continue;
        Lattice l = primitive_closure(Lattice::from_integer_basis(b));
        Lattice fl = factor(l);
        ++done;
        CHECK(fl.vol2() * l.vol2() == 1);
        QMat proj = complement_projector(l.basis(), n);
        for (int t = 0; t < 10; ++t) {
            QVec z(n);
            for (int i = 0; i < n; ++i) z[i] = Rat(long(rng.below(9)) - 4);
            CHECK(lattice_contains_point(fl, matvec(proj, z)));
        }
    }
}

TEST_CASE("point enumeration") {
    Lattice z2 = Lattice::from_integer_basis(ZMat::identity(2));
    CHECK(enumerate_points(z2, Rat(1)).size() == 5);
    CHECK(enumerate_points(z2, Rat(9, 4)).size() == 9); // radius 1.5

    // affine center
    QVec c{Rat(1, 2), Rat(0)};
    auto pts = enumerate_points(z2, c, Rat(1, 4));
    CHECK(pts.size() == 2);

    // Voronoi-based count bound
    SplitRng rng(37);
    for (int t = 0; t < 20; ++t) {
        int n = 2 + int(rng.below(3));
        ZMat b = random_integer_matrix(n, n, -3, 3, rng);
        if (det(b) == 0) continue;
        Lattice l = Lattice::from_integer_basis(b);
        double r = 1.0 + double(rng.below(3));
        auto points = enumerate_points(l, Rat(long(r * r)));
        double diam = std::sqrt(voronoi_diameter2_bound(l).get_d());
        double bound = ball_volume(n, r + diam) / l.volume();
        CHECK(double(points.size()) <= bound * (1 + 1e-9));
    }

    CHECK_THROWS_AS(enumerate_points(z2, Rat(-1)), std::invalid_argument);
    CHECK_THROWS_AS(enumerate_points(z2, Rat(1u << 30), 10), resource_error);
}

TEST_CASE("ball volume") {
    CHECK(ball_volume(2, 1) == doctest::Approx(M_PI));
    CHECK(ball_volume(3, 1) == doctest::Approx(4 * M_PI / 3));
    CHECK(ball_volume(1, 2) == doctest::Approx(4.0));
    CHECK(ball_volume(0, 5) == doctest::Approx(1.0));
}

TEST_CASE("shortest vector") {
    Lattice z3 = Lattice::from_integer_basis(ZMat::identity(3));
    CHECK(shortest_vector(z3).norm2 == 1);

    CHECK(shortest_vector(hexagonal()).norm2 == 1);

    // brute-force oracle on an LDA lattice
    LdaLattice lda = build_lda(4, 2, 3, 99);
    const Lattice& l = lda.lattice();
    LatticePoint sv = shortest_vector(l);
    Rat best = -1;
    std::vector<long> c(4, -3);
    for (;;) {
        ZVec coeffs(4);
        bool zero = true;
        for (int i = 0; i < 4; ++i) {
            coeffs[i] = c[i];
            if (c[i] != 0) zero = false;
        }
        if (!zero) {
            Rat n2 = l.norm2_of_coeffs(coeffs);
            if (best < 0 || n2 < best) best = n2;
        }
        int i = 3;
        while (i >= 0 && c[i] == 3) c[i--] = -3;
        if (i < 0) break;
        ++c[i];
    }
    CHECK(sv.norm2 == best);
}

TEST_CASE("rankin invariant") {
    // hexagonal gamma_{2,1} = 2/sqrt(3)
    RankinResult hex = rankin(hexagonal(), 1);
    CHECK(hex.certified);
    CHECK(hex.value == doctest::Approx(2.0 / std::sqrt(3.0)).epsilon(1e-9));
    CHECK(hex.min_vol2 == 1);

    RankinResult z2 = rankin(Lattice::from_integer_basis(ZMat::identity(2)), 1);
    CHECK(z2.value == doctest::Approx(1.0));
    CHECK(z2.min_vol2 == 1);

    // gamma_{n,n} = 1 identically
    SplitRng rng(41);
    for (int t = 0; t < 10; ++t) {
        int n = 2 + int(rng.below(3));
        ZMat b = random_integer_matrix(n, n, -3, 3, rng);
        if (det(b) == 0) continue;
        RankinResult r = rankin(Lattice::from_integer_basis(b), n);
        CHECK(r.certified);
        CHECK(r.value == doctest::Approx(1.0));
        CHECK(r.min_vol2 == r.vol2);
    }

    // scale invariance
    Lattice base = Lattice::from_integer_basis(zmat(2, 2, {2, 1, 0, 3}));
    RankinResult a = rankin(base, 1);
    RankinResult b = rankin(base.scaled(Rat(3, 2)), 1);
    CHECK(a.value == doctest::Approx(b.value).epsilon(1e-12));
    CHECK(b.min_vol2 == a.min_vol2 * Rat(9, 4));
}

TEST_CASE("voronoi diameter bound for factor lattices") {
    // stated bound sqrt(n-l); the proof actually gives half that, checked as a
    // separate non-blocking property
    SplitRng rng(43);
    int instances = 0, sampled = 0;
    bool tight_ok = true;
    while (instances < 20) {
        int n = 2 + int(rng.below(4)); // up to 5
        int m = 1 + int(rng.below(std::uint64_t(n - 1)));
        ZMat b = random_integer_matrix(n, m, -3, 3, rng);
        if (rank_rational(to_rational(b)) != m) continue;
        Lattice l = primitive_closure(Lattice::from_integer_basis(b));
        Lattice fl = factor(l);
        ++instances;
        QMat basis = fl.basis();
        for (int t = 0; t < 50; ++t) {
            ++sampled;
            // random point of the spanned subspace
            QVec z(n, Rat(0));
            for (int j = 0; j < fl.rank(); ++j) {
                Rat coeff(long(rng.below(17)) - 8, 4);
                for (int i = 0; i < n; ++i) z[i] += basis(i, j) * coeff;
            }
            auto close = enumerate_points(fl, z, Rat(n - m));
            CHECK(!close.empty()); // within sqrt(n-l)
            bool tighter = false;  // within sqrt(n-l)/2
            for (const auto& pt : close)
                if (pt.norm2 <= Rat(n - m, 4)) tighter = true;
            if (!tighter) tight_ok = false;
        }
    }
    CHECK(sampled >= 1000);
    WARN_MESSAGE(tight_ok, "tighter (1/2)sqrt(n-l) proof bound violated somewhere");
}
