#include <doctest.h>

#include <cmath>

#include "latcode/chain_complex.hpp"
#include "latcode/cube_sphere.hpp"
#include "latcode/rng.hpp"

using namespace latcode;

namespace {

Lattice cubic(int n, long ell) {
    ZMat b = ZMat::identity(n);
    for (int i = 0; i < n; ++i) b(i, i) = ell;
    return Lattice::from_integer_basis(b);
}

} // namespace

TEST_CASE("simplex sphere cells and boundary") {
    SimplexSphere s2 = simplex_sphere(2);
    s2.cx.validate();
    CHECK(s2.cx.cells(0) == 4);
    CHECK(s2.cx.cells(1) == 6);
    CHECK(s2.cx.cells(2) == 4);

    SimplexSphere s4 = simplex_sphere(4);
    s4.cx.validate();
    CHECK(s4.cx.cells(1) == 15); // C(6,2)
    CHECK(s4.cx.cells(2) == 20); // C(6,3)
    for (int r = 0; r <= 4; ++r)
        CHECK(std::uint64_t(s4.cx.cells(r)) == binomial_u64(6, r + 1));

    // d2{1,2,3} = {1,2} + {1,3} + {2,3}
    int idx = s2.cell_index(2, 0b0111);
    Chain v(s2.cx.cells(2), 0);
    v[idx] = 1;
    Chain b = boundary_apply(s2.cx, 2, v);
    CHECK(chain_weight(b) == 3);
    CHECK(b[s2.cell_index(1, 0b0011)] == 1);
    CHECK(b[s2.cell_index(1, 0b0101)] == 1);
    CHECK(b[s2.cell_index(1, 0b0110)] == 1);

    // signed boundary over F_5 still squares to zero
    simplex_sphere(3, 5).cx.validate();
}

TEST_CASE("cube sphere cells match the closed form") {
    CubeSphere s12 = cube_sphere(1, 2);
    s12.cx.validate();
    CHECK(s12.cx.cells(0) == 8);
    CHECK(s12.cx.cells(1) == 8);

    CubeSphere s11 = cube_sphere(1, 1);
    CHECK(s11.cx.cells(0) == 4);
    CHECK(s11.cx.cells(1) == 4);

    for (int n = 1; n <= 3; ++n)
        for (int p = 1; p <= 3; ++p) {
            CubeSphere s = cube_sphere(n, p);
            s.cx.validate();
            for (int r = 0; r <= n; ++r)
                CHECK(double(s.cx.cells(r)) == doctest::Approx(cube_sphere_cell_count(n, p, r)));
        }

    // top homology of the sphere
    CHECK(betti(cube_sphere(2, 2).cx, 2) == 1);
    CHECK(betti(cube_sphere(2, 2).cx, 1) == 0);
    CHECK(betti(cube_sphere(2, 2).cx, 0) == 1);
}

TEST_CASE("torus complex") {
    TorusComplex t2 = torus_from_lattice(cubic(2, 2));
    t2.cx.validate();
    CHECK(t2.cx.cells(0) == 4);
    CHECK(t2.cx.cells(1) == 8);
    CHECK(t2.cx.cells(2) == 4);

    // betti numbers of the 2-torus
    TorusComplex t3 = torus_from_lattice(cubic(2, 3));
    t3.cx.validate();
    CHECK(betti(t3.cx, 0) == 1);
    CHECK(betti(t3.cx, 1) == 2);
    CHECK(betti(t3.cx, 2) == 1);

    // C(n,r) * vol cells, and the Poincare count symmetry
    LdaLattice lda = build_lda(3, 1, 2, 5);
    TorusComplex tl = torus_from_lattice(lda.lattice());
    tl.cx.validate();
    Int vol = 1;
    for (int j = 0; j < 3; ++j) vol *= tl.basis.m(j, j);
    for (int r = 0; r <= 3; ++r) {
        CHECK(Int(tl.cx.cells(r)) == Int(long(binomial_u64(3, r))) * vol);
        CHECK(tl.cx.cells(r) == tl.cx.cells(3 - r));
    }

    // LDA(2,1,2): 1-cells = C(2,1) * p^{n-k} ... = 4
    TorusComplex small = torus_from_lattice(build_lda(2, 1, 2, 9).lattice());
    CHECK(small.cx.cells(1) == 4);

    // torus over F_3 keeps dd = 0 with signs
    torus_from_lattice(cubic(2, 2), 3).cx.validate();

    CHECK_THROWS_AS(torus_from_lattice(Lattice::from_integer_basis([] {
                        ZMat b(2, 1);
                        b(0, 0) = 2;
                        b(1, 0) = 1;
                        return b;
                    }())),
                    std::invalid_argument);
    CHECK_THROWS_AS(torus_from_lattice(cubic(4, 50)), resource_error);
}

TEST_CASE("coset canonicalization") {
    LdaLattice lda = build_lda(3, 2, 3, 77);
    TorusComplex t = torus_from_lattice(lda.lattice());
    SplitRng rng(501);
    for (int trial = 0; trial < 200; ++trial) {
        ZVec x(3), shift(3, Int(0));
        for (auto& c : x) c = long(rng.below(21)) - 10;
        ZVec cx = t.canonical_coset(x);
        // canonical form is inside the mixed-radix box
        for (int j = 0; j < 3; ++j) {
            CHECK(cx[j] >= 0);
            CHECK(cx[j] < t.basis.m(j, j));
        }
        // shifting by a lattice vector does not change the coset
        for (int j = 0; j < 3; ++j) {
            long c = long(rng.below(5)) - 2;
            for (int i = 0; i < 3; ++i) shift[i] += Int(c) * t.basis.m(i, j);
        }
        ZVec y(3);
        for (int i = 0; i < 3; ++i) y[i] = x[i] + shift[i];
        CHECK(t.canonical_coset(y) == cx);
    }
}

TEST_CASE("products") {
    // S^1(p=1) x S^1(p=1): 1-cells = 4*4 + 4*4 = 32
    CubeSphere c = cube_sphere(1, 1);
    ProductComplex pr = product_complex(c.cx, c.cx);
    pr.cx.validate();
    CHECK(pr.cx.cells(0) == 16);
    CHECK(pr.cx.cells(1) == 32);
    CHECK(pr.cx.cells(2) == 16);

    // Kuenneth for S^2 x S^2 over F_2
    SimplexSphere s2 = simplex_sphere(2);
    ProductComplex ss = product_complex(s2.cx, s2.cx);
    ss.cx.validate();
    CHECK(betti(ss.cx, 0) == 1);
    CHECK(betti(ss.cx, 1) == 0);
    CHECK(betti(ss.cx, 2) == 2);
    CHECK(betti(ss.cx, 3) == 0);
    CHECK(betti(ss.cx, 4) == 1);

    // product with a point leaves the counts unchanged
    ChainComplex point;
    point.d = 2;
    point.dim = 0;
    point.labels = {{"pt"}};
    point.bnd.resize(1);
    ProductComplex withpt = product_complex(s2.cx, point);
    for (int r = 0; r <= 2; ++r) CHECK(withpt.cx.cells(r) == s2.cx.cells(r));

    // counts convolve
    TorusComplex t = torus_from_lattice(cubic(2, 2));
    ProductComplex tp = product_complex(t.cx, s2.cx);
    tp.cx.validate();
    for (int r = 0; r <= tp.cx.dim; ++r) {
        long expect = 0;
        for (int ra = 0; ra <= std::min(r, 2); ++ra) expect += long(t.cx.cells(ra)) * s2.cx.cells(r - ra);
        CHECK(tp.cx.cells(r) == expect);
    }

    // odd-d product also satisfies dd = 0 (graded signs)
    SimplexSphere s3 = simplex_sphere(2, 3);
    product_complex(s3.cx, s3.cx).cx.validate();

    ChainComplex other = simplex_sphere(2, 3).cx;
    CHECK_THROWS_AS(product_complex(s2.cx, other), std::invalid_argument);
}

TEST_CASE("cup with a vertex set") {
    SimplexSphere s2 = simplex_sphere(2);
    // {2} cup {1} = {1,2}; {1} cup {1} = 0
    Chain v(s2.cx.cells(0), 0);
    v[s2.cell_index(0, 0b0010)] = 1;
    Chain r = cup_with_set(s2, 0, v, 0b0001);
    CHECK(chain_weight(r) == 1);
    CHECK(r[s2.cell_index(1, 0b0011)] == 1);

    Chain v1(s2.cx.cells(0), 0);
    v1[s2.cell_index(0, 0b0001)] = 1;
    CHECK(chain_weight(cup_with_set(s2, 0, v1, 0b0001)) == 0);

    // linearity: ({2} + {3}) cup {1} = {1,2} + {1,3}
    Chain v23(s2.cx.cells(0), 0);
    v23[s2.cell_index(0, 0b0010)] = 1;
    v23[s2.cell_index(0, 0b0100)] = 1;
    Chain r23 = cup_with_set(s2, 0, v23, 0b0001);
    CHECK(chain_weight(r23) == 2);
    CHECK(r23[s2.cell_index(1, 0b0011)] == 1);
    CHECK(r23[s2.cell_index(1, 0b0101)] == 1);

    // cup with the empty set is the identity
    Chain any(s2.cx.cells(1), 0);
    any[2] = 1;
    any[4] = 1;
    CHECK(cup_with_set(s2, 1, any, 0) == any);

    // cone identity: d((dv) cup {1}) = dv for every 1-chain, exhaustively at n=2
    for (std::uint32_t bits = 0; bits < (1u << 6); ++bits) {
        Chain chain(6, 0);
        for (int i = 0; i < 6; ++i) chain[i] = (bits >> i) & 1;
        Chain dv = boundary_apply(s2.cx, 1, chain);
        Chain x = cup_with_set(s2, 0, dv, 0b0001);
        CHECK(boundary_apply(s2.cx, 1, x) == dv);
    }

    // sampled at n=4
    SimplexSphere s4 = simplex_sphere(4);
    SplitRng rng(77);
    for (int t = 0; t < 500; ++t) {
        Chain chain(s4.cx.cells(2), 0);
        for (auto& c : chain) c = rng.below(2);
        Chain dv = boundary_apply(s4.cx, 2, chain);
        Chain x = cup_with_set(s4, 1, dv, 0b0001);
        CHECK(boundary_apply(s4.cx, 2, x) == dv);
        CHECK(chain_weight(x) <= chain_weight(dv));
    }
}

TEST_CASE("betti on spheres") {
    CHECK(betti(simplex_sphere(2).cx, 1) == 0);
    CHECK(betti(simplex_sphere(2).cx, 0) == 1);
    CHECK(betti(simplex_sphere(2).cx, 2) == 1);
    CHECK(betti(torus_from_lattice(cubic(2, 2)).cx, 1) == 2);
    for (int p = 1; p <= 3; ++p) CHECK(betti(cube_sphere(1, p).cx, 1) == 1);
}
