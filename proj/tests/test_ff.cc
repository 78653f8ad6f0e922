#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include "stein/ff.hpp"
#include "stein/rng.hpp"

using namespace stein;

static FfMatrix mat(uint32_t p, size_t r, size_t c, std::vector<uint32_t> e) {
    return FfMatrix(PrimeField(p), r, c, std::move(e));
}

TEST_CASE("prime field arithmetic") {
    PrimeField f(7);
    CHECK(f.add(5, 4) == 2);
    CHECK(f.sub(2, 5) == 4);
    CHECK(f.mul(3, 5) == 1);
    CHECK(f.inv(3) == 5);
    CHECK(f.pow(3, 6) == 1);
    CHECK(f.reduce_int64(-1) == 6);
    CHECK(f.reduce_int64(-14) == 0);
    for (uint32_t a = 1; a < 7; a++) CHECK(f.mul(a, f.inv(a)) == 1);
    CHECK_THROWS_AS(PrimeField(6), RangeError);
    CHECK_THROWS_AS(PrimeField(1), RangeError);
    CHECK_THROWS_AS(PrimeField(1u << 31), RangeError);
    PrimeField big(2147483647); // 2^31 - 1 is prime
    CHECK(big.mul(big.inv(12345), 12345) == 1);
}

TEST_CASE("row reduce fixed example") {
    auto rr = row_reduce(mat(5, 2, 2, {2, 4, 1, 2}));
    CHECK(rr.rank == 1);
    CHECK(rr.pivots == std::vector<size_t>{0});
    CHECK(rr.rref == mat(5, 2, 2, {1, 2, 0, 0}));
}

TEST_CASE("row reduce is idempotent and span invariant") {
    Rng rng(42);
    for (int it = 0; it < 50; it++) {
        uint32_t p = std::vector<uint32_t>{2, 3, 5}[rng.below(3)];
        PrimeField f(p);
        size_t rows = 1 + rng.below(4), cols = 1 + rng.below(5);
        FfMatrix m = random_ff_matrix(f, rows, cols, rng);
        auto rr = row_reduce(m);
        CHECK(row_reduce(rr.rref).rref == rr.rref);
        // left-multiplying by an invertible matrix keeps the canonical form
        FfMatrix g(f, rows, rows);
        do {
            g = random_ff_matrix(f, rows, rows, rng);
        } while (determinant(g) == 0);
        CHECK(row_reduce(g.mul(m)).rref == rr.rref);
    }
}

TEST_CASE("solve_left and kernels") {
    PrimeField f(7);
    Rng rng(7);
    for (int it = 0; it < 40; it++) {
        FfMatrix m = random_ff_matrix(f, 3, 4, rng);
        FfMatrix x = random_ff_matrix(f, 2, 3, rng);
        FfMatrix rhs = x.mul(m);
        auto sol = solve_left(m, rhs);
        REQUIRE(sol.has_value());
        CHECK(sol->mul(m) == rhs);
        FfMatrix k = left_kernel(m);
        CHECK(k.rows() == 3 - row_reduce(m).rank);
        if (k.rows() > 0) CHECK(k.mul(m).is_zero());
    }
    // inconsistent system
    FfMatrix m = mat(7, 2, 2, {1, 0, 2, 0});
    CHECK(!solve_left(m, mat(7, 1, 2, {0, 1})).has_value());
}

TEST_CASE("determinant and inverse") {
    CHECK(determinant(mat(5, 2, 2, {1, 2, 3, 4})) == 3); // 4 - 6 = -2 = 3 mod 5
    CHECK(determinant(mat(5, 2, 2, {2, 4, 1, 2})) == 0);
    CHECK_THROWS_AS(inverse(mat(5, 2, 2, {2, 4, 1, 2})), DependentRows);
    Rng rng(11);
    PrimeField f(11);
    for (int it = 0; it < 20; it++) {
        FfMatrix g = random_ff_matrix(f, 4, 4, rng);
        if (determinant(g) == 0) continue;
        CHECK(g.mul(inverse(g)) == FfMatrix::identity(f, 4));
    }
}

TEST_CASE("subspace canonical form and operations") {
    Subspace u(mat(5, 2, 2, {2, 4, 1, 2}));
    CHECK(u.dim() == 1);
    CHECK(u.basis() == mat(5, 1, 2, {1, 2}));
    CHECK(u.contains_vector(mat(5, 1, 2, {3, 1})));
    CHECK(!u.contains_vector(mat(5, 1, 2, {1, 0})));

    Subspace a(mat(5, 1, 3, {1, 0, 0}));
    Subspace b(mat(5, 1, 3, {0, 1, 0}));
    CHECK(a.sum(b).dim() == 2);
    CHECK(a.intersect(b).dim() == 0);
    CHECK(a.sum(b).contains(a));
    CHECK(!a.contains(b));

    Rng rng(3);
    PrimeField f(3);
    for (int it = 0; it < 40; it++) {
        Subspace x(random_ff_matrix(f, 1 + rng.below(3), 4, rng));
        Subspace y(random_ff_matrix(f, 1 + rng.below(3), 4, rng));
        // modular identity dim(x + y) + dim(x meet y) = dim x + dim y
        CHECK(x.sum(y).dim() + x.intersect(y).dim() == x.dim() + y.dim());
        CHECK(x.sum(y).contains(x.intersect(y)));
    }
}

TEST_CASE("orientation class fixed examples") {
    CHECK(orientation_class(mat(5, 1, 2, {2, 0})).cls == 2);
    CHECK(orientation_class(mat(5, 1, 2, {3, 0})).cls == 2);
    CHECK(orientation_class(mat(5, 1, 2, {1, 0})).cls == 1);
    CHECK_THROWS_AS(orientation_class(mat(5, 2, 2, {2, 4, 1, 2})), DependentRows);
    CHECK_THROWS_AS(orientation_class(mat(2, 1, 2, {1, 0})), EvenCharacteristic);
}

TEST_CASE("orientation class properties") {
    // spanning vectors of one line in F_p^2 split into (p-1)/2 classes, two per class
    for (uint32_t p : {5u, 7u}) {
        PrimeField f(p);
        std::vector<uint32_t> seen(p, 0);
        for (uint32_t a = 1; a < p; a++) {
            uint32_t cls = orientation_class(mat(p, 1, 2, {a, f.mul(a, 2)})).cls;
            CHECK(cls >= 1);
            CHECK(cls <= (p - 1) / 2);
            seen[cls]++;
        }
        for (uint32_t c = 1; c <= (p - 1) / 2; c++) CHECK(seen[c] == 2);
    }
    // determinant-1 row operations preserve the class
    Rng rng(99);
    PrimeField f(7);
    for (int it = 0; it < 30; it++) {
        FfMatrix m = random_ff_matrix(f, 2, 4, rng);
        if (row_reduce(m).rank != 2) continue;
        uint32_t before = orientation_class(m).cls;
        FfMatrix m2 = m;
        m2.add_multiple_of_row(0, 1, uint32_t(rng.below(7)));
        CHECK(orientation_class(m2).cls == before);
        // scaling one row by c moves the class to min(cd, p - cd)
        FfMatrix m3 = m;
        m3.scale_row(0, 3);
        uint32_t d3 = orientation_class(m3).cls;
        bool match = false;
        for (uint32_t d : {f.mul(3, before), f.neg(f.mul(3, before))})
            match |= d3 == std::min(d, 7 - d);
        CHECK(match);
    }
}

TEST_CASE("symplectic pairing and perp") {
    SymplecticSpace sp(PrimeField(5), 2);
    FfMatrix e1 = mat(5, 1, 4, {1, 0, 0, 0});
    FfMatrix f1 = mat(5, 1, 4, {0, 1, 0, 0});
    FfMatrix e2 = mat(5, 1, 4, {0, 0, 1, 0});
    CHECK(sp.pairing(e1, f1) == 1);
    CHECK(sp.pairing(f1, e1) == 4);
    CHECK(sp.pairing(e1, e2) == 0);
    CHECK(sp.pairing(e1, e1) == 0);

    CHECK(sp.is_isotropic(Subspace(e1)));
    CHECK(sp.is_isotropic(Subspace(e1.vstack(e2))));
    CHECK(!sp.is_isotropic(Subspace(e1.vstack(f1))));

    Subspace l(e1);
    Subspace lp = sp.perp(l);
    CHECK(lp.dim() == 3);
    CHECK(lp.contains(l)); // isotropic lines sit inside their perp

    for (uint32_t p : {2u, 3u, 5u}) {
        Rng rng(p);
        SymplecticSpace s2(PrimeField(p), 3);
        for (int it = 0; it < 20; it++) {
            Subspace u(random_ff_matrix(s2.field(), 1 + rng.below(3), 6, rng));
            Subspace up = s2.perp(u);
            CHECK(u.dim() + up.dim() == 6);
            CHECK(s2.perp(up) == u);
        }
    }
}

TEST_CASE("transvections are symplectic and act as stated") {
    for (uint32_t p : {2u, 3u, 7u}) {
        SymplecticSpace sp(PrimeField(p), 2);
        Rng rng(p * 31 + 1);
        for (int it = 0; it < 25; it++) {
            FfMatrix v = random_ff_matrix(sp.field(), 1, 4, rng);
            uint32_t a = uint32_t(rng.below(p));
            FfMatrix t = sp.transvection(v, a);
            CHECK(sp.is_symplectic_matrix(t));
            FfMatrix x = random_ff_matrix(sp.field(), 1, 4, rng);
            FfMatrix want = x;
            uint32_t c = sp.field().mul(a, sp.pairing(x, v));
            for (size_t j = 0; j < 4; j++)
                want.at(0, j) = sp.field().add(want.at(0, j), sp.field().mul(c, v.at(0, j)));
            CHECK(x.mul(t) == want);
        }
    }
}

TEST_CASE("random symplectic products stay symplectic") {
    SymplecticSpace sp(PrimeField(5), 3);
    Rng rng(1234);
    for (int it = 0; it < 10; it++)
        CHECK(sp.is_symplectic_matrix(random_symplectic_ff(sp, rng, 10 + rng.below(31))));
}

TEST_CASE("symplectic basis completion fixed example") {
    SymplecticSpace sp(PrimeField(5), 1);
    FfMatrix out = complete_symplectic_basis_ff(mat(5, 1, 2, {2, 0}), sp);
    CHECK(out == mat(5, 2, 2, {2, 0, 0, 3}));
}

TEST_CASE("symplectic basis completion pattern errors") {
    SymplecticSpace sp(PrimeField(5), 2);
    CHECK_THROWS_AS(complete_symplectic_basis_ff(mat(5, 2, 4, {1, 0, 0, 0, 2, 0, 0, 0}), sp),
                    DependentRows);
    // omega(e1, 2f1) = 2: neither a pair nor orthogonal
    CHECK_THROWS_AS(complete_symplectic_basis_ff(mat(5, 2, 4, {1, 0, 0, 0, 0, 2, 0, 0}), sp),
                    PairingViolation);
    // pair in the wrong order: omega = -1 first
    CHECK_THROWS_AS(complete_symplectic_basis_ff(mat(5, 2, 4, {0, 1, 0, 0, 1, 0, 0, 0}), sp),
                    PairingViolation);
}

TEST_CASE("symplectic basis completion randomized") {
    for (uint32_t p : {2u, 3u, 5u}) {
        for (size_t n : {1u, 2u, 3u}) {
            SymplecticSpace sp(PrimeField(p), n);
            Rng rng(p * 1000 + n);
            for (int it = 0; it < 15; it++) {
                // rows of a random symplectic matrix give a valid partial input:
                // m full pairs then up to k further isotropic e-rows
                FfMatrix g = random_symplectic_ff(sp, rng, 10 + rng.below(31));
                size_t m = rng.below(n + 1);
                size_t k = rng.below(n - m + 1);
                if (2 * m + k == 0) continue;
                FfMatrix partial(sp.field(), 0, 2 * n);
                for (size_t i = 0; i < 2 * m; i++) partial = partial.vstack(g.row(i));
                for (size_t j = 0; j < k; j++) partial = partial.vstack(g.row(2 * (m + j)));
                FfMatrix out = complete_symplectic_basis_ff(partial, sp);
                REQUIRE(out.rows() == 2 * n);
                // leading rows are exactly the input
                for (size_t i = 0; i < partial.rows(); i++)
                    CHECK(out.row(i) == partial.row(i));
                // after interleaving, the Gram matrix is J
                auto perm = symplectic_row_order(n, m, k);
                FfMatrix inter(sp.field(), 0, 2 * n);
                for (size_t s = 0; s < 2 * n; s++) inter = inter.vstack(out.row(perm[s]));
                CHECK(sp.is_symplectic_matrix(inter));
            }
        }
    }
}

TEST_CASE("pattern parser handles ambiguous-looking inputs") {
    // two isotropic rows pairing to 1 parse as one full pair
    PrimeField f(5);
    FfMatrix gram(f, 2, 2);
    gram.at(0, 1) = 1;
    gram.at(1, 0) = f.neg(1);
    auto [m, k] = parse_symplectic_pattern(gram);
    CHECK(m == 1);
    CHECK(k == 0);
    auto [m2, k2] = parse_symplectic_pattern(FfMatrix(f, 3, 3));
    CHECK(m2 == 0);
    CHECK(k2 == 3);
}
