#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>

#include "stein/buildings.hpp"
#include "stein/errors.hpp"
#include "stein/homology.hpp"

using namespace stein;

namespace {

// column-major convenience constructor from dense rows
SparseMatrix dense(size_t rows, size_t cols, const std::vector<std::vector<int32_t>>& a) {
    SparseMatrix m;
    m.rows = rows;
    m.cols = cols;
    m.col.resize(cols);
    for (size_t r = 0; r < rows; ++r)
        for (size_t c = 0; c < cols; ++c)
            if (a[r][c] != 0) m.col[c].push_back({uint32_t(r), a[r][c]});
    return m;
}

SimplicialComplex full_triangle() {
    return SimplicialComplex(3, {{0, 1, 0, 2, 1, 2}, {0, 1, 2}});
}

std::vector<Int> betti_of(BuildingKind kind, size_t n, uint32_t p, RankMethod method) {
    Building b = build_building(kind, n, p);
    return reduced_betti(b.complex, method).betti;
}

} // namespace

TEST_CASE("boundary matrix assembly") {
    SimplicialComplex tri = full_triangle();
    BoundaryMatrices bm = boundary_matrices(tri);
    REQUIRE(bm.del.size() == 3);

    CHECK(bm.del[0].rows == 1);
    CHECK(bm.del[0].cols == 3);
    for (size_t j = 0; j < 3; ++j) {
        REQUIRE(bm.del[0].col[j].size() == 1);
        CHECK(bm.del[0].col[j][0] == std::pair<uint32_t, int32_t>{0, 1});
    }

    // edges in order (0,1), (0,2), (1,2); boundary of (a,b) is [b] - [a]
    CHECK(bm.del[1].rows == 3);
    CHECK(bm.del[1].cols == 3);
    using E = std::vector<std::pair<uint32_t, int32_t>>;
    CHECK(bm.del[1].col[0] == E{{0, -1}, {1, 1}});
    CHECK(bm.del[1].col[1] == E{{0, -1}, {2, 1}});
    CHECK(bm.del[1].col[2] == E{{1, -1}, {2, 1}});

    // triangle column carries alternating signs over its edge facets
    CHECK(bm.del[2].rows == 3);
    CHECK(bm.del[2].cols == 1);
    CHECK(bm.del[2].col[0] == E{{0, 1}, {1, -1}, {2, 1}});

    SUBCASE("empty complex has no boundary matrices") {
        CHECK(boundary_matrices(SimplicialComplex(0, {})).del.empty());
    }
    SUBCASE("missing facet is rejected") {
        SimplicialComplex holed(3, {{0, 1, 0, 2}, {0, 1, 2}});
        CHECK_THROWS_AS(boundary_matrices(holed), NotFaceClosed);
    }
}

TEST_CASE("sparse ranks on handmade matrices") {
    SparseMatrix zero = dense(3, 2, {{0, 0}, {0, 0}, {0, 0}});
    CHECK(sparse_rank_modq(zero, 5) == 0);
    CHECK(sparse_rank_exact(zero) == 0);

    SparseMatrix id3 = dense(3, 3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
    CHECK(sparse_rank_modq(id3, 1073741789u) == 3);
    CHECK(sparse_rank_exact(id3) == 3);

    SparseMatrix rank1 = dense(2, 2, {{1, 2}, {2, 4}});
    CHECK(sparse_rank_modq(rank1, 7) == 1);
    CHECK(sparse_rank_exact(rank1) == 1);

    SparseMatrix mixed = dense(3, 4, {{1, 0, 1, 3}, {0, 1, 1, -1}, {1, 1, 2, 2}});
    CHECK(sparse_rank_modq(mixed, 1073741783u) == 2);
    CHECK(sparse_rank_exact(mixed) == 2);

    SUBCASE("rank depends on the working prime") {
        SparseMatrix five = dense(1, 1, {{5}});
        CHECK(sparse_rank_exact(five) == 1);
        CHECK(sparse_rank_modq(five, 3) == 1);
        CHECK(sparse_rank_modq(five, 5) == 0);
    }
    SUBCASE("entry growth is contained by content stripping") {
        // a dense-ish integer matrix with no unit pivots after the first step
        SparseMatrix g = dense(4, 4, {{2, 3, 5, 7}, {11, 13, 17, 19}, {23, 29, 31, 37}, {41, 43, 47, 53}});
        CHECK(sparse_rank_exact(g) == 4);
        CHECK(sparse_rank_modq(g, 1073741789u) == 4);
    }
    SUBCASE("invalid inputs") {
        CHECK_THROWS_AS(sparse_rank_modq(id3, 2), PrimeTooSmall);
        CHECK_THROWS_AS(sparse_rank_modq(id3, 0), PrimeTooSmall);
        CHECK_THROWS_AS(sparse_rank_modq(id3, 9), RangeError);
        SparseMatrix bad;
        bad.rows = 2;
        bad.cols = 1;
        bad.col = {{{1, 1}, {0, 1}}}; // rows out of order
        CHECK_THROWS_AS(sparse_rank_modq(bad, 5), RangeError);
        CHECK_THROWS_AS(sparse_rank_exact(bad), RangeError);
        bad.col = {{{0, 1}, {2, 1}}}; // row beyond matrix
        CHECK_THROWS_AS(sparse_rank_exact(bad), RangeError);
        bad.col = {{{0, 0}}}; // explicit zero
        CHECK_THROWS_AS(sparse_rank_exact(bad), RangeError);
    }
}

TEST_CASE("reduced euler characteristic") {
    CHECK(reduced_euler(SimplicialComplex(0, {})) == -1);
    CHECK(reduced_euler(SimplicialComplex(1, {})) == 0);
    CHECK(reduced_euler(SimplicialComplex(2, {})) == 1);
    CHECK(reduced_euler(SimplicialComplex(3, {{0, 1, 0, 2, 1, 2}})) == -1); // circle
    CHECK(reduced_euler(full_triangle()) == 0);
    CHECK(reduced_euler(build_building(BuildingKind::symplectic, 2, 3).complex) == -81);
    CHECK(reduced_euler(build_building(BuildingKind::linear, 3, 5).complex) == -125);
    CHECK(reduced_euler(build_building(BuildingKind::symplectic_pm, 2, 7).complex) == -26401);
}

TEST_CASE("reduced betti of small complexes") {
    SUBCASE("empty complex") {
        BettiVector bv = reduced_betti(SimplicialComplex(0, {}), RankMethod::modq);
        CHECK(bv.betti.empty());
        CHECK(bv.euler == -1);
        CHECK(!bv.spherical_degree.has_value());
    }
    SUBCASE("one point") {
        BettiVector bv = reduced_betti(SimplicialComplex(1, {}), RankMethod::modq);
        CHECK(bv.betti == std::vector<Int>{0});
        CHECK(bv.spherical_degree == size_t(0));
    }
    SUBCASE("two points") {
        BettiVector bv = reduced_betti(SimplicialComplex(2, {}), RankMethod::exact);
        CHECK(bv.betti == std::vector<Int>{1});
        CHECK(bv.primes.empty());
        CHECK(bv.spherical_degree == size_t(0));
    }
    SUBCASE("hollow triangle is a circle") {
        BettiVector bv =
            reduced_betti(SimplicialComplex(3, {{0, 1, 0, 2, 1, 2}}), RankMethod::modq);
        CHECK(bv.betti == std::vector<Int>{0, 1});
        CHECK(bv.spherical_degree == size_t(1));
    }
    SUBCASE("filled triangle is contractible, concentrated vacuously") {
        BettiVector bv = reduced_betti(full_triangle(), RankMethod::exact);
        CHECK(bv.betti == std::vector<Int>{0, 0, 0});
        CHECK(bv.spherical_degree == size_t(2));
    }
    SUBCASE("circle plus isolated point is not concentrated in the top degree") {
        BettiVector bv =
            reduced_betti(SimplicialComplex(4, {{0, 1, 0, 2, 1, 2}}), RankMethod::modq);
        CHECK(bv.betti == std::vector<Int>{1, 1});
        CHECK(!bv.spherical_degree.has_value());
        CHECK(!sphericity(SimplicialComplex(4, {{0, 1, 0, 2, 1, 2}})).has_value());
    }
    SUBCASE("join of two point pairs is a circle") {
        SimplicialComplex s0(2, {});
        BettiVector bv = reduced_betti(join_complex(s0, s0), RankMethod::exact);
        CHECK(bv.betti == std::vector<Int>{0, 1});
        CHECK(bv.euler == -1);
    }
    SUBCASE("custom prime list is honored") {
        BettiVector bv = reduced_betti(full_triangle(), RankMethod::modq, {5, 7, 11});
        CHECK(bv.betti == std::vector<Int>{0, 0, 0});
        CHECK(bv.primes == std::vector<uint32_t>{5, 7, 11});
        CHECK_THROWS_AS(reduced_betti(full_triangle(), RankMethod::modq, {2}), PrimeTooSmall);
        CHECK_THROWS_AS(reduced_betti(full_triangle(), RankMethod::modq, {15}), RangeError);
    }
}

TEST_CASE("building homology matches the closed-form ranks") {
    // symplectic, plain
    CHECK(betti_of(BuildingKind::symplectic, 1, 3, RankMethod::modq) == std::vector<Int>{3});
    CHECK(betti_of(BuildingKind::symplectic, 2, 3, RankMethod::modq) == std::vector<Int>{0, 81});
    CHECK(betti_of(BuildingKind::symplectic, 2, 5, RankMethod::modq) == std::vector<Int>{0, 625});
    // linear, plain
    CHECK(betti_of(BuildingKind::linear, 3, 3, RankMethod::modq) == std::vector<Int>{0, 27});
    CHECK(betti_of(BuildingKind::linear, 3, 5, RankMethod::modq) == std::vector<Int>{0, 125});
    CHECK(betti_of(BuildingKind::linear, 4, 3, RankMethod::modq) ==
          std::vector<Int>{0, 0, 729});
    // oriented doubles
    CHECK(betti_of(BuildingKind::symplectic_pm, 1, 5, RankMethod::modq) == std::vector<Int>{11});
    CHECK(betti_of(BuildingKind::symplectic_pm, 2, 5, RankMethod::modq) ==
          std::vector<Int>{0, 3121});
    CHECK(betti_of(BuildingKind::linear_pm, 3, 5, RankMethod::modq) == std::vector<Int>{0, 621});
    CHECK(betti_of(BuildingKind::symplectic_pm, 2, 7, RankMethod::modq) ==
          std::vector<Int>{0, 26401});

    SUBCASE("spherical in the top degree") {
        Building b = build_building(BuildingKind::symplectic, 2, 5);
        BettiVector bv = reduced_betti(b.complex, RankMethod::modq);
        CHECK(bv.spherical_degree == size_t(1));
        CHECK(bv.euler == -625);
    }
}

TEST_CASE("restricted buildings are contractible") {
    CHECK(betti_of(BuildingKind::symplectic_restricted, 2, 3, RankMethod::exact) ==
          std::vector<Int>{0, 0});
    CHECK(betti_of(BuildingKind::symplectic_restricted, 2, 5, RankMethod::modq) ==
          std::vector<Int>{0, 0});
    CHECK(betti_of(BuildingKind::symplectic_restricted, 1, 7, RankMethod::exact) ==
          std::vector<Int>{0});
}

TEST_CASE("exact and modular methods agree on buildings") {
    const std::vector<std::tuple<BuildingKind, size_t, uint32_t>> cases = {
        {BuildingKind::symplectic, 2, 3},          {BuildingKind::linear, 3, 5},
        {BuildingKind::symplectic_pm, 2, 5},       {BuildingKind::linear_pm, 3, 5},
        {BuildingKind::symplectic_restricted, 2, 5},
        {BuildingKind::symplectic_restricted_pm, 2, 3},
    };
    for (auto [kind, n, p] : cases) {
        INFO(building_kind_name(kind), " n=", n, " p=", p);
        Building b = build_building(kind, n, p);
        BettiVector em = reduced_betti(b.complex, RankMethod::exact);
        BettiVector mm = reduced_betti(b.complex, RankMethod::modq);
        CHECK(em.betti == mm.betti);
        CHECK(em.spherical_degree == mm.spherical_degree);
    }
}

TEST_CASE("prime rank workers can run concurrently") {
    Building b = build_building(BuildingKind::symplectic, 2, 3);
    BettiVector seq, par;
    setenv("STEIN_THREADS", "1", 1);
    seq = reduced_betti(b.complex, RankMethod::modq);
    setenv("STEIN_THREADS", "4", 1);
    par = reduced_betti(b.complex, RankMethod::modq, {5, 7, 11, 13});
    BettiVector par2 = reduced_betti(b.complex, RankMethod::modq);
    unsetenv("STEIN_THREADS");
    CHECK(seq.betti == par.betti);
    CHECK(seq.betti == par2.betti);
    CHECK(seq.betti == std::vector<Int>{0, 81});
}
