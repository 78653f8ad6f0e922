#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "stein/errors.hpp"
#include "stein/formulas.hpp"

using namespace stein;

namespace {

const std::vector<uint32_t> odd_primes_to_97 = {3,  5,  7,  11, 13, 17, 19, 23,
                                                29, 31, 37, 41, 43, 47, 53, 59,
                                                61, 67, 71, 73, 79, 83, 89, 97};

Int ipow(uint64_t b, uint64_t e) {
    Int r;
    mpz_ui_pow_ui(r.get_mpz_t(), b, e);
    return r;
}

} // namespace

TEST_CASE("gaussian binomial") {
    CHECK(gaussian_binomial(2, 1, 3) == 4);
    CHECK(gaussian_binomial(5, 0, 7) == 1);
    CHECK(gaussian_binomial(4, 2, 2) == 35);
    CHECK(gaussian_binomial(4, 2, 3) == 130);
    CHECK(gaussian_binomial(3, 1, 5) == 31);
    CHECK(gaussian_binomial(3, 2, 5) == 31);
    CHECK(gaussian_binomial(6, 3, 5) == 2558556);
    // symmetry and Pascal recursion
    for (uint32_t p : {2u, 3u, 5u}) {
        for (size_t n = 0; n <= 8; ++n) {
            for (size_t m = 0; m <= n; ++m) {
                CHECK(gaussian_binomial(n, m, p) == gaussian_binomial(n, n - m, p));
                if (m >= 1 && m < n) {
                    CHECK(gaussian_binomial(n, m, p) ==
                          gaussian_binomial(n - 1, m - 1, p) +
                              ipow(p, m) * gaussian_binomial(n - 1, m, p));
                }
            }
        }
    }
    CHECK_THROWS_AS(gaussian_binomial(2, 3, 5), RangeError);
    CHECK_THROWS_AS(gaussian_binomial(2, 1, 6), RangeError);
}

TEST_CASE("isotropic grassmannian") {
    CHECK(iso_grassmannian(2, 1, 3) == 40);
    CHECK(iso_grassmannian(2, 2, 3) == 40);
    CHECK(iso_grassmannian(2, 2, 5) == 156);
    CHECK(iso_grassmannian(4, 0, 7) == 1);
    CHECK(iso_grassmannian(3, 3, 3) == 1120);
    CHECK(iso_grassmannian(3, 2, 5) == 101556);
    CHECK(iso_grassmannian(3, 3, 5) == 19656);
    // product identity against the ordinary grassmannian
    for (uint32_t p : {2u, 3u, 5u, 7u}) {
        for (size_t n = 0; n <= 5; ++n) {
            for (size_t m = 0; m <= n; ++m) {
                Int expect = gaussian_binomial(n, m, p);
                for (size_t j = n - m + 1; j <= n; ++j) expect *= ipow(p, j) + 1;
                CHECK(iso_grassmannian(n, m, p) == expect);
            }
        }
    }
    CHECK_THROWS_AS(iso_grassmannian(2, 3, 5), RangeError);
}

TEST_CASE("steinberg ranks") {
    CHECK(steinberg_rank(1, 13) == 1);
    CHECK(steinberg_rank(3, 3) == 27);
    CHECK(steinberg_rank(4, 5) == 15625);
    CHECK(symplectic_steinberg_rank(1, 7) == 7);
    CHECK(symplectic_steinberg_rank(2, 3) == 81);
    CHECK(symplectic_steinberg_rank(3, 3) == 19683);
    CHECK_THROWS_AS(steinberg_rank(0, 3), RangeError);
    CHECK_THROWS_AS(symplectic_steinberg_rank(0, 3), RangeError);
}

TEST_CASE("closed symplectic rank formula") {
    CHECK(t_omega_closed(1, 3) == 3);
    CHECK(t_omega_closed(1, 5) == 11);
    CHECK(t_omega_closed(1, 7) == 23);
    CHECK(t_omega_closed(2, 5) == 3121);
    CHECK(t_omega_closed(2, 7) == 26401);
    for (size_t n = 1; n <= 8; ++n) {
        CHECK(t_omega_closed(n, 3) == symplectic_steinberg_rank(n, 3));
    }
    CHECK_THROWS_AS(t_omega_closed(0, 5), RangeError);
    CHECK_THROWS_AS(t_omega_closed(2, 2), EvenCharacteristic);
}

TEST_CASE("closed linear rank formula") {
    CHECK(t_linear_closed(2, 3) == 3);
    CHECK(t_linear_closed(2, 5) == 11);
    CHECK(t_linear_closed(2, 7) == 23);
    CHECK(t_linear_closed(3, 5) == 621);
    CHECK(t_linear_closed(3, 7) == 3763);
    for (size_t n = 2; n <= 8; ++n) {
        CHECK(t_linear_closed(n, 3) == steinberg_rank(n, 3));
    }
    CHECK_THROWS_AS(t_linear_closed(1, 5), RangeError);
    CHECK_THROWS_AS(t_linear_closed(2, 2), RangeError);
}

TEST_CASE("flag oracles agree with the closed forms") {
    for (uint32_t p : {3u, 5u, 7u, 11u, 13u}) {
        for (size_t n = 1; n <= 2; ++n) {
            CHECK(t_omega_flag_oracle(n, p) == t_omega_closed(n, p));
            if (n >= 2) CHECK(t_linear_flag_oracle(n, p) == t_linear_closed(n, p));
        }
        CHECK(t_linear_flag_oracle(3, p) == t_linear_closed(3, p));
    }
    CHECK(t_omega_flag_oracle(3, 3) == t_omega_closed(3, 3));
    CHECK(t_linear_flag_oracle(4, 3) == t_linear_closed(4, 3));
}

TEST_CASE("flag oracle guards") {
    CHECK_THROWS_AS(t_omega_flag_oracle(4, 3), FeasibilityGuard);
    CHECK_THROWS_AS(t_omega_flag_oracle(2, 17), FeasibilityGuard);
    CHECK_THROWS_AS(t_omega_flag_oracle(3, 7), FeasibilityGuard);
    CHECK_THROWS_AS(t_linear_flag_oracle(5, 3), FeasibilityGuard);
    CHECK_THROWS_AS(t_linear_flag_oracle(4, 7), FeasibilityGuard);
    try {
        t_omega_flag_oracle(2, 17);
        CHECK(false);
    } catch (const FeasibilityGuard& e) {
        // the message carries the predicted flag count
        CHECK(std::string(e.what()).find("flags") != std::string::npos);
    }
    CHECK_THROWS_AS(t_omega_flag_oracle(0, 3), RangeError);
    CHECK_THROWS_AS(t_linear_flag_oracle(1, 3), RangeError);
}

TEST_CASE("lower bounds") {
    CHECK(lower_bound_symplectic(1, 3) == 3);
    CHECK(lower_bound_symplectic(2, 5) == 2500);
    CHECK(lower_bound_symplectic(3, 3) == 19683);
    CHECK(lower_bound_linear(2, 5) == 10);
    CHECK(lower_bound_linear(1, 13) == 1);
    CHECK(lower_bound_linear(3, 5) == 500);
    CHECK_THROWS_AS(lower_bound_symplectic(0, 5), RangeError);
    CHECK_THROWS_AS(lower_bound_symplectic(2, 2), RangeError);
    CHECK_THROWS_AS(lower_bound_linear(2, 2), RangeError);
}

TEST_CASE("rank formulas dominate the proved bounds on the desk grid") {
    for (uint32_t p : odd_primes_to_97) {
        for (size_t n = 1; n <= 6; ++n) {
            CHECK(t_omega_closed(n, p) >= lower_bound_symplectic(n, p));
            if (n >= 2) CHECK(t_linear_closed(n, p) >= lower_bound_linear(n, p));
        }
    }
}

TEST_CASE("grassmannian growth inequalities behind the symplectic bound") {
    for (uint32_t p : odd_primes_to_97) {
        for (size_t n = 1; n <= 6; ++n) {
            for (size_t m = 0; m <= n; ++m) {
                CHECK(gaussian_binomial(n, m, p) >= ipow(p, m * (n - m)));
                CHECK(iso_grassmannian(n, m, p) >=
                      ipow(p, m * (2 * n - m) - m * (m - 1) / 2));
            }
        }
    }
}
