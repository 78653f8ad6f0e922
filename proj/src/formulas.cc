#include "stein/formulas.hpp"

#include <vector>

#include "stein/buildings.hpp"
#include "stein/errors.hpp"
#include "stein/ff.hpp"

namespace stein {

namespace {

void require_prime(uint32_t p) {
    PrimeField probe(p);
    (void)probe;
}

Int pow_ui(uint64_t base, uint64_t e) {
    Int r;
    mpz_ui_pow_ui(r.get_mpz_t(), base, e);
    return r;
}

uint64_t choose2(uint64_t x) { return x * (x - 1) / 2; }

void divide_exact(Int& acc, const Int& d) {
    if (mpz_divisible_p(acc.get_mpz_t(), d.get_mpz_t()) == 0) {
        throw VerificationFailure("inexact division in a q-analog product");
    }
    mpz_divexact(acc.get_mpz_t(), acc.get_mpz_t(), d.get_mpz_t());
}

// dims of the flag encoded by the bit mask: bit b set means dimension b+1
std::vector<uint64_t> mask_dims(uint64_t mask) {
    std::vector<uint64_t> dims;
    for (uint64_t b = 0; mask >> b != 0; ++b) {
        if ((mask >> b) & 1) dims.push_back(b + 1);
    }
    return dims;
}

// flag-count weight shared by both closed forms: consecutive Grassmannians
// times the ambient count of the top space
Int chain_count_linear(const std::vector<uint64_t>& dims, size_t n, uint32_t p) {
    Int c = gaussian_binomial(n, size_t(dims.back()), p);
    for (size_t i = 0; i + 1 < dims.size(); ++i) {
        c *= gaussian_binomial(size_t(dims[i + 1]), size_t(dims[i]), p);
    }
    return c;
}

Int chain_count_symplectic(const std::vector<uint64_t>& dims, size_t n, uint32_t p) {
    Int c = iso_grassmannian(n, size_t(dims.back()), p);
    for (size_t i = 0; i + 1 < dims.size(); ++i) {
        c *= gaussian_binomial(size_t(dims[i + 1]), size_t(dims[i]), p);
    }
    return c;
}

// p^(sum of C(jump,2)) over the jumps 0 -> m_0 -> ... -> m_k
uint64_t jump_exponent(const std::vector<uint64_t>& dims) {
    uint64_t e = choose2(dims[0]);
    for (size_t i = 0; i + 1 < dims.size(); ++i) e += choose2(dims[i + 1] - dims[i]);
    return e;
}

} // namespace

Int gaussian_binomial(size_t n, size_t m, uint32_t p) {
    require_prime(p);
    if (m > n) throw RangeError("gaussian binomial needs m <= n");
    Int acc = 1;
    for (size_t i = 1; i <= m; ++i) {
        acc *= pow_ui(p, n - m + i) - 1;
        divide_exact(acc, pow_ui(p, i) - 1);
    }
    return acc;
}

Int iso_grassmannian(size_t n, size_t m, uint32_t p) {
    require_prime(p);
    if (m > n) throw RangeError("isotropic grassmannian needs m <= n");
    Int acc = 1;
    for (size_t i = 0; i < m; ++i) acc *= pow_ui(p, 2 * (n - i)) - 1;
    for (size_t i = 0; i < m; ++i) divide_exact(acc, pow_ui(p, m - i) - 1);
    return acc;
}

Int steinberg_rank(size_t n, uint32_t p) {
    require_prime(p);
    if (n < 1) throw RangeError("steinberg rank needs n >= 1");
    return pow_ui(p, choose2(n));
}

Int symplectic_steinberg_rank(size_t n, uint32_t p) {
    require_prime(p);
    if (n < 1) throw RangeError("symplectic steinberg rank needs n >= 1");
    return pow_ui(p, uint64_t(n) * n);
}

Int t_omega_closed(size_t n, uint32_t p) {
    require_prime(p);
    if (n < 1) throw RangeError("t_omega needs n >= 1");
    if (p == 2) throw EvenCharacteristic("t_omega needs an odd prime");
    if (n >= 63) throw RangeError("n too large for the dimension-sequence sweep");
    const uint64_t half = (p - 3) / 2;
    Int total = pow_ui(p, uint64_t(n) * n);
    for (uint64_t mask = 1; mask < (uint64_t(1) << n); ++mask) {
        const std::vector<uint64_t> dims = mask_dims(mask);
        const uint64_t mk = dims.back();
        Int term = chain_count_symplectic(dims, n, p);
        term *= pow_ui(p, jump_exponent(dims) + (n - mk) * (n - mk));
        term *= pow_ui(half, dims.size());
        total += term;
    }
    return total;
}

Int t_linear_closed(size_t n, uint32_t p) {
    require_prime(p);
    if (n < 2) throw RangeError("t_linear needs n >= 2");
    if (p == 2) throw RangeError("t_linear needs an odd prime");
    if (n >= 64) throw RangeError("n too large for the dimension-sequence sweep");
    const uint64_t half = (p - 3) / 2;
    Int total = pow_ui(p, choose2(n));
    for (uint64_t mask = 1; mask < (uint64_t(1) << (n - 1)); ++mask) {
        const std::vector<uint64_t> dims = mask_dims(mask);
        const uint64_t mk = dims.back();
        Int term = chain_count_linear(dims, n, p);
        term *= pow_ui(p, jump_exponent(dims) + choose2(n - mk));
        term *= pow_ui(half, dims.size());
        total += term;
    }
    return total;
}

namespace {

// total flag count of the building, for feasibility-guard messages
Int predicted_flags(size_t n, uint32_t p, bool linear) {
    const size_t top = linear ? n - 1 : n;
    Int total = 0;
    for (uint64_t mask = 1; mask < (uint64_t(1) << top); ++mask) {
        const std::vector<uint64_t> dims = mask_dims(mask);
        total += linear ? chain_count_linear(dims, n, p) : chain_count_symplectic(dims, n, p);
    }
    return total;
}

// walks every simplex of the plain building, bucketing flags by their
// dimension set, then applies the per-flag weight once per bucket
Int flag_sum(size_t n, uint32_t p, bool linear) {
    const Building b =
        build_building(linear ? BuildingKind::linear : BuildingKind::symplectic, n, p);
    const size_t top = linear ? n - 1 : n;
    std::vector<uint64_t> bucket(size_t(1) << top, 0);
    for (size_t d = 0; d < b.complex.dim_count(); ++d) {
        const std::vector<uint32_t>& flat = b.complex.flat(d);
        const size_t w = d + 1;
        for (size_t i = 0; i * w < flat.size(); ++i) {
            uint64_t mask = 0;
            for (size_t j = 0; j < w; ++j) {
                mask |= uint64_t(1) << (b.vertices[flat[i * w + j]].dim - 1);
            }
            ++bucket[mask];
        }
    }
    const uint64_t half = (p - 3) / 2;
    Int total = linear ? pow_ui(p, choose2(n)) : pow_ui(p, uint64_t(n) * n);
    for (uint64_t mask = 1; mask < (uint64_t(1) << top); ++mask) {
        if (bucket[mask] == 0) continue;
        const std::vector<uint64_t> dims = mask_dims(mask);
        const uint64_t mk = dims.back();
        const uint64_t tail = linear ? choose2(n - mk) : (n - mk) * (n - mk);
        Int term = pow_ui(p, jump_exponent(dims) + tail);
        term *= pow_ui(half, dims.size());
        term *= Int(static_cast<unsigned long>(bucket[mask]));
        total += term;
    }
    return total;
}

} // namespace

Int t_omega_flag_oracle(size_t n, uint32_t p) {
    require_prime(p);
    if (n < 1) throw RangeError("t_omega needs n >= 1");
    if (p == 2) throw EvenCharacteristic("t_omega needs an odd prime");
    if (!((n <= 3 && p <= 5) || (n <= 2 && p <= 13))) {
        throw FeasibilityGuard("flag enumeration infeasible at n=" + std::to_string(n) +
                               ", p=" + std::to_string(p) + ": about " +
                               predicted_flags(n, p, false).get_str() + " isotropic flags");
    }
    return flag_sum(n, p, false);
}

Int t_linear_flag_oracle(size_t n, uint32_t p) {
    require_prime(p);
    if (n < 2) throw RangeError("t_linear needs n >= 2");
    if (p == 2) throw RangeError("t_linear needs an odd prime");
    if (!((n <= 4 && p <= 5) || (n <= 3 && p <= 13))) {
        throw FeasibilityGuard("flag enumeration infeasible at n=" + std::to_string(n) +
                               ", p=" + std::to_string(p) + ": about " +
                               predicted_flags(n, p, true).get_str() + " flags");
    }
    return flag_sum(n, p, true);
}

Int lower_bound_symplectic(size_t n, uint32_t p) {
    require_prime(p);
    if (n < 1) throw RangeError("bound needs n >= 1");
    if (p < 3) throw RangeError("bound needs p >= 3");
    return pow_ui(p, uint64_t(n) * n) * pow_ui((p - 1) / 2, n);
}

Int lower_bound_linear(size_t n, uint32_t p) {
    require_prime(p);
    if (n < 1) throw RangeError("bound needs n >= 1");
    if (p < 3) throw RangeError("bound needs p >= 3");
    return pow_ui(p, choose2(n)) * pow_ui((p - 1) / 2, uint64_t(n) - 1);
}

} // namespace stein
