#include "stein/symplectic_int.hpp"
#include "stein/pfaffian.hpp"
#include <cassert>

namespace stein {

IntMatrix symplectic_gram_int(size_t n) {
    IntMatrix j(2 * n, 2 * n);
    for (size_t i = 0; i < n; i++) {
        j.at(2 * i, 2 * i + 1) = 1;
        j.at(2 * i + 1, 2 * i) = -1;
    }
    return j;
}

Int symplectic_pairing_int(const IntMatrix& u, const IntMatrix& v) {
    if (u.rows() != 1 || v.rows() != 1 || u.cols() != v.cols() || u.cols() % 2 != 0)
        throw DimensionMismatch("pairing expects 1 x 2n rows");
    Int acc = 0;
    for (size_t i = 0; i < u.cols() / 2; i++)
        acc += u.at(0, 2 * i) * v.at(0, 2 * i + 1) - u.at(0, 2 * i + 1) * v.at(0, 2 * i);
    return acc;
}

IntMatrix gram_matrix_int(const IntMatrix& b) {
    if (b.cols() % 2 != 0) throw DimensionMismatch("ambient dimension must be even");
    IntMatrix g(b.rows(), b.rows());
    for (size_t i = 0; i < b.rows(); i++)
        for (size_t j = i + 1; j < b.rows(); j++) {
            g.at(i, j) = symplectic_pairing_int(b.row(i), b.row(j));
            g.at(j, i) = -g.at(i, j);
        }
    return g;
}

bool is_symplectic_int(const IntMatrix& m) {
    if (m.rows() != m.cols() || m.rows() % 2 != 0) return false;
    return gram_matrix_int(m) == symplectic_gram_int(m.rows() / 2);
}

IntMatrix transvection_int(size_t n, const IntMatrix& v, const Int& a) {
    if (v.rows() != 1 || v.cols() != 2 * n) throw DimensionMismatch("transvection vector must be 1 x 2n");
    IntMatrix t = IntMatrix::identity(2 * n);
    for (size_t i = 0; i < 2 * n; i++) {
        Int jv = (i % 2 == 0) ? v.at(0, i + 1) : Int(-v.at(0, i - 1));
        if (jv == 0) continue;
        Int c = a * jv;
        for (size_t j = 0; j < 2 * n; j++) t.at(i, j) += c * v.at(0, j);
    }
    return t;
}

namespace {

// Gram pattern of a partial symplectic family over Z; same convention as the
// F_p parser: m leading pairs, then k unpaired rows, everything else zero.
std::pair<size_t, size_t> parse_pattern_int(const IntMatrix& gram) {
    size_t r = gram.rows();
    size_t m = 0;
    while (2 * (m + 1) <= r && gram.at(2 * m, 2 * m + 1) == 1) m++;
    size_t k = r - 2 * m;
    for (size_t i = 0; i < r; i++)
        for (size_t j = 0; j < r; j++) {
            Int want = 0;
            if (i / 2 == j / 2 && i / 2 < m) {
                if (i + 1 == j) want = 1;
                else if (j + 1 == i) want = -1;
            }
            if (gram.at(i, j) != want)
                throw PairingViolation("integer pairings do not match the pattern at (" +
                                       std::to_string(i) + "," + std::to_string(j) + ")");
        }
    return {m, k};
}

// First row y of coefficients with row0(g) . y = 1, via iterated extended gcd.
// g must have a primitive first row.
IntMatrix solve_unimodular_row(const IntMatrix& g) {
    size_t r = g.cols();
    IntMatrix y(1, r);
    Int acc = 0;
    for (size_t t = 0; t < r; t++) {
        const Int& a = g.at(0, t);
        if (a == 0) continue;
        if (acc == 0) {
            // first nonzero entry: scale later once gcd reaches 1
            acc = a;
            y.at(0, t) = 1;
            continue;
        }
        Int gg, s, u;
        mpz_gcdext(gg.get_mpz_t(), s.get_mpz_t(), u.get_mpz_t(), acc.get_mpz_t(), a.get_mpz_t());
        for (size_t j = 0; j < r; j++) y.at(0, j) *= s;
        y.at(0, t) = u;
        acc = gg;
        if (acc == 1 || acc == -1) break;
    }
    if (acc == -1) {
        for (size_t j = 0; j < r; j++) y.at(0, j) = -y.at(0, j);
        acc = 1;
    }
    if (acc != 1) throw NotASummand("row is not primitive");
    return y;
}

// Lattice perpendicular to the rows of b under the standard form: saturated
// basis of { x : omega(x, row) = 0 for all rows }.
IntMatrix symplectic_perp_int(const IntMatrix& b, size_t n) {
    IntMatrix a = b.mul(symplectic_gram_int(n)); // omega(x, b_i) = -(b_i J) x^T up to sign
    return left_kernel_int(a.transpose());
}

} // namespace

IntMatrix peel_symplectic_pairs(const IntMatrix& basis) {
    IntMatrix c = basis;
    IntMatrix out(0, basis.cols());
    while (c.rows() > 0) {
        IntMatrix g = gram_matrix_int(c);
        IntMatrix v = c.row(0);
        IntMatrix y = solve_unimodular_row(g);
        IntMatrix w = y.mul(c);
        out = out.vstack(v).vstack(w);
        // restrict to vectors of c pairing to zero with both v and w
        IntMatrix cons(c.rows(), 2);
        for (size_t i = 0; i < c.rows(); i++) {
            cons.at(i, 0) = symplectic_pairing_int(c.row(i), v);
            cons.at(i, 1) = symplectic_pairing_int(c.row(i), w);
        }
        IntMatrix z = left_kernel_int(cons);
        c = z.mul(c);
    }
    return out;
}

IntMatrix complete_symplectic_basis_int(const IntMatrix& partial, size_t n) {
    if (partial.cols() != 2 * n) throw DimensionMismatch("partial basis has wrong ambient dimension");
    if (partial.rows() > 2 * n) throw NotASummand("too many rows");
    if (!is_direct_summand(partial)) throw NotASummand("rows do not span a direct summand");
    auto [m, k] = parse_pattern_int(gram_matrix_int(partial));

    IntMatrix out = partial;
    IntMatrix jmat = symplectic_gram_int(n);
    for (size_t j = 0; j < k; j++) {
        // partner of input row 2m + j: omega(row_t, w) = [t == 2m + j]
        IntMatrix a = out.mul(jmat);
        IntMatrix rhs(1, out.rows());
        rhs.at(0, 2 * m + j) = 1;
        auto w = solve_left_int(a.transpose(), rhs);
        if (!w) throw NotASummand("no integral partner; input is not a summand basis");
        out = out.vstack(*w);
    }

    IntMatrix c = symplectic_perp_int(out, n);
    IntMatrix peeled = peel_symplectic_pairs(c);
    out = out.vstack(peeled);

    if (out.rows() != 2 * n) throw NotASummand("completion failed to reach full rank");
    // verify the full Gram in interleaved order; guards every solver step above
    auto perm = symplectic_row_order(n, m, k);
    IntMatrix inter(2 * n, 2 * n);
    for (size_t s = 0; s < 2 * n; s++)
        for (size_t col = 0; col < 2 * n; col++) inter.at(s, col) = out.at(perm[s], col);
    if (!is_symplectic_int(inter))
        throw VerificationFailure("symplectic completion postcondition failed");
    return out;
}

IntMatrix restricted_summand_normal_form(const IntMatrix& b) {
    if (b.cols() % 2 != 0 || b.rows() + 1 != b.cols())
        throw WrongCorank("expected 2n-1 rows and 2n columns, got " + std::to_string(b.rows()) +
                          "x" + std::to_string(b.cols()));
    size_t n = b.cols() / 2;
    if (!is_direct_summand(b)) throw NotASummand("rows do not span a direct summand");
    if (n == 1) return b; // a primitive row is already in normal form

    // full basis u_1..u_{2n}, first 2n-1 rows spanning V
    IntMatrix u = extend_to_full_basis(b);
    IntMatrix gram = gram_matrix_int(u);
    Int q = pfaffian(gram);
    assert(q == 1 || q == -1); // Gram of a full basis against the standard form

    // pf is linear in the last-column entries: pf = sum_i gram[i][2n-1] c_i.
    // Perturbing the (i, 2n-1) pair by 1 isolates c_i; then v_n = q sum c_i u_i
    // pairs to q^2 = 1 with u_{2n}.
    IntMatrix vn(1, 2 * n);
    for (size_t i = 0; i + 1 < 2 * n; i++) {
        IntMatrix pert = gram;
        pert.at(i, 2 * n - 1) += 1;
        pert.at(2 * n - 1, i) -= 1;
        Int ci = pfaffian(pert) - q;
        if (ci == 0) continue;
        Int coeff = q * ci;
        for (size_t col = 0; col < 2 * n; col++) vn.at(0, col) += coeff * u.at(i, col);
    }
    IntMatrix wn = u.row(2 * n - 1);
    assert(symplectic_pairing_int(vn, wn) == 1);

    IntMatrix p = symplectic_perp_int(vn.vstack(wn), n); // rank 2n-2, unimodular form
    IntMatrix out(0, 2 * n);
    if (lattice_contains(b, p)) {
        // V = P + Z v_n: any symplectic basis of P followed by v_n
        out = peel_symplectic_pairs(p).vstack(vn);
    } else {
        // V meets P in a corank-1 summand of P; recurse there
        IntMatrix s = peel_symplectic_pairs(p); // symplectic coordinates on P
        IntMatrix meet = lattice_intersect(b, p);
        assert(meet.rows() == 2 * n - 3);
        auto coords = solve_left_int(s, meet);
        assert(coords);
        IntMatrix norm = restricted_summand_normal_form(*coords); // in P coordinates
        IntMatrix completed = complete_symplectic_basis_int(norm, n - 1);
        IntMatrix xy = completed.mul(s); // symplectic basis of P, first 2n-3 rows span meet
        // xy rows: x_1, y_1, ..., x_{n-2}, y_{n-2}, x_{n-1} then y_{n-1}
        IntMatrix xn1 = xy.row(2 * n - 4);
        IntMatrix yn1 = xy.row(2 * n - 3);
        // V = meet + Z v_n + Z (alpha y_{n-1} + beta w_n); find that generator
        IntMatrix g = lattice_intersect(b, yn1.vstack(wn));
        assert(g.rows() == 1);
        Int alpha = symplectic_pairing_int(xn1, g.row(0));
        Int beta = symplectic_pairing_int(vn, g.row(0));
        Int gg, c2, c1;
        mpz_gcdext(gg.get_mpz_t(), c2.get_mpz_t(), c1.get_mpz_t(), alpha.get_mpz_t(), beta.get_mpz_t());
        if (gg == -1) { c2 = -c2; c1 = -c1; gg = 1; }
        assert(gg == 1);
        IntMatrix xprime = xn1.scaled(c2).sub(vn.scaled(-c1)); // c2 x_{n-1} + c1 v_n
        IntMatrix yprime = g.row(0);
        IntMatrix fixed(0, 2 * n);
        for (size_t i = 0; i + 4 < size_t(2 * n); i++) fixed = fixed.vstack(xy.row(i));
        fixed = fixed.vstack(xprime).vstack(yprime);
        IntMatrix last = lattice_intersect(b, symplectic_perp_int(fixed, n));
        assert(last.rows() == 1);
        out = fixed.vstack(last);
    }

    // postconditions: same summand, exact Gram pattern
    if (!(hnf_basis(out) == hnf_basis(b)))
        throw VerificationFailure("normal form spans a different lattice");
    IntMatrix g2 = gram_matrix_int(out);
    for (size_t i = 0; i < out.rows(); i++)
        for (size_t j = 0; j < out.rows(); j++) {
            Int want = 0;
            if (i / 2 == j / 2 && i / 2 + 1 < n) {
                if (i + 1 == j) want = 1;
                else if (j + 1 == i) want = -1;
            }
            if (g2.at(i, j) != want)
                throw VerificationFailure("normal form Gram pattern failed");
        }
    return out;
}

IntMatrix random_symplectic_int(size_t n, Rng& rng) {
    IntMatrix g = IntMatrix::identity(2 * n);
    size_t steps = 10 + rng.below(31);
    for (size_t s = 0; s < steps; s++) {
        IntMatrix v(1, 2 * n);
        bool nonzero = false;
        while (!nonzero)
            for (size_t j = 0; j < 2 * n; j++) {
                v.at(0, j) = (long)rng.range(-2, 2);
                nonzero |= v.at(0, j) != 0;
            }
        long a = (long)rng.range(-2, 2);
        if (a == 0) a = 1;
        g = g.mul(transvection_int(n, v, Int(a)));
    }
    return g;
}

IntMatrix random_congruence_int(size_t n, uint32_t p, Rng& rng) {
    IntMatrix g = IntMatrix::identity(2 * n);
    size_t steps = 10 + rng.below(31);
    for (size_t s = 0; s < steps; s++) {
        IntMatrix v(1, 2 * n);
        bool nonzero = false;
        while (!nonzero)
            for (size_t j = 0; j < 2 * n; j++) {
                v.at(0, j) = (long)rng.range(-2, 2);
                nonzero |= v.at(0, j) != 0;
            }
        long a = (long)rng.range(-2, 2);
        if (a == 0) a = 1;
        g = g.mul(transvection_int(n, v, Int(a) * p));
    }
    return g;
}

} // namespace stein
