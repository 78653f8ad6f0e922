#include "stein/lift.hpp"

#include <cassert>
#include <tuple>

#include "stein/errors.hpp"

namespace stein {

namespace {

FfMatrix unit_row_ff(const PrimeField& f, size_t dim, size_t j) {
    FfMatrix u(f, 1, dim);
    u.at(0, j) = 1;
    return u;
}

FfMatrix row_sub(const FfMatrix& a, const FfMatrix& b) {
    FfMatrix out = a;
    for (size_t c = 0; c < a.cols(); c++) out.at(0, c) = a.field().sub(a.at(0, c), b.at(0, c));
    return out;
}

Int lift_centered(uint32_t x, uint32_t p) {
    return x <= p / 2 ? Int(x) : Int(x) - Int(p);
}

// z with omega(w, z) = omega(w, cur) for every row w of walls, omega(cur, z)
// nonzero and omega(z, target) nonzero; requires omega(cur, target) = 0.
FfMatrix intermediate_vector(const SymplecticSpace& sp, const FfMatrix& walls, const FfMatrix& cur,
                             const FfMatrix& target) {
    const PrimeField& f = cur.field();
    size_t d = cur.cols();
    assert(sp.pairing(cur, target) == 0);

    // kernel of z -> (omega(w_i, z))_i; cur itself solves the inhomogeneous part
    FfMatrix a(f, walls.rows(), d);
    for (size_t i = 0; i < walls.rows(); i++) {
        FfMatrix wrow = walls.row(i);
        for (size_t c = 0; c < d; c++) {
            // omega(w, e_c): pairs within the block of c only
            uint32_t val = c % 2 == 0 ? f.neg(wrow.at(0, c + 1)) : wrow.at(0, c - 1);
            a.at(i, c) = val;
        }
    }
    FfMatrix k = left_kernel(a.transpose());

    std::vector<uint32_t> pc(k.rows()), pt(k.rows());
    size_t with_both = SIZE_MAX, with_cur = SIZE_MAX, with_target = SIZE_MAX;
    for (size_t i = 0; i < k.rows(); i++) {
        pc[i] = sp.pairing(cur, k.row(i));
        pt[i] = sp.pairing(target, k.row(i));
        if (pc[i] != 0 && pt[i] != 0 && with_both == SIZE_MAX) with_both = i;
        if (pc[i] != 0 && with_cur == SIZE_MAX) with_cur = i;
        if (pt[i] != 0 && with_target == SIZE_MAX) with_target = i;
    }

    FfMatrix z = cur;
    auto add_row = [&](size_t i) {
        for (size_t c = 0; c < d; c++) z.at(0, c) = f.add(z.at(0, c), k.at(i, c));
    };
    if (with_both != SIZE_MAX) {
        add_row(with_both);
    } else if (with_cur != SIZE_MAX && with_target != SIZE_MAX) {
        // disjoint supports: the sum pairs nontrivially with both endpoints
        add_row(with_cur);
        add_row(with_target);
    } else {
        throw WitnessConstructionFailed("no transvection path within the pairing constraints");
    }
    assert(sp.pairing(cur, z) != 0 && sp.pairing(z, target) != 0);
    return z;
}

} // namespace

std::vector<TransvectionFf> factor_symplectic_ff(const FfMatrix& gbar, const SymplecticSpace& sp,
                                                 const std::vector<FfMatrix>& constraints) {
    const PrimeField& f = gbar.field();
    size_t d = gbar.rows();
    if (gbar.cols() != d || d == 0 || d % 2 != 0) throw DimensionMismatch("matrix must be square of even size");
    if (!sp.is_symplectic_matrix(gbar)) throw NotSymplecticModP("matrix is not symplectic mod p");
    for (const auto& c : constraints)
        if (c.rows() != 1 || c.cols() != d) throw DimensionMismatch("constraint rows must be 1 x 2n");

    FfMatrix m = gbar;
    std::vector<std::pair<FfMatrix, uint32_t>> applied; // right factors, in application order
    std::vector<FfMatrix> fixed;

    auto apply = [&](const FfMatrix& v, uint32_t a) {
        for (const auto& w : fixed)
            if (sp.pairing(w, v) != 0) throw WitnessConstructionFailed("transvection would move a fixed row");
        for (const auto& w : constraints)
            if (sp.pairing(w, v) != 0) throw WitnessConstructionFailed("transvection violates a constraint");
        m = m.mul(sp.transvection(v, a));
        applied.emplace_back(v, a);
    };
    auto move_row = [&](size_t idx) {
        FfMatrix target = unit_row_ff(f, d, idx);
        FfMatrix cur = m.row(idx);
        if (cur == target) return;
        FfMatrix walls(f, 0, d);
        for (const auto& w : fixed) walls = walls.vstack(w);
        for (const auto& w : constraints) walls = walls.vstack(w);
        for (size_t i = 0; i < walls.rows(); i++)
            if (sp.pairing(walls.row(i), cur) != sp.pairing(walls.row(i), target))
                throw WitnessConstructionFailed("row cannot reach its target within the constraints");
        uint32_t c = sp.pairing(cur, target);
        if (c != 0) {
            apply(row_sub(target, cur), f.inv(c));
        } else {
            FfMatrix z = intermediate_vector(sp, walls, cur, target);
            apply(row_sub(z, cur), f.inv(sp.pairing(cur, z)));
            apply(row_sub(target, z), f.inv(sp.pairing(z, target)));
        }
        if (!(m.row(idx) == target)) throw VerificationFailure("transvection step failed to move its row");
    };

    for (size_t i = 0; i < d / 2; i++) {
        move_row(2 * i);
        fixed.push_back(unit_row_ff(f, d, 2 * i));
        move_row(2 * i + 1);
        fixed.push_back(unit_row_ff(f, d, 2 * i + 1));
    }
    if (!(m == FfMatrix::identity(f, d)))
        throw VerificationFailure("transvection reduction did not reach the identity");

    // m * T_1 ... T_K = I, so m = T_K^-1 ... T_1^-1 with T^-1 = T_{v,-a}
    std::vector<TransvectionFf> out;
    for (auto it = applied.rbegin(); it != applied.rend(); ++it) out.push_back({it->first, f.neg(it->second)});
    FfMatrix prod = FfMatrix::identity(f, d);
    for (const auto& t : out) prod = prod.mul(sp.transvection(t.v, t.a));
    if (!(prod == gbar)) throw VerificationFailure("transvection factors do not multiply back to the input");
    return out;
}

IntMatrix lift_sp_mod_p(const FfMatrix& gbar) {
    const PrimeField& f = gbar.field();
    size_t d = gbar.rows();
    if (gbar.cols() != d || d == 0 || d % 2 != 0) throw DimensionMismatch("matrix must be square of even size");
    size_t n = d / 2;
    SymplecticSpace sp(f, n);
    auto factors = factor_symplectic_ff(gbar, sp, {});

    IntMatrix g = IntMatrix::identity(d);
    for (const auto& t : factors) {
        IntMatrix v(1, d);
        for (size_t c = 0; c < d; c++) v.at(0, c) = lift_centered(t.v.at(0, c), f.p());
        g = g.mul(transvection_int(n, v, lift_centered(t.a, f.p())));
    }
    if (!is_symplectic_int(g)) throw VerificationFailure("lift is not symplectic over the integers");
    if (!(g.reduce_mod(f) == gbar)) throw VerificationFailure("lift does not reduce back to the input");
    return g;
}

OrientedSubspace reduce_mod_p_oriented(const IntMatrix& b, uint32_t p) {
    if (p == 2) throw EvenCharacteristic("orientation classes need odd p");
    PrimeField f(p);
    if (b.rows() == 0) throw DependentRows("empty basis has no orientation");
    if (!is_direct_summand(b)) throw NotASummand("rows do not span a direct summand");
    return orientation_class(b.reduce_mod(f));
}

namespace {

// factorization of a determinant-one matrix into elementary row additions
// E_{a,b}(lambda), meaning row_a += lambda row_b when applied on the left
std::vector<std::tuple<size_t, size_t, uint32_t>> factor_sl_ff(const FfMatrix& s) {
    const PrimeField& f = s.field();
    size_t m = s.rows();
    FfMatrix a = s;
    std::vector<std::tuple<size_t, size_t, uint32_t>> ops;
    auto op = [&](size_t i, size_t j, uint32_t lam) {
        if (lam == 0) return;
        a.add_multiple_of_row(i, j, lam);
        ops.emplace_back(i, j, lam);
    };
    for (size_t c = 0; c < m; c++) {
        if (a.at(c, c) != 1) {
            size_t r = c;
            for (size_t i = c + 1; i < m; i++)
                if (a.at(i, c) != 0) { r = i; break; }
            if (r == c) {
                if (a.at(c, c) == 0) throw DependentRows("matrix is singular");
                if (c + 1 == m) throw VerificationFailure("determinant is not one");
                op(c + 1, c, 1); // seed a nonzero entry below the pivot
                r = c + 1;
            }
            op(c, r, f.mul(f.sub(1, a.at(c, c)), f.inv(a.at(r, c))));
        }
        for (size_t i = 0; i < m; i++)
            if (i != c && a.at(i, c) != 0) op(i, c, f.neg(a.at(i, c)));
    }
    if (!(a == FfMatrix::identity(f, m))) throw VerificationFailure("shear reduction did not reach the identity");
    // E_K ... E_1 s = I, so s = E_1^-1 ... E_K^-1: original order, negated parameters
    std::vector<std::tuple<size_t, size_t, uint32_t>> out;
    for (const auto& [i, j, lam] : ops) out.emplace_back(i, j, f.neg(lam));
    return out;
}

// integer matrix of determinant +-1 reducing to cbar mod p; requires det(cbar) = +-1
IntMatrix lift_unimodular_ff(const FfMatrix& cbar, uint32_t det) {
    const PrimeField& f = cbar.field();
    size_t m = cbar.rows();
    FfMatrix s = cbar;
    s.scale_row(0, det); // det is self-inverse here
    IntMatrix u = IntMatrix::identity(m);
    u.at(0, 0) = det == 1 ? 1 : -1;
    for (const auto& [i, j, lam] : factor_sl_ff(s)) {
        IntMatrix e = IntMatrix::identity(m);
        e.at(i, j) = lift_centered(lam, f.p());
        u = u.mul(e);
    }
    if (!(u.reduce_mod(f) == cbar)) throw VerificationFailure("unimodular lift does not reduce correctly");
    return u;
}

// symplectic integer matrix, rows interleaved, whose rows 0, 2, ..., 2m-2 are
// an integral basis of span(basis) reducing mod p to xbar
IntMatrix framed_basis(const IntMatrix& basis, const FfMatrix& xbar, size_t n) {
    const PrimeField& f = xbar.field();
    size_t m = basis.rows();
    FfMatrix bbar = basis.reduce_mod(f);
    auto cbar = solve_left(bbar, xbar);
    if (!cbar) throw WitnessConstructionFailed("representative basis is not expressible mod p");
    uint32_t det = determinant(*cbar);
    if (det != 1 && det != f.p() - 1)
        throw WitnessConstructionFailed("change to the representative basis is not unimodular mod p");
    IntMatrix x = lift_unimodular_ff(*cbar, det).mul(basis);
    IntMatrix out = complete_symplectic_basis_int(x, n);
    auto perm = symplectic_row_order(n, 0, m);
    IntMatrix g(2 * n, 2 * n);
    for (size_t r = 0; r < 2 * n; r++)
        for (size_t c = 0; c < 2 * n; c++) g.at(r, c) = out.at(perm[r], c);
    return g;
}

} // namespace

IntMatrix congruence_witness(const IntMatrix& v, const IntMatrix& v2, uint32_t p) {
    if (v.rows() != v2.rows() || v.cols() != v2.cols()) throw DimensionMismatch("bases have different shapes");
    size_t m = v.rows(), d = v.cols();
    if (d == 0 || d % 2 != 0) throw DimensionMismatch("ambient dimension must be even and positive");
    size_t n = d / 2;
    if (m == 0 || m > n) throw DimensionMismatch("rank must be between 1 and n");
    if (!gram_matrix_int(v).is_zero() || !gram_matrix_int(v2).is_zero())
        throw PairingViolation("input bases must be isotropic");

    OrientedSubspace r1 = reduce_mod_p_oriented(v, p);
    OrientedSubspace r2 = reduce_mod_p_oriented(v2, p);
    if (!(r1 == r2)) throw OrientationMismatch("inputs have different oriented reductions mod p");

    PrimeField f(p);
    SymplecticSpace sp(f, n);
    const FfMatrix& rbase = r1.subspace.basis();
    uint32_t cls = r1.cls;

    for (uint32_t att = 0; att < 8; att++) {
        try {
            // common representative basis xbar of the reduction, in the right
            // orientation class; vary the choice between attempts
            FfMatrix x = rbase;
            size_t j0 = att % m;
            if (m >= 2 && att >= 2 * m) x.add_multiple_of_row(j0, (j0 + 1) % m, 1);
            x.scale_row(j0, (att / m) % 2 == 0 ? cls : f.neg(cls));

            IntMatrix g = framed_basis(v, x, n);
            IntMatrix h = framed_basis(v2, x, n);
            // sigma fixes each e_j pointwise mod p: rows 2j of g and h agree
            FfMatrix sigma = g.reduce_mod(f).mul(inverse(h.reduce_mod(f)));
            std::vector<FfMatrix> cons;
            for (size_t j = 0; j < m; j++) cons.push_back(unit_row_ff(f, d, 2 * j));
            auto factors = factor_symplectic_ff(sigma, sp, cons);

            IntMatrix s = IntMatrix::identity(d);
            for (const auto& t : factors) {
                IntMatrix vint(1, d);
                for (size_t c = 0; c < d; c++) vint.at(0, c) = lift_centered(t.v.at(0, c), p);
                for (size_t j = 0; j < m; j++)
                    if (vint.at(0, 2 * j + 1) != 0)
                        throw WitnessConstructionFailed("stabilizer factor moves the standard frame");
                s = s.mul(transvection_int(n, vint, lift_centered(t.a, p)));
            }
            IntMatrix gamma = inverse_unimodular(g).mul(s).mul(h);

            if (!is_symplectic_int(gamma)) throw WitnessConstructionFailed("candidate is not symplectic");
            if (!(gamma.reduce_mod(f) == FfMatrix::identity(f, d)))
                throw WitnessConstructionFailed("candidate is not congruent to the identity");
            if (!(hnf_basis(v.mul(gamma)) == hnf_basis(v2)))
                throw WitnessConstructionFailed("candidate does not carry the first summand to the second");
            return gamma;
        } catch (const WitnessConstructionFailed&) {
            if (att + 1 == 8) throw;
        }
    }
    throw WitnessConstructionFailed("no congruence witness found");
}

} // namespace stein
