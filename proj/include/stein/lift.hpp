#pragma once
#include "stein/intmat.hpp"
#include "stein/symplectic_int.hpp"

namespace stein {

// One symplectic transvection factor x -> x + a omega(x, v) v over F_p.
struct TransvectionFf {
    FfMatrix v;
    uint32_t a;
};

// Factors a symplectic matrix over F_p into transvections, processing the
// pairs (e_i, f_i) in increasing i. Every transvection vector pairs to zero
// with each row of `constraints` (used to stay inside a pointwise stabilizer);
// pass an empty list for the unconstrained case. The product of the returned
// factors, in order, equals gbar; verified before returning.
std::vector<TransvectionFf> factor_symplectic_ff(const FfMatrix& gbar, const SymplecticSpace& sp,
                                                 const std::vector<FfMatrix>& constraints);

// Integer symplectic lift of Gbar in Sp_{2n}(F_p): factor into transvections
// over F_p, lift each vector and parameter to least-absolute-value
// representatives, multiply over Z. Result G satisfies G = Gbar mod p and
// G J G^T = J exactly.
IntMatrix lift_sp_mod_p(const FfMatrix& gbar);

// Reduction of a summand basis mod p with its orientation class.
OrientedSubspace reduce_mod_p_oriented(const IntMatrix& b, uint32_t p);

// Element gamma of the level-p congruence subgroup of Sp_{2n}(Z) carrying
// span(v) to span(v2); requires both to be isotropic summand bases with equal
// oriented reductions mod p. Verifies gamma = I mod p, gamma symplectic and
// span(v) gamma = span(v2) on its own output; retries internal basis choices
// a bounded number of times before giving up.
IntMatrix congruence_witness(const IntMatrix& v, const IntMatrix& v2, uint32_t p);

} // namespace stein
