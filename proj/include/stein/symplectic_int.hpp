#pragma once
#include "stein/intmat.hpp"
#include "stein/rng.hpp"

namespace stein {

// Standard symplectic form on Z^{2n} in the interleaved basis
// (e_1, f_1, ..., e_n, f_n), matching the F_p convention.
IntMatrix symplectic_gram_int(size_t n);
Int symplectic_pairing_int(const IntMatrix& u, const IntMatrix& v); // 1 x 2n rows
IntMatrix gram_matrix_int(const IntMatrix& b);                      // B J B^T
bool is_symplectic_int(const IntMatrix& m);                         // M J M^T == J
IntMatrix transvection_int(size_t n, const IntMatrix& v, const Int& a);

// Extends a direct-summand basis with the pairing pattern
// v_1, w_1, ..., v_m, w_m, v_{m+1}, ..., v_{m+k} to a symplectic basis of
// Z^{2n}. Row layout matches complete_symplectic_basis_ff: input rows first,
// then the partners of the unpaired block, then the remaining pairs; reorder
// with symplectic_row_order(n, m, k) to get Gram = J.
IntMatrix complete_symplectic_basis_int(const IntMatrix& partial, size_t n);

// Normal form of a corank-1 direct summand V of Z^{2n}: a basis
// v_1, w_1, ..., v_{n-1}, w_{n-1}, v_n of the same summand with
// omega(v_i, w_j) = delta_ij and all other pairings zero.
IntMatrix restricted_summand_normal_form(const IntMatrix& b);

// Symplectic basis rows (s_1, t_1, s_2, t_2, ...) of the row lattice of
// `basis`, which must carry a unimodular induced form.
IntMatrix peel_symplectic_pairs(const IntMatrix& basis);

// Seeded product of 10..40 symplectic transvections with vector entries and
// parameters in [-2, 2].
IntMatrix random_symplectic_int(size_t n, Rng& rng);
// Same, with parameters multiplied by p: the product is I mod p.
IntMatrix random_congruence_int(size_t n, uint32_t p, Rng& rng);

} // namespace stein
