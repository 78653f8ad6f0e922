#pragma once
#include <cstdint>

#include "stein/intmat.hpp"

namespace stein {

// number of m-dimensional subspaces of F_p^n, exact at every division
Int gaussian_binomial(size_t n, size_t m, uint32_t p);

// number of m-dimensional isotropic subspaces of the symplectic F_p^{2n}
Int iso_grassmannian(size_t n, size_t m, uint32_t p);

// top-degree ranks of the plain buildings: p^C(n,2) and p^(n^2)
Int steinberg_rank(size_t n, uint32_t p);
Int symplectic_steinberg_rank(size_t n, uint32_t p);

// Top-degree rank of the oriented symplectic complex: a sum over strictly
// increasing dimension sequences 0 < m_0 < ... < m_k <= n of flag counts
// weighted by powers of p and of (p-3)/2, plus the leading term p^(n^2)
// for the empty sequence. Odd p only.
Int t_omega_closed(size_t n, uint32_t p);

// Linear analogue over proper nonzero subspaces of F_p^n, bound n-1,
// leading term p^C(n,2); defined for n >= 2, odd p.
Int t_linear_closed(size_t n, uint32_t p);

// Same quantities evaluated by walking every actual flag of the plain
// building and summing the per-flag weights. Guarded: t_omega_flag_oracle
// requires (n <= 3, p <= 5) or (n <= 2, p <= 13), t_linear_flag_oracle
// requires (n <= 4, p <= 5) or (n <= 3, p <= 13); outside that the call
// throws FeasibilityGuard carrying the predicted flag count.
Int t_omega_flag_oracle(size_t n, uint32_t p);
Int t_linear_flag_oracle(size_t n, uint32_t p);

// proved lower bounds: p^(n^2) ((p-1)/2)^n and p^C(n,2) ((p-1)/2)^(n-1)
Int lower_bound_symplectic(size_t n, uint32_t p);
Int lower_bound_linear(size_t n, uint32_t p);

} // namespace stein
