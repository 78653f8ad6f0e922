#pragma once
#include "stein/intmat.hpp"

namespace stein {

// Pfaffian of a skew-symmetric integer matrix of even size, computed by
// Schur-complement reduction on 2x2 pivot blocks with exact divisions.
// pf([[0,1],[-1,0]]) = 1; pf(B A B^T) = det(B) pf(A); pf(A)^2 = det(A).
Int pfaffian(const IntMatrix& a);

// The signed sum over perfect pair-partitions, straight from the definition.
// Exponential; used as the oracle for small sizes.
Int pfaffian_partition_sum(const IntMatrix& a);

} // namespace stein
