#pragma once
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "stein/buildings.hpp"
#include "stein/intmat.hpp"

namespace stein {

// Column-major sparse integer matrix; each column holds (row, value) pairs
// with rows ascending. Boundary matrix entries are all +-1.
struct SparseMatrix {
    size_t rows = 0;
    size_t cols = 0;
    std::vector<std::vector<std::pair<uint32_t, int32_t>>> col;
};

// del[d] maps d-chains to (d-1)-chains; del[0] is the 1 x f_0 augmentation
// row, so the uniform rank formula below yields reduced homology.
struct BoundaryMatrices {
    std::vector<SparseMatrix> del;
};

enum class RankMethod { modq, exact };

struct BettiVector {
    std::vector<Int> betti;
    RankMethod method = RankMethod::modq;
    std::vector<uint32_t> primes; // empty for the exact method
    Int euler = 0;                // reduced Euler characteristic
    std::optional<size_t> spherical_degree;
};

// Assembles all boundary matrices with the sorted-vertex sign convention
// (facet j carries (-1)^j) and verifies both face closure and del o del = 0.
BoundaryMatrices boundary_matrices(const SimplicialComplex& c);

// Rank by sparse elimination modulo the prime q; pivots are chosen to keep
// fill low (smallest column, then least-populated row). q <= 2 is rejected.
size_t sparse_rank_modq(const SparseMatrix& m, uint32_t q);

// Exact integer rank: the same elimination with exact arithmetic, columns
// rescaled by their content to contain entry growth.
size_t sparse_rank_exact(const SparseMatrix& m);

// -1 + sum_d (-1)^d f_d, from face counts alone
Int reduced_euler(const SimplicialComplex& c);

// Reduced Betti numbers b_d = f_d - rank del_d - rank del_{d+1}. The modq
// method runs every listed prime (default 1073741789 and 1073741783) and
// demands identical ranks, throwing MethodDisagreement otherwise; exact
// elimination is the authority when methods differ. The alternating sum is
// checked against the Euler characteristic on every call.
BettiVector reduced_betti(const SimplicialComplex& c, RankMethod method,
                          const std::vector<uint32_t>& primes = {});

// Top dimension when homology is concentrated there (computed via modq).
std::optional<size_t> sphericity(const SimplicialComplex& c);

} // namespace stein
