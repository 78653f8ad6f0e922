#pragma once
#include <cstdint>
#include <vector>
#include <optional>
#include <string>
#include <compare>
#include "stein/errors.hpp"

namespace stein {

// Prime field F_p, p an odd-or-even prime below 2^31. Scalars are uint32_t
// in [0, p); arithmetic widens to 64 bits internally.
class PrimeField {
  public:
    explicit PrimeField(uint32_t p);
    uint32_t p() const { return p_; }

    uint32_t add(uint32_t a, uint32_t b) const { uint64_t s = uint64_t(a) + b; return uint32_t(s >= p_ ? s - p_ : s); }
    uint32_t sub(uint32_t a, uint32_t b) const { return a >= b ? a - b : uint32_t(uint64_t(a) + p_ - b); }
    uint32_t neg(uint32_t a) const { return a == 0 ? 0 : p_ - a; }
    uint32_t mul(uint32_t a, uint32_t b) const { return uint32_t(uint64_t(a) * b % p_); }
    uint32_t inv(uint32_t a) const;
    uint32_t pow(uint32_t a, uint64_t e) const;
    uint32_t reduce_int64(int64_t a) const { int64_t r = a % int64_t(p_); return uint32_t(r < 0 ? r + p_ : r); }

    bool operator==(const PrimeField& o) const { return p_ == o.p_; }

  private:
    uint32_t p_;
};

// Dense row-major matrix over F_p.
class FfMatrix {
  public:
    FfMatrix(PrimeField f, size_t rows, size_t cols)
        : field_(f), rows_(rows), cols_(cols), a_(rows * cols, 0) {}
    FfMatrix(PrimeField f, size_t rows, size_t cols, std::vector<uint32_t> entries);

    const PrimeField& field() const { return field_; }
    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    uint32_t& at(size_t i, size_t j) { return a_[i * cols_ + j]; }
    uint32_t at(size_t i, size_t j) const { return a_[i * cols_ + j]; }
    const std::vector<uint32_t>& entries() const { return a_; }

    static FfMatrix identity(PrimeField f, size_t n);
    FfMatrix mul(const FfMatrix& b) const;
    FfMatrix transpose() const;
    FfMatrix row(size_t i) const;
    // Stacks b below this matrix.
    FfMatrix vstack(const FfMatrix& b) const;
    void scale_row(size_t i, uint32_t c);
    void add_multiple_of_row(size_t dst, size_t src, uint32_t c);
    void swap_rows(size_t i, size_t j);
    bool is_zero() const;

    bool operator==(const FfMatrix& o) const;
    // Lexicographic on (rows, cols, entries); used for deterministic enumeration order.
    std::strong_ordering operator<=>(const FfMatrix& o) const;

    std::string to_string() const;

  private:
    PrimeField field_;
    size_t rows_, cols_;
    std::vector<uint32_t> a_;
};

struct RowReduceResult {
    FfMatrix rref;                 // same shape as the input, zero rows at the bottom
    size_t rank;
    std::vector<size_t> pivots;    // pivot column of row i, for i < rank
};

RowReduceResult row_reduce(const FfMatrix& m);

// Solutions x of x * M = rhs (one row each); nullopt when inconsistent.
// Free coordinates are set to zero, so the answer is deterministic.
std::optional<FfMatrix> solve_left(const FfMatrix& m, const FfMatrix& rhs);
// Basis of { x : x * M = 0 } as rows, in canonical (RREF) form.
FfMatrix left_kernel(const FfMatrix& m);

uint32_t determinant(const FfMatrix& m);
FfMatrix inverse(const FfMatrix& m); // throws DependentRows when singular

// A subspace of F_p^ambient held as its canonical reduced-row-echelon basis.
// Two Subspace values are equal exactly when the stored bases are identical.
class Subspace {
  public:
    // Canonicalizes the row span of m; rows may be dependent.
    Subspace(const FfMatrix& m);
    static Subspace zero(PrimeField f, size_t ambient);

    const PrimeField& field() const { return basis_.field(); }
    size_t ambient() const { return basis_.cols(); }
    size_t dim() const { return basis_.rows(); }
    const FfMatrix& basis() const { return basis_; }
    const std::vector<size_t>& pivots() const { return pivots_; }

    bool contains_vector(const FfMatrix& v) const; // v is 1 x ambient
    bool contains(const Subspace& other) const;
    Subspace sum(const Subspace& other) const;
    Subspace intersect(const Subspace& other) const;

    bool operator==(const Subspace& o) const { return basis_ == o.basis_; }
    std::strong_ordering operator<=>(const Subspace& o) const { return basis_ <=> o.basis_; }

  private:
    FfMatrix basis_;
    std::vector<size_t> pivots_;
};

// A subspace with a +-orientation class in F_p^x / {+-1}, encoded as an
// integer in [1, (p-1)/2] relative to the canonical basis.
struct OrientedSubspace {
    Subspace subspace;
    uint32_t cls;
    bool operator==(const OrientedSubspace& o) const { return subspace == o.subspace && cls == o.cls; }
};

// Orientation of a spanning matrix m: with m = c * r, r the canonical basis
// of the row span, the class is min(d, p - d) for d = det(c).
// Requires independent rows and odd p.
OrientedSubspace orientation_class(const FfMatrix& m);

// Symplectic structure on F_p^{2n} in the interleaved basis
// (e_1, f_1, ..., e_n, f_n): omega(e_i, f_i) = 1 and all other basis pairings 0.
class SymplecticSpace {
  public:
    SymplecticSpace(PrimeField f, size_t n) : field_(f), n_(n) {}
    const PrimeField& field() const { return field_; }
    size_t n() const { return n_; }
    size_t ambient() const { return 2 * n_; }

    FfMatrix gram() const; // the matrix J
    uint32_t pairing(const FfMatrix& u, const FfMatrix& v) const; // u, v are 1 x 2n
    bool is_symplectic_matrix(const FfMatrix& m) const;           // m J m^T == J
    bool is_isotropic(const Subspace& s) const;
    Subspace perp(const Subspace& s) const;

    // Symplectic transvection x -> x + a * omega(x, v) * v as a matrix.
    FfMatrix transvection(const FfMatrix& v, uint32_t a) const;

  private:
    PrimeField field_;
    size_t n_;
};

// Completes a partial symplectic family to a full symplectic basis of F_p^{2n}.
// Input rows must be independent and their Gram matrix must match the pattern
// v_1, w_1, ..., v_m, w_m, v_{m+1}, ..., v_{m+k}: consecutive pairs at the
// front pairing to 1, every other pairing 0. The result has 2n rows: the
// input first, then the partners w_{m+1}, ..., w_{m+k}, then the remaining
// pairs v_j, w_j interleaved. Reordering the rows by symplectic_row_order
// puts them in (e_1, f_1, ..., e_n, f_n) order, where the Gram equals J.
FfMatrix complete_symplectic_basis_ff(const FfMatrix& partial, const SymplecticSpace& sp);

// Reorders the output of complete_symplectic_basis_ff given the pattern split
// of the original input (m pairs, k unpaired rows).
std::vector<size_t> symplectic_row_order(size_t n, size_t m, size_t k);

// Parses the Gram pattern of a partial symplectic family: returns (m, k).
// Throws PairingViolation when the Gram matrix fits no such pattern.
std::pair<size_t, size_t> parse_symplectic_pattern(const FfMatrix& gram);

} // namespace stein
