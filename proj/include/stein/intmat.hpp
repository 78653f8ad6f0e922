#pragma once
#include <gmpxx.h>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>
#include "stein/errors.hpp"
#include "stein/ff.hpp"

namespace stein {

using Int = mpz_class;

// Dense row-major matrix over Z with arbitrary-precision entries.
class IntMatrix {
  public:
    IntMatrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
    IntMatrix(size_t rows, size_t cols, std::vector<Int> entries);
    static IntMatrix identity(size_t n);
    static IntMatrix from_int64(size_t rows, size_t cols, const std::vector<int64_t>& entries);

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    Int& at(size_t i, size_t j) { return a_[i * cols_ + j]; }
    const Int& at(size_t i, size_t j) const { return a_[i * cols_ + j]; }
    const std::vector<Int>& entries() const { return a_; }

    IntMatrix mul(const IntMatrix& b) const;
    IntMatrix transpose() const;
    IntMatrix row(size_t i) const;
    IntMatrix vstack(const IntMatrix& b) const;
    IntMatrix scaled(const Int& c) const;
    IntMatrix sub(const IntMatrix& b) const;
    bool is_zero() const;

    void swap_rows(size_t i, size_t j);
    void negate_row(size_t i);
    void add_multiple_of_row(size_t dst, size_t src, const Int& c);
    void swap_cols(size_t i, size_t j);
    void negate_col(size_t i);
    void add_multiple_of_col(size_t dst, size_t src, const Int& c);

    FfMatrix reduce_mod(PrimeField f) const;

    bool operator==(const IntMatrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }
    std::string to_string() const;

  private:
    size_t rows_, cols_;
    std::vector<Int> a_;
};

struct HermiteResult {
    IntMatrix h;                // row Hermite normal form, zero rows at the bottom
    IntMatrix u;                // unimodular, u * input = h
    size_t rank;
    std::vector<size_t> pivots; // pivot column of row i, for i < rank
};

// Row-style Hermite form: pivots positive, entries above a pivot reduced into
// [0, pivot). Canonical for the row lattice.
HermiteResult hermite_normal_form(const IntMatrix& m);

// Hermite basis of the row lattice with zero rows dropped.
IntMatrix hnf_basis(const IntMatrix& m);

// Whether the rows are independent and span a direct summand of Z^cols
// (equivalently they extend to a basis); false on dependent rows.
bool is_direct_summand(const IntMatrix& m);

// Square unimodular matrix whose leading rows are exactly the input rows.
// Throws NotASummand when the rows do not span a direct summand.
IntMatrix extend_to_full_basis(const IntMatrix& m);

// Saturated basis of { x : x m = 0 }, canonical Hermite rows.
IntMatrix left_kernel_int(const IntMatrix& m);

// Integer solutions of x m = rhs, one solution row per rhs row; nullopt when
// no integer solution exists.
std::optional<IntMatrix> solve_left_int(const IntMatrix& m, const IntMatrix& rhs);

// Exact determinant by fraction-free elimination.
Int determinant_int(const IntMatrix& m);

// Inverse of a matrix with determinant +-1; throws NotASummand otherwise.
IntMatrix inverse_unimodular(const IntMatrix& m);

// Hermite basis of the intersection of the two row lattices.
IntMatrix lattice_intersect(const IntMatrix& a, const IntMatrix& b);

// Whether every row of v lies in the row lattice of a.
bool lattice_contains(const IntMatrix& a, const IntMatrix& v);

} // namespace stein
