#include "stein/intmat.hpp"
#include <algorithm>
#include <cassert>
#include <sstream>

namespace stein {

IntMatrix::IntMatrix(size_t rows, size_t cols, std::vector<Int> entries)
    : rows_(rows), cols_(cols), a_(std::move(entries)) {
    if (a_.size() != rows * cols) throw DimensionMismatch("entry count does not match shape");
}

IntMatrix IntMatrix::identity(size_t n) {
    IntMatrix m(n, n);
    for (size_t i = 0; i < n; i++) m.at(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_int64(size_t rows, size_t cols, const std::vector<int64_t>& entries) {
    if (entries.size() != rows * cols) throw DimensionMismatch("entry count does not match shape");
    IntMatrix m(rows, cols);
    for (size_t i = 0; i < entries.size(); i++) m.a_[i] = Int(static_cast<long>(entries[i]));
    return m;
}

IntMatrix IntMatrix::mul(const IntMatrix& b) const {
    if (cols_ != b.rows_) throw DimensionMismatch("matrix product shape mismatch");
    IntMatrix c(rows_, b.cols_);
    for (size_t i = 0; i < rows_; i++)
        for (size_t k = 0; k < cols_; k++) {
            const Int& v = at(i, k);
            if (v == 0) continue;
            for (size_t j = 0; j < b.cols_; j++) c.at(i, j) += v * b.at(k, j);
        }
    return c;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix t(cols_, rows_);
    for (size_t i = 0; i < rows_; i++)
        for (size_t j = 0; j < cols_; j++) t.at(j, i) = at(i, j);
    return t;
}

IntMatrix IntMatrix::row(size_t i) const {
    IntMatrix r(1, cols_);
    for (size_t j = 0; j < cols_; j++) r.at(0, j) = at(i, j);
    return r;
}

IntMatrix IntMatrix::vstack(const IntMatrix& b) const {
    if (cols_ != b.cols_) throw DimensionMismatch("vstack shape mismatch");
    IntMatrix m(rows_ + b.rows_, cols_);
    std::copy(a_.begin(), a_.end(), m.a_.begin());
    std::copy(b.a_.begin(), b.a_.end(), m.a_.begin() + a_.size());
    return m;
}

IntMatrix IntMatrix::scaled(const Int& c) const {
    IntMatrix m = *this;
    for (auto& x : m.a_) x *= c;
    return m;
}

IntMatrix IntMatrix::sub(const IntMatrix& b) const {
    if (rows_ != b.rows_ || cols_ != b.cols_) throw DimensionMismatch("sub shape mismatch");
    IntMatrix m = *this;
    for (size_t i = 0; i < a_.size(); i++) m.a_[i] -= b.a_[i];
    return m;
}

bool IntMatrix::is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](const Int& x) { return x == 0; });
}

void IntMatrix::swap_rows(size_t i, size_t j) {
    if (i == j) return;
    for (size_t c = 0; c < cols_; c++) std::swap(at(i, c), at(j, c));
}

void IntMatrix::negate_row(size_t i) {
    for (size_t c = 0; c < cols_; c++) at(i, c) = -at(i, c);
}

void IntMatrix::add_multiple_of_row(size_t dst, size_t src, const Int& c) {
    for (size_t j = 0; j < cols_; j++) at(dst, j) += c * at(src, j);
}

void IntMatrix::swap_cols(size_t i, size_t j) {
    if (i == j) return;
    for (size_t r = 0; r < rows_; r++) std::swap(at(r, i), at(r, j));
}

void IntMatrix::negate_col(size_t i) {
    for (size_t r = 0; r < rows_; r++) at(r, i) = -at(r, i);
}

void IntMatrix::add_multiple_of_col(size_t dst, size_t src, const Int& c) {
    for (size_t r = 0; r < rows_; r++) at(r, dst) += c * at(r, src);
}

FfMatrix IntMatrix::reduce_mod(PrimeField f) const {
    FfMatrix m(f, rows_, cols_);
    Int r;
    for (size_t i = 0; i < rows_; i++)
        for (size_t j = 0; j < cols_; j++) {
            mpz_fdiv_r_ui(r.get_mpz_t(), at(i, j).get_mpz_t(), f.p());
            m.at(i, j) = uint32_t(r.get_ui());
        }
    return m;
}

std::string IntMatrix::to_string() const {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < rows_; i++) {
        os << (i ? ",[" : "[");
        for (size_t j = 0; j < cols_; j++) os << (j ? "," : "") << at(i, j).get_str();
        os << "]";
    }
    os << "]";
    return os.str();
}

HermiteResult hermite_normal_form(const IntMatrix& m) {
    IntMatrix h = m;
    IntMatrix u = IntMatrix::identity(m.rows());
    std::vector<size_t> pivots;
    size_t r = 0;
    for (size_t c = 0; c < h.cols() && r < h.rows(); c++) {
        // gcd-reduce column c below the frontier into a single row
        for (;;) {
            size_t best = h.rows();
            for (size_t i = r; i < h.rows(); i++) {
                if (h.at(i, c) == 0) continue;
                if (best == h.rows() || mpz_cmpabs(h.at(i, c).get_mpz_t(), h.at(best, c).get_mpz_t()) < 0) best = i;
            }
            if (best == h.rows()) break;
            h.swap_rows(r, best);
            u.swap_rows(r, best);
            bool done = true;
            for (size_t i = r + 1; i < h.rows(); i++) {
                if (h.at(i, c) == 0) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), h.at(i, c).get_mpz_t(), h.at(r, c).get_mpz_t());
                h.add_multiple_of_row(i, r, -q);
                u.add_multiple_of_row(i, r, -q);
                done &= h.at(i, c) == 0;
            }
            if (done) break;
        }
        if (h.at(r, c) == 0) continue;
        if (h.at(r, c) < 0) { h.negate_row(r); u.negate_row(r); }
        for (size_t i = 0; i < r; i++) {
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), h.at(i, c).get_mpz_t(), h.at(r, c).get_mpz_t());
            if (q != 0) {
                h.add_multiple_of_row(i, r, -q);
                u.add_multiple_of_row(i, r, -q);
            }
        }
        pivots.push_back(c);
        r++;
    }
    return {std::move(h), std::move(u), r, std::move(pivots)};
}

IntMatrix hnf_basis(const IntMatrix& m) {
    auto hr = hermite_normal_form(m);
    IntMatrix b(hr.rank, m.cols());
    for (size_t i = 0; i < hr.rank; i++)
        for (size_t j = 0; j < m.cols(); j++) b.at(i, j) = hr.h.at(i, j);
    return b;
}

namespace {

// Column Hermite reduction m * W = [L | 0]; returns L's shape via rank and
// whether L is the identity, plus W^{-1} (so m = [L|0] * winv).
struct ColReduce {
    IntMatrix a;    // reduced matrix [L | 0]
    IntMatrix winv; // inverse of the accumulated column operations
    size_t rank;
    bool lower_is_identity;
};

ColReduce column_reduce(const IntMatrix& m) {
    IntMatrix a = m;
    IntMatrix winv = IntMatrix::identity(m.cols());
    size_t r = 0;
    for (size_t i = 0; i < a.rows() && r < a.cols(); i++) {
        for (;;) {
            size_t best = a.cols();
            for (size_t c = r; c < a.cols(); c++) {
                if (a.at(i, c) == 0) continue;
                if (best == a.cols() || mpz_cmpabs(a.at(i, c).get_mpz_t(), a.at(i, best).get_mpz_t()) < 0) best = c;
            }
            if (best == a.cols()) break;
            a.swap_cols(r, best);
            winv.swap_rows(r, best);
            bool done = true;
            for (size_t c = r + 1; c < a.cols(); c++) {
                if (a.at(i, c) == 0) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), a.at(i, c).get_mpz_t(), a.at(i, r).get_mpz_t());
                a.add_multiple_of_col(c, r, -q);
                winv.add_multiple_of_row(r, c, q);
                done &= a.at(i, c) == 0;
            }
            if (done) break;
        }
        if (a.at(i, r) == 0) continue; // dependent row, no pivot in this row
        if (a.at(i, r) < 0) { a.negate_col(r); winv.negate_row(r); }
        for (size_t c = 0; c < r; c++) {
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), a.at(i, c).get_mpz_t(), a.at(i, r).get_mpz_t());
            if (q != 0) {
                a.add_multiple_of_col(c, r, -q);
                winv.add_multiple_of_row(r, c, q);
            }
        }
        r++;
    }
    bool ident = r == a.rows();
    for (size_t i = 0; i < a.rows() && ident; i++)
        for (size_t j = 0; j < r && ident; j++) ident = a.at(i, j) == Int(i == j ? 1 : 0);
    return {std::move(a), std::move(winv), r, ident};
}

} // namespace

bool is_direct_summand(const IntMatrix& m) {
    auto cr = column_reduce(m);
    return cr.rank == m.rows() && cr.lower_is_identity;
}

IntMatrix extend_to_full_basis(const IntMatrix& m) {
    auto cr = column_reduce(m);
    if (cr.rank != m.rows())
        throw NotASummand("rows are dependent");
    if (!cr.lower_is_identity)
        throw NotASummand("rows span a sublattice of its saturation, not a direct summand");
    // m = [I | 0] * winv, so winv's leading rows are m and winv is unimodular
    for (size_t i = 0; i < m.rows(); i++)
        for (size_t j = 0; j < m.cols(); j++) assert(cr.winv.at(i, j) == m.at(i, j));
    return cr.winv;
}

IntMatrix left_kernel_int(const IntMatrix& m) {
    auto hr = hermite_normal_form(m);
    IntMatrix k(m.rows() - hr.rank, m.rows());
    for (size_t i = hr.rank; i < m.rows(); i++)
        for (size_t j = 0; j < m.rows(); j++) k.at(i - hr.rank, j) = hr.u.at(i, j);
    return hnf_basis(k);
}

std::optional<IntMatrix> solve_left_int(const IntMatrix& m, const IntMatrix& rhs) {
    if (m.cols() != rhs.cols()) throw DimensionMismatch("solve_left_int shape mismatch");
    auto hr = hermite_normal_form(m);
    IntMatrix x(rhs.rows(), m.rows());
    for (size_t t = 0; t < rhs.rows(); t++) {
        IntMatrix rem = rhs.row(t);
        IntMatrix z(1, m.rows());
        size_t pi = 0;
        for (size_t c = 0; c < m.cols(); c++) {
            if (pi < hr.rank && hr.pivots[pi] == c) {
                Int q, r;
                mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), rem.at(0, c).get_mpz_t(),
                            hr.h.at(pi, c).get_mpz_t());
                if (r != 0) return std::nullopt;
                if (q != 0)
                    for (size_t j = 0; j < m.cols(); j++) rem.at(0, j) -= q * hr.h.at(pi, j);
                z.at(0, pi) = q;
                pi++;
            } else if (rem.at(0, c) != 0) {
                return std::nullopt;
            }
        }
        IntMatrix xr = z.mul(hr.u);
        for (size_t j = 0; j < m.rows(); j++) x.at(t, j) = xr.at(0, j);
    }
    return x;
}

Int determinant_int(const IntMatrix& m) {
    if (m.rows() != m.cols()) throw DimensionMismatch("determinant of non-square matrix");
    size_t n = m.rows();
    if (n == 0) return 1;
    IntMatrix b = m;
    int sign = 1;
    Int prev = 1;
    for (size_t k = 0; k + 1 < n; k++) {
        if (b.at(k, k) == 0) {
            size_t i = k + 1;
            while (i < n && b.at(i, k) == 0) i++;
            if (i == n) return 0;
            b.swap_rows(k, i);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; i++) {
            for (size_t j = k + 1; j < n; j++) {
                Int num = b.at(k, k) * b.at(i, j) - b.at(i, k) * b.at(k, j);
                mpz_divexact(b.at(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
            }
            b.at(i, k) = 0;
        }
        prev = b.at(k, k);
    }
    return sign * b.at(n - 1, n - 1);
}

IntMatrix inverse_unimodular(const IntMatrix& m) {
    if (m.rows() != m.cols()) throw DimensionMismatch("inverse of non-square matrix");
    auto hr = hermite_normal_form(m);
    if (hr.rank != m.rows() || !(hr.h == IntMatrix::identity(m.rows())))
        throw NotASummand("matrix is not unimodular");
    return hr.u;
}

IntMatrix lattice_intersect(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols() != b.cols()) throw DimensionMismatch("ambient mismatch");
    IntMatrix stacked = a.vstack(b);
    IntMatrix k = left_kernel_int(stacked); // rows (x | y) with x a + y b = 0
    IntMatrix xpart(k.rows(), a.rows());
    for (size_t i = 0; i < k.rows(); i++)
        for (size_t j = 0; j < a.rows(); j++) xpart.at(i, j) = k.at(i, j);
    return hnf_basis(xpart.mul(a));
}

bool lattice_contains(const IntMatrix& a, const IntMatrix& v) {
    return solve_left_int(a, v).has_value();
}

} // namespace stein
