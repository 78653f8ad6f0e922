#include "stein/ff.hpp"
#include <algorithm>
#include <sstream>
#include <cassert>

namespace stein {

namespace {

bool is_prime_u32(uint32_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (uint64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

} // namespace

PrimeField::PrimeField(uint32_t p) : p_(p) {
    if (p >= (uint32_t(1) << 31) || !is_prime_u32(p))
        throw RangeError("field order must be a prime below 2^31, got " + std::to_string(p));
}

uint32_t PrimeField::inv(uint32_t a) const {
    if (a == 0) throw RangeError("inverse of zero");
    // extended gcd on (a, p)
    int64_t t = 0, newt = 1, r = p_, newr = a;
    while (newr != 0) {
        int64_t q = r / newr;
        t = std::exchange(newt, t - q * newt);
        r = std::exchange(newr, r - q * newr);
    }
    assert(r == 1);
    return uint32_t(t < 0 ? t + p_ : t);
}

uint32_t PrimeField::pow(uint32_t a, uint64_t e) const {
    uint64_t base = a % p_, acc = 1;
    while (e) {
        if (e & 1) acc = acc * base % p_;
        base = base * base % p_;
        e >>= 1;
    }
    return uint32_t(acc);
}

FfMatrix::FfMatrix(PrimeField f, size_t rows, size_t cols, std::vector<uint32_t> entries)
    : field_(f), rows_(rows), cols_(cols), a_(std::move(entries)) {
    if (a_.size() != rows * cols) throw DimensionMismatch("entry count does not match shape");
    for (auto& x : a_) x %= field_.p();
}

FfMatrix FfMatrix::identity(PrimeField f, size_t n) {
    FfMatrix m(f, n, n);
    for (size_t i = 0; i < n; i++) m.at(i, i) = 1;
    return m;
}

FfMatrix FfMatrix::mul(const FfMatrix& b) const {
    if (cols_ != b.rows_ || !(field_ == b.field_)) throw DimensionMismatch("matrix product shape mismatch");
    FfMatrix c(field_, rows_, b.cols_);
    for (size_t i = 0; i < rows_; i++)
        for (size_t k = 0; k < cols_; k++) {
            uint64_t v = at(i, k);
            if (!v) continue;
            for (size_t j = 0; j < b.cols_; j++)
                c.at(i, j) = uint32_t((c.at(i, j) + v * b.at(k, j)) % field_.p());
        }
    return c;
}

FfMatrix FfMatrix::transpose() const {
    FfMatrix t(field_, cols_, rows_);
    for (size_t i = 0; i < rows_; i++)
        for (size_t j = 0; j < cols_; j++) t.at(j, i) = at(i, j);
    return t;
}

FfMatrix FfMatrix::row(size_t i) const {
    FfMatrix r(field_, 1, cols_);
    for (size_t j = 0; j < cols_; j++) r.at(0, j) = at(i, j);
    return r;
}

FfMatrix FfMatrix::vstack(const FfMatrix& b) const {
    if (cols_ != b.cols_ || !(field_ == b.field_)) throw DimensionMismatch("vstack shape mismatch");
    FfMatrix m(field_, rows_ + b.rows_, cols_);
    std::copy(a_.begin(), a_.end(), m.a_.begin());
    std::copy(b.a_.begin(), b.a_.end(), m.a_.begin() + a_.size());
    return m;
}

void FfMatrix::scale_row(size_t i, uint32_t c) {
    for (size_t j = 0; j < cols_; j++) at(i, j) = field_.mul(at(i, j), c);
}

void FfMatrix::add_multiple_of_row(size_t dst, size_t src, uint32_t c) {
    for (size_t j = 0; j < cols_; j++)
        at(dst, j) = field_.add(at(dst, j), field_.mul(c, at(src, j)));
}

void FfMatrix::swap_rows(size_t i, size_t j) {
    if (i == j) return;
    for (size_t c = 0; c < cols_; c++) std::swap(at(i, c), at(j, c));
}

bool FfMatrix::is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](uint32_t x) { return x == 0; });
}

bool FfMatrix::operator==(const FfMatrix& o) const {
    return field_ == o.field_ && rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
}

std::strong_ordering FfMatrix::operator<=>(const FfMatrix& o) const {
    if (auto c = rows_ <=> o.rows_; c != 0) return c;
    if (auto c = cols_ <=> o.cols_; c != 0) return c;
    return std::lexicographical_compare_three_way(a_.begin(), a_.end(), o.a_.begin(), o.a_.end());
}

std::string FfMatrix::to_string() const {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < rows_; i++) {
        os << (i ? ",[" : "[");
        for (size_t j = 0; j < cols_; j++) os << (j ? "," : "") << at(i, j);
        os << "]";
    }
    os << "]";
    return os.str();
}

RowReduceResult row_reduce(const FfMatrix& m) {
    FfMatrix r = m;
    const PrimeField& f = m.field();
    std::vector<size_t> pivots;
    size_t rank = 0;
    for (size_t col = 0; col < r.cols() && rank < r.rows(); col++) {
        size_t sel = rank;
        while (sel < r.rows() && r.at(sel, col) == 0) sel++;
        if (sel == r.rows()) continue;
        r.swap_rows(rank, sel);
        r.scale_row(rank, f.inv(r.at(rank, col)));
        for (size_t i = 0; i < r.rows(); i++) {
            if (i == rank || r.at(i, col) == 0) continue;
            r.add_multiple_of_row(i, rank, f.neg(r.at(i, col)));
        }
        pivots.push_back(col);
        rank++;
    }
    return {std::move(r), rank, std::move(pivots)};
}

namespace {

// Solves A * X = B for column unknowns, free variables set to zero.
std::optional<FfMatrix> solve_columns(const FfMatrix& a, const FfMatrix& b) {
    if (a.rows() != b.rows()) throw DimensionMismatch("solve shape mismatch");
    const PrimeField& f = a.field();
    FfMatrix aug(f, a.rows(), a.cols() + b.cols());
    for (size_t i = 0; i < a.rows(); i++) {
        for (size_t j = 0; j < a.cols(); j++) aug.at(i, j) = a.at(i, j);
        for (size_t j = 0; j < b.cols(); j++) aug.at(i, a.cols() + j) = b.at(i, j);
    }
    auto rr = row_reduce(aug);
    FfMatrix x(f, a.cols(), b.cols());
    for (size_t i = 0; i < rr.rank; i++) {
        if (rr.pivots[i] >= a.cols()) return std::nullopt; // pivot in the rhs block
        for (size_t j = 0; j < b.cols(); j++) x.at(rr.pivots[i], j) = rr.rref.at(i, a.cols() + j);
    }
    return x;
}

// Basis of { y : A y = 0 } as rows.
FfMatrix right_kernel(const FfMatrix& a) {
    const PrimeField& f = a.field();
    auto rr = row_reduce(a);
    std::vector<bool> is_pivot(a.cols(), false);
    for (size_t c : rr.pivots) is_pivot[c] = true;
    size_t nfree = a.cols() - rr.rank;
    FfMatrix k(f, nfree, a.cols());
    size_t row = 0;
    for (size_t c = 0; c < a.cols(); c++) {
        if (is_pivot[c]) continue;
        k.at(row, c) = 1;
        for (size_t i = 0; i < rr.rank; i++) k.at(row, rr.pivots[i]) = f.neg(rr.rref.at(i, c));
        row++;
    }
    return k;
}

} // namespace

std::optional<FfMatrix> solve_left(const FfMatrix& m, const FfMatrix& rhs) {
    if (m.cols() != rhs.cols()) throw DimensionMismatch("solve_left shape mismatch");
    auto x = solve_columns(m.transpose(), rhs.transpose());
    if (!x) return std::nullopt;
    return x->transpose();
}

FfMatrix left_kernel(const FfMatrix& m) {
    auto k = right_kernel(m.transpose());
    auto rr = row_reduce(k);
    FfMatrix out(m.field(), rr.rank, m.rows());
    for (size_t i = 0; i < rr.rank; i++)
        for (size_t j = 0; j < m.rows(); j++) out.at(i, j) = rr.rref.at(i, j);
    return out;
}

uint32_t determinant(const FfMatrix& m) {
    if (m.rows() != m.cols()) throw DimensionMismatch("determinant of non-square matrix");
    const PrimeField& f = m.field();
    FfMatrix r = m;
    uint32_t det = 1;
    for (size_t col = 0; col < r.cols(); col++) {
        size_t sel = col;
        while (sel < r.rows() && r.at(sel, col) == 0) sel++;
        if (sel == r.rows()) return 0;
        if (sel != col) { r.swap_rows(col, sel); det = f.neg(det); }
        det = f.mul(det, r.at(col, col));
        uint32_t piv_inv = f.inv(r.at(col, col));
        for (size_t i = col + 1; i < r.rows(); i++) {
            if (r.at(i, col) == 0) continue;
            r.add_multiple_of_row(i, col, f.neg(f.mul(r.at(i, col), piv_inv)));
        }
    }
    return det;
}

FfMatrix inverse(const FfMatrix& m) {
    if (m.rows() != m.cols()) throw DimensionMismatch("inverse of non-square matrix");
    auto x = solve_columns(m, FfMatrix::identity(m.field(), m.rows()));
    if (!x) throw DependentRows("matrix is singular");
    // solve_columns leaves free variables zero; verify invertibility via rank
    if (row_reduce(m).rank != m.rows()) throw DependentRows("matrix is singular");
    return *x;
}

Subspace::Subspace(const FfMatrix& m) : basis_(m.field(), 0, m.cols()) {
    auto rr = row_reduce(m);
    FfMatrix b(m.field(), rr.rank, m.cols());
    for (size_t i = 0; i < rr.rank; i++)
        for (size_t j = 0; j < m.cols(); j++) b.at(i, j) = rr.rref.at(i, j);
    basis_ = std::move(b);
    pivots_ = std::move(rr.pivots);
}

Subspace Subspace::zero(PrimeField f, size_t ambient) {
    return Subspace(FfMatrix(f, 0, ambient));
}

bool Subspace::contains_vector(const FfMatrix& v) const {
    if (v.rows() != 1 || v.cols() != ambient()) throw DimensionMismatch("contains_vector expects a 1 x ambient row");
    return row_reduce(basis_.vstack(v)).rank == dim();
}

bool Subspace::contains(const Subspace& other) const {
    if (ambient() != other.ambient()) throw DimensionMismatch("ambient mismatch");
    if (other.dim() > dim()) return false;
    return row_reduce(basis_.vstack(other.basis_)).rank == dim();
}

Subspace Subspace::sum(const Subspace& other) const {
    return Subspace(basis_.vstack(other.basis_));
}

Subspace Subspace::intersect(const Subspace& other) const {
    if (ambient() != other.ambient()) throw DimensionMismatch("ambient mismatch");
    // x * B1 = y * B2 exactly when (x | y) kills the stacked matrix [B1; -B2]
    FfMatrix neg = other.basis_;
    for (size_t i = 0; i < neg.rows(); i++) neg.scale_row(i, field().neg(1));
    FfMatrix stacked = basis_.vstack(neg);
    FfMatrix k = left_kernel(stacked);
    FfMatrix xpart(field(), k.rows(), dim());
    for (size_t i = 0; i < k.rows(); i++)
        for (size_t j = 0; j < dim(); j++) xpart.at(i, j) = k.at(i, j);
    return Subspace(xpart.mul(basis_));
}

OrientedSubspace orientation_class(const FfMatrix& m) {
    const PrimeField& f = m.field();
    if (f.p() == 2) throw EvenCharacteristic("orientation classes need odd characteristic");
    auto rr = row_reduce(m);
    if (rr.rank != m.rows() || m.rows() == 0)
        throw DependentRows("orientation class needs independent, nonempty rows");
    FfMatrix c(f, m.rows(), m.rows());
    for (size_t i = 0; i < m.rows(); i++)
        for (size_t j = 0; j < m.rows(); j++) c.at(i, j) = m.at(i, rr.pivots[j]);
    uint32_t d = determinant(c);
    assert(d != 0);
    return {Subspace(m), std::min(d, f.p() - d)};
}

FfMatrix SymplecticSpace::gram() const {
    FfMatrix j(field_, ambient(), ambient());
    for (size_t i = 0; i < n_; i++) {
        j.at(2 * i, 2 * i + 1) = 1;
        j.at(2 * i + 1, 2 * i) = field_.neg(1);
    }
    return j;
}

uint32_t SymplecticSpace::pairing(const FfMatrix& u, const FfMatrix& v) const {
    if (u.cols() != ambient() || v.cols() != ambient() || u.rows() != 1 || v.rows() != 1)
        throw DimensionMismatch("pairing expects 1 x 2n rows");
    uint64_t acc = 0;
    for (size_t i = 0; i < n_; i++) {
        acc += uint64_t(u.at(0, 2 * i)) * v.at(0, 2 * i + 1) % field_.p();
        acc += uint64_t(field_.p() - 1) * (uint64_t(u.at(0, 2 * i + 1)) * v.at(0, 2 * i) % field_.p()) % field_.p();
    }
    return uint32_t(acc % field_.p());
}

bool SymplecticSpace::is_symplectic_matrix(const FfMatrix& m) const {
    if (m.rows() != ambient() || m.cols() != ambient()) return false;
    FfMatrix j = gram();
    return m.mul(j).mul(m.transpose()) == j;
}

bool SymplecticSpace::is_isotropic(const Subspace& s) const {
    if (s.ambient() != ambient()) throw DimensionMismatch("ambient mismatch");
    for (size_t i = 0; i < s.dim(); i++)
        for (size_t j = i + 1; j < s.dim(); j++)
            if (pairing(s.basis().row(i), s.basis().row(j)) != 0) return false;
    return true;
}

Subspace SymplecticSpace::perp(const Subspace& s) const {
    if (s.ambient() != ambient()) throw DimensionMismatch("ambient mismatch");
    if (s.dim() == 0) return Subspace(FfMatrix::identity(field_, ambient()));
    FfMatrix a = s.basis().mul(gram()); // perp = right kernel of B J
    return Subspace(right_kernel(a));
}

FfMatrix SymplecticSpace::transvection(const FfMatrix& v, uint32_t a) const {
    if (v.rows() != 1 || v.cols() != ambient()) throw DimensionMismatch("transvection vector must be 1 x 2n");
    // T = I + a (J v^T) v, so x T = x + a omega(x, v) v
    FfMatrix t = FfMatrix::identity(field_, ambient());
    for (size_t i = 0; i < ambient(); i++) {
        uint32_t jv = (i % 2 == 0) ? v.at(0, i + 1) : field_.neg(v.at(0, i - 1));
        if (jv == 0) continue;
        uint32_t c = field_.mul(a % field_.p(), jv);
        for (size_t j = 0; j < ambient(); j++)
            t.at(i, j) = field_.add(t.at(i, j), field_.mul(c, v.at(0, j)));
    }
    return t;
}

std::pair<size_t, size_t> parse_symplectic_pattern(const FfMatrix& gram) {
    size_t r = gram.rows();
    const PrimeField& f = gram.field();
    size_t m = 0;
    while (2 * (m + 1) <= r && gram.at(2 * m, 2 * m + 1) == 1) m++;
    size_t k = r - 2 * m;
    for (size_t i = 0; i < r; i++)
        for (size_t j = 0; j < r; j++) {
            uint32_t want = 0;
            if (i / 2 == j / 2 && i / 2 < m) {
                if (i + 1 == j) want = 1;
                else if (j + 1 == i) want = f.neg(1);
            }
            if (gram.at(i, j) != want)
                throw PairingViolation("pairings do not match the pattern v_1,w_1,...,v_m,w_m,v_{m+1},...,v_{m+k} at (" +
                                       std::to_string(i) + "," + std::to_string(j) + ")");
        }
    return {m, k};
}

std::vector<size_t> symplectic_row_order(size_t n, size_t m, size_t k) {
    // perm[s] = output row sitting at interleaved slot s; only the unpaired
    // block deviates from the identity (partners are appended after the input)
    std::vector<size_t> perm(2 * n);
    for (size_t s = 0; s < 2 * n; s++) perm[s] = s;
    for (size_t j = 0; j < k; j++) {
        perm[2 * (m + j)] = 2 * m + j;
        perm[2 * (m + j) + 1] = 2 * m + k + j;
    }
    return perm;
}

FfMatrix complete_symplectic_basis_ff(const FfMatrix& partial, const SymplecticSpace& sp) {
    if (partial.cols() != sp.ambient()) throw DimensionMismatch("partial basis has wrong ambient dimension");
    if (partial.rows() > sp.ambient()) throw DependentRows("too many rows");
    if (row_reduce(partial).rank != partial.rows()) throw DependentRows("partial basis rows are dependent");
    size_t r = partial.rows();
    const PrimeField& f = sp.field();

    FfMatrix gram(f, r, r);
    for (size_t i = 0; i < r; i++)
        for (size_t j = 0; j < r; j++) gram.at(i, j) = sp.pairing(partial.row(i), partial.row(j));
    auto [m, k] = parse_symplectic_pattern(gram);

    FfMatrix out = partial;
    FfMatrix jmat = sp.gram();
    for (size_t j = 0; j < k; j++) {
        // partner of input row 2m + j, pairing 1 with it and 0 with every other chosen row
        FfMatrix a = out.mul(jmat);
        FfMatrix rhs(f, out.rows(), 1);
        rhs.at(2 * m + j, 0) = 1;
        auto w = solve_columns(a, rhs);
        assert(w); // a has full row rank, the system is always consistent
        out = out.vstack(w->transpose());
    }

    // orthogonal complement of the paired span; the form is nondegenerate there
    Subspace c = sp.perp(Subspace(out));
    while (c.dim() > 0) {
        FfMatrix v = c.basis().row(0);
        FfMatrix gc(f, 1, c.dim());
        for (size_t t = 0; t < c.dim(); t++) gc.at(0, t) = sp.pairing(v, c.basis().row(t));
        size_t t = 0;
        while (t < c.dim() && gc.at(0, t) == 0) t++;
        assert(t < c.dim());
        FfMatrix w = c.basis().row(t);
        w.scale_row(0, f.inv(gc.at(0, t)));
        out = out.vstack(v).vstack(w);
        FfMatrix vw = v.vstack(w);
        c = c.intersect(sp.perp(Subspace(vw)));
    }
    assert(out.rows() == sp.ambient());
    return out;
}

} // namespace stein
