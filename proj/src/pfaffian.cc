#include "stein/pfaffian.hpp"
#include <cassert>

namespace stein {

namespace {

void check_skew_even(const IntMatrix& a) {
    if (a.rows() != a.cols()) throw NotSkew("matrix is not square");
    if (a.rows() % 2 != 0) throw OddDimension("Pfaffian needs even size, got " + std::to_string(a.rows()));
    for (size_t i = 0; i < a.rows(); i++)
        for (size_t j = i; j < a.cols(); j++)
            if (a.at(i, j) != -a.at(j, i))
                throw NotSkew("matrix is not skew-symmetric at (" + std::to_string(i) + "," + std::to_string(j) + ")");
}

Int divexact_checked(const Int& num, const Int& den) {
    Int q, r;
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    assert(r == 0);
    return q;
}

// pf of a skew matrix, recursing on the Schur complement of the leading
// 2x2 block: pf(A) = b^(2-m) * pf(S') for size 2m, pivot b = A[0][1], and
// S'[i][j] = b A[i][j] + A[1][i] A[0][j] - A[0][i] A[1][j].
Int pf_rec(IntMatrix a) {
    size_t sz = a.rows();
    if (sz == 0) return 1;
    size_t j0 = 1;
    while (j0 < sz && a.at(0, j0) == 0) j0++;
    if (j0 == sz) return 0; // first row vanishes, so does the Pfaffian
    Int sign = 1;
    if (j0 != 1) {
        a.swap_rows(1, j0);
        a.swap_cols(1, j0);
        sign = -1;
    }
    if (sz == 2) return sign * a.at(0, 1);
    const Int b = a.at(0, 1);
    IntMatrix s(sz - 2, sz - 2);
    for (size_t i = 2; i < sz; i++)
        for (size_t j = i + 1; j < sz; j++) {
            Int v = b * a.at(i, j) + a.at(1, i) * a.at(0, j) - a.at(0, i) * a.at(1, j);
            s.at(i - 2, j - 2) = v;
            s.at(j - 2, i - 2) = -v;
        }
    Int sub = pf_rec(std::move(s));
    size_t m = sz / 2;
    Int denom;
    mpz_pow_ui(denom.get_mpz_t(), b.get_mpz_t(), m - 2);
    return sign * divexact_checked(sub, denom);
}

Int partition_rec(const IntMatrix& a, std::vector<size_t>& live) {
    if (live.empty()) return 1;
    size_t first = live[0];
    Int acc = 0;
    for (size_t t = 1; t < live.size(); t++) {
        size_t partner = live[t];
        if (a.at(first, partner) == 0) continue;
        std::vector<size_t> rest;
        rest.reserve(live.size() - 2);
        for (size_t s = 1; s < live.size(); s++)
            if (s != t) rest.push_back(live[s]);
        Int term = a.at(first, partner) * partition_rec(a, rest);
        if (t % 2 == 0) term = -term; // sign of the transposition count
        acc += term;
    }
    return acc;
}

} // namespace

Int pfaffian(const IntMatrix& a) {
    check_skew_even(a);
    return pf_rec(a);
}

Int pfaffian_partition_sum(const IntMatrix& a) {
    check_skew_even(a);
    std::vector<size_t> live(a.rows());
    for (size_t i = 0; i < live.size(); i++) live[i] = i;
    return partition_rec(a, live);
}

} // namespace stein
