#include "stein/homology.hpp"

#include <algorithm>
#include <cstdlib>
#include <future>
#include <set>
#include <string>
#include <utility>

#include "stein/errors.hpp"
#include "stein/ff.hpp"

namespace stein {

namespace {

void check_sparse(const SparseMatrix& m) {
    if (m.col.size() != m.cols)
        throw RangeError("sparse matrix has " + std::to_string(m.col.size()) +
                         " column vectors but claims " + std::to_string(m.cols) + " columns");
    for (size_t c = 0; c < m.cols; ++c) {
        uint32_t prev = 0;
        bool first = true;
        for (auto [r, v] : m.col[c]) {
            if (r >= m.rows)
                throw RangeError("sparse matrix entry at row " + std::to_string(r) +
                                 " outside " + std::to_string(m.rows) + " rows");
            if (!first && r <= prev)
                throw RangeError("sparse matrix column " + std::to_string(c) +
                                 " rows not strictly increasing");
            if (v == 0)
                throw RangeError("sparse matrix stores an explicit zero in column " +
                                 std::to_string(c));
            prev = r;
            first = false;
        }
    }
}

// Shared elimination skeleton. Columns are kept sorted by row and hold only
// live rows; a cleared column vector marks a retired column. The queue orders
// live columns by (population, index) so the pivot choice is deterministic,
// and hint[r] lists columns that may contain row r (lazily pruned).
struct EliminationOrder {
    std::set<std::pair<uint32_t, uint32_t>> queue;
    std::vector<uint32_t> rowcnt;
    std::vector<std::vector<uint32_t>> hint;
};

size_t rank_modq_impl(const SparseMatrix& m, uint32_t q) {
    PrimeField field(q); // rejects composites
    const uint64_t Q = q;
    std::vector<std::vector<std::pair<uint32_t, uint32_t>>> cols(m.cols);
    EliminationOrder ord;
    ord.rowcnt.assign(m.rows, 0);
    ord.hint.resize(m.rows);
    for (size_t c = 0; c < m.cols; ++c) {
        for (auto [r, v] : m.col[c]) {
            int64_t vm = v % int64_t(Q);
            if (vm < 0) vm += int64_t(Q);
            if (vm == 0) continue;
            cols[c].push_back({r, uint32_t(vm)});
            ord.rowcnt[r]++;
            ord.hint[r].push_back(uint32_t(c));
        }
        if (!cols[c].empty()) ord.queue.insert({uint32_t(cols[c].size()), uint32_t(c)});
    }

    size_t rank = 0;
    std::vector<std::pair<uint32_t, uint32_t>> merged;
    while (!ord.queue.empty()) {
        uint32_t c = ord.queue.begin()->second;
        ord.queue.erase(ord.queue.begin());
        uint32_t pr = 0;
        uint64_t pv = 0;
        uint32_t best = UINT32_MAX;
        for (auto [r, v] : cols[c])
            if (ord.rowcnt[r] < best) {
                best = ord.rowcnt[r];
                pr = r;
                pv = v;
            }
        ++rank;
        const uint64_t pinv = field.inv(uint32_t(pv));
        std::vector<uint32_t> cand;
        cand.swap(ord.hint[pr]);
        for (uint32_t c2 : cand) {
            if (c2 == c || cols[c2].empty()) continue;
            auto& dst = cols[c2];
            auto it = std::lower_bound(
                dst.begin(), dst.end(), pr,
                [](const std::pair<uint32_t, uint32_t>& a, uint32_t r) { return a.first < r; });
            if (it == dst.end() || it->first != pr) continue; // stale hint
            const uint64_t t = uint64_t(it->second) * pinv % Q;
            merged.clear();
            auto pa = dst.cbegin();
            auto pb = cols[c].cbegin();
            while (pa != dst.cend() || pb != cols[c].cend()) {
                if (pb == cols[c].cend() || (pa != dst.cend() && pa->first < pb->first)) {
                    merged.push_back(*pa);
                    ++pa;
                } else if (pa == dst.cend() || pb->first < pa->first) {
                    const uint64_t nv = (Q - t * pb->second % Q) % Q;
                    if (nv != 0) {
                        merged.push_back({pb->first, uint32_t(nv)});
                        ord.rowcnt[pb->first]++;
                        ord.hint[pb->first].push_back(c2);
                    }
                    ++pb;
                } else {
                    const uint64_t sub = t * pb->second % Q;
                    const uint64_t nv = (pa->second + Q - sub) % Q;
                    if (nv != 0)
                        merged.push_back({pa->first, uint32_t(nv)});
                    else
                        ord.rowcnt[pa->first]--;
                    ++pa;
                    ++pb;
                }
            }
            const uint32_t oldnz = uint32_t(dst.size());
            dst.assign(merged.begin(), merged.end());
            ord.queue.erase({oldnz, c2});
            if (!dst.empty()) ord.queue.insert({uint32_t(dst.size()), c2});
        }
        for (auto [r, v] : cols[c]) {
            (void)v;
            if (r != pr) ord.rowcnt[r]--;
        }
        cols[c].clear();
    }
    return rank;
}

size_t rank_exact_impl(const SparseMatrix& m) {
    std::vector<std::vector<std::pair<uint32_t, Int>>> cols(m.cols);
    EliminationOrder ord;
    ord.rowcnt.assign(m.rows, 0);
    ord.hint.resize(m.rows);
    for (size_t c = 0; c < m.cols; ++c) {
        for (auto [r, v] : m.col[c]) {
            cols[c].push_back({r, Int(v)});
            ord.rowcnt[r]++;
            ord.hint[r].push_back(uint32_t(c));
        }
        if (!cols[c].empty()) ord.queue.insert({uint32_t(cols[c].size()), uint32_t(c)});
    }

    size_t rank = 0;
    std::vector<std::pair<uint32_t, Int>> merged;
    Int g, a, b, nv;
    while (!ord.queue.empty()) {
        uint32_t c = ord.queue.begin()->second;
        ord.queue.erase(ord.queue.begin());
        // favor unit pivots, then sparse rows, to contain coefficient growth
        uint32_t pr = 0;
        const Int* pv = nullptr;
        std::tuple<int, uint32_t, uint32_t> best{2, UINT32_MAX, UINT32_MAX};
        for (auto& [r, v] : cols[c]) {
            const int nonunit = (v == 1 || v == -1) ? 0 : 1;
            std::tuple<int, uint32_t, uint32_t> key{nonunit, ord.rowcnt[r], r};
            if (key < best) {
                best = key;
                pr = r;
                pv = &v;
            }
        }
        ++rank;
        const Int pivot = *pv;
        std::vector<uint32_t> cand;
        cand.swap(ord.hint[pr]);
        for (uint32_t c2 : cand) {
            if (c2 == c || cols[c2].empty()) continue;
            auto& dst = cols[c2];
            auto it = std::lower_bound(
                dst.begin(), dst.end(), pr,
                [](const std::pair<uint32_t, Int>& e, uint32_t r) { return e.first < r; });
            if (it == dst.end() || it->first != pr) continue;
            mpz_gcd(g.get_mpz_t(), pivot.get_mpz_t(), it->second.get_mpz_t());
            mpz_divexact(a.get_mpz_t(), pivot.get_mpz_t(), g.get_mpz_t());
            mpz_divexact(b.get_mpz_t(), it->second.get_mpz_t(), g.get_mpz_t());
            // dst := a * dst - b * pivot column, which zeroes row pr exactly
            merged.clear();
            auto pa = dst.cbegin();
            auto pb = cols[c].cbegin();
            while (pa != dst.cend() || pb != cols[c].cend()) {
                if (pb == cols[c].cend() || (pa != dst.cend() && pa->first < pb->first)) {
                    merged.push_back({pa->first, a * pa->second});
                    ++pa;
                } else if (pa == dst.cend() || pb->first < pa->first) {
                    merged.push_back({pb->first, -b * pb->second});
                    ord.rowcnt[pb->first]++;
                    ord.hint[pb->first].push_back(c2);
                    ++pb;
                } else {
                    nv = a * pa->second - b * pb->second;
                    if (nv != 0)
                        merged.push_back({pa->first, nv});
                    else
                        ord.rowcnt[pa->first]--;
                    ++pa;
                    ++pb;
                }
            }
            if (!merged.empty()) {
                // strip the column content so entries stay near the minors' size
                mpz_set(g.get_mpz_t(), merged[0].second.get_mpz_t());
                mpz_abs(g.get_mpz_t(), g.get_mpz_t());
                for (size_t i = 1; i < merged.size() && g != 1; ++i)
                    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), merged[i].second.get_mpz_t());
                if (g > 1)
                    for (auto& [r, v] : merged)
                        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
            }
            const uint32_t oldnz = uint32_t(dst.size());
            dst.assign(merged.begin(), merged.end());
            ord.queue.erase({oldnz, c2});
            if (!dst.empty()) ord.queue.insert({uint32_t(dst.size()), c2});
        }
        for (auto& [r, v] : cols[c]) {
            (void)v;
            if (r != pr) ord.rowcnt[r]--;
        }
        cols[c].clear();
    }
    return rank;
}

size_t thread_limit() {
    const char* s = std::getenv("STEIN_THREADS");
    if (s == nullptr || *s == '\0') return 2;
    char* end = nullptr;
    unsigned long v = std::strtoul(s, &end, 10);
    if (end == s || *end != '\0' || v == 0) return 1;
    return std::min<unsigned long>(v, 64);
}

} // namespace

BoundaryMatrices boundary_matrices(const SimplicialComplex& c) {
    c.validate();
    BoundaryMatrices bm;
    const size_t dims = c.dim_count();
    bm.del.resize(dims);
    if (dims == 0) return bm;
    const std::vector<size_t> f = c.f_vector();

    bm.del[0].rows = 1;
    bm.del[0].cols = f[0];
    bm.del[0].col.assign(f[0], {{0, 1}});

    std::vector<uint32_t> facet;
    for (size_t d = 1; d < dims; ++d) {
        SparseMatrix& M = bm.del[d];
        M.rows = f[d - 1];
        M.cols = f[d];
        M.col.resize(f[d]);
        facet.assign(d, 0);
        for (size_t i = 0; i < f[d]; ++i) {
            const uint32_t* t = c.simplex(d, i);
            auto& column = M.col[i];
            column.reserve(d + 1);
            for (size_t j = 0; j <= d; ++j) {
                size_t w = 0;
                for (size_t k = 0; k <= d; ++k)
                    if (k != j) facet[w++] = t[k];
                const size_t idx = c.simplex_index(d - 1, facet.data());
                if (idx == SimplicialComplex::npos)
                    throw NotFaceClosed("missing facet while assembling a boundary matrix");
                column.push_back({uint32_t(idx), (j % 2 == 0) ? 1 : -1});
            }
            std::sort(column.begin(), column.end());
        }
    }

    // audit the chain-complex identity del_{d-1} o del_d = 0
    for (size_t d = 1; d < dims; ++d) {
        const SparseMatrix& A = bm.del[d - 1];
        const SparseMatrix& B = bm.del[d];
        std::vector<int64_t> acc(A.rows, 0);
        std::vector<uint32_t> touched;
        for (size_t i = 0; i < B.cols; ++i) {
            touched.clear();
            for (auto [r, v] : B.col[i])
                for (auto [r2, v2] : A.col[r]) {
                    if (acc[r2] == 0) touched.push_back(r2);
                    acc[r2] += int64_t(v) * v2;
                }
            for (uint32_t r2 : touched) {
                if (acc[r2] != 0)
                    throw VerificationFailure(
                        "boundary composed with boundary is nonzero in dimension " +
                        std::to_string(d));
                acc[r2] = 0;
            }
        }
    }
    return bm;
}

size_t sparse_rank_modq(const SparseMatrix& m, uint32_t q) {
    if (q <= 2)
        throw PrimeTooSmall("modular rank needs an odd prime, got q = " + std::to_string(q));
    check_sparse(m);
    return rank_modq_impl(m, q);
}

size_t sparse_rank_exact(const SparseMatrix& m) {
    check_sparse(m);
    return rank_exact_impl(m);
}

Int reduced_euler(const SimplicialComplex& c) {
    Int r = -1;
    const std::vector<size_t> f = c.f_vector();
    for (size_t d = 0; d < f.size(); ++d) {
        if (d % 2 == 0)
            r += static_cast<unsigned long>(f[d]);
        else
            r -= static_cast<unsigned long>(f[d]);
    }
    return r;
}

BettiVector reduced_betti(const SimplicialComplex& c, RankMethod method,
                          const std::vector<uint32_t>& primes) {
    const BoundaryMatrices bm = boundary_matrices(c);
    const size_t dims = c.dim_count();
    const std::vector<size_t> f = c.f_vector();

    BettiVector out;
    out.method = method;
    out.euler = reduced_euler(c);

    std::vector<size_t> rank(dims + 1, 0);
    if (method == RankMethod::modq) {
        std::vector<uint32_t> qs = primes;
        if (qs.empty()) qs = {1073741789u, 1073741783u};
        for (uint32_t q : qs) {
            if (q <= 2)
                throw PrimeTooSmall("modular rank needs an odd prime, got q = " +
                                    std::to_string(q));
            PrimeField probe(q);
            (void)probe;
        }
        auto ranks_for = [&bm, dims](uint32_t q) {
            std::vector<size_t> r(dims, 0);
            for (size_t d = 0; d < dims; ++d) r[d] = rank_modq_impl(bm.del[d], q);
            return r;
        };
        std::vector<std::vector<size_t>> per(qs.size());
        const size_t workers = std::min(thread_limit(), qs.size());
        if (workers <= 1) {
            for (size_t k = 0; k < qs.size(); ++k) per[k] = ranks_for(qs[k]);
        } else {
            for (size_t base = 0; base < qs.size(); base += workers) {
                const size_t stop = std::min(base + workers, qs.size());
                std::vector<std::future<std::vector<size_t>>> fut;
                for (size_t k = base; k < stop; ++k)
                    fut.push_back(std::async(std::launch::async, ranks_for, qs[k]));
                for (size_t k = base; k < stop; ++k) per[k] = fut[k - base].get();
            }
        }
        for (size_t k = 1; k < qs.size(); ++k)
            for (size_t d = 0; d < dims; ++d)
                if (per[k][d] != per[0][d])
                    throw MethodDisagreement(
                        "boundary rank in dimension " + std::to_string(d) + " differs mod " +
                        std::to_string(qs[0]) + " (" + std::to_string(per[0][d]) + ") and mod " +
                        std::to_string(qs[k]) + " (" + std::to_string(per[k][d]) + ")");
        for (size_t d = 0; d < dims; ++d) rank[d] = per[0][d];
        out.primes = qs;
    } else {
        for (size_t d = 0; d < dims; ++d) rank[d] = rank_exact_impl(bm.del[d]);
    }

    out.betti.resize(dims);
    Int signed_sum = 0;
    for (size_t d = 0; d < dims; ++d) {
        Int b = static_cast<unsigned long>(f[d]);
        b -= static_cast<unsigned long>(rank[d]);
        b -= static_cast<unsigned long>(rank[d + 1]);
        if (b < 0)
            throw VerificationFailure("negative Betti number in dimension " + std::to_string(d));
        if (d % 2 == 0)
            signed_sum += b;
        else
            signed_sum -= b;
        out.betti[d] = b;
    }
    if (dims == 0) signed_sum -= 1; // the empty complex has reduced homology in degree -1
    if (signed_sum != out.euler)
        throw VerificationFailure("Betti numbers contradict the Euler characteristic: " +
                                  signed_sum.get_str() + " != " + out.euler.get_str());

    if (dims > 0) {
        bool concentrated = true;
        for (size_t d = 0; d + 1 < dims; ++d)
            if (out.betti[d] != 0) concentrated = false;
        if (concentrated) out.spherical_degree = dims - 1;
    }
    return out;
}

std::optional<size_t> sphericity(const SimplicialComplex& c) {
    return reduced_betti(c, RankMethod::modq).spherical_degree;
}

} // namespace stein
