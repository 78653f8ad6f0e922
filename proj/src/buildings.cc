#include "stein/buildings.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>

#include "stein/errors.hpp"
#include "stein/formulas.hpp"

namespace stein {

BuildingKind parse_building_kind(const std::string& name) {
    if (name == "linear") return BuildingKind::linear;
    if (name == "linear-pm") return BuildingKind::linear_pm;
    if (name == "symplectic") return BuildingKind::symplectic;
    if (name == "symplectic-pm") return BuildingKind::symplectic_pm;
    if (name == "symplectic-restricted") return BuildingKind::symplectic_restricted;
    if (name == "symplectic-restricted-pm") return BuildingKind::symplectic_restricted_pm;
    throw RangeError("unknown building kind: " + name);
}

std::string building_kind_name(BuildingKind kind) {
    switch (kind) {
        case BuildingKind::linear: return "linear";
        case BuildingKind::linear_pm: return "linear-pm";
        case BuildingKind::symplectic: return "symplectic";
        case BuildingKind::symplectic_pm: return "symplectic-pm";
        case BuildingKind::symplectic_restricted: return "symplectic-restricted";
        case BuildingKind::symplectic_restricted_pm: return "symplectic-restricted-pm";
    }
    throw RangeError("invalid building kind value");
}

bool kind_is_linear(BuildingKind kind) {
    return kind == BuildingKind::linear || kind == BuildingKind::linear_pm;
}

bool kind_is_restricted(BuildingKind kind) {
    return kind == BuildingKind::symplectic_restricted ||
           kind == BuildingKind::symplectic_restricted_pm;
}

bool kind_is_pm(BuildingKind kind) {
    return kind == BuildingKind::linear_pm || kind == BuildingKind::symplectic_pm ||
           kind == BuildingKind::symplectic_restricted_pm;
}

namespace {

// Compares two id tuples of the same width lexicographically.
int tuple_cmp(const uint32_t* a, const uint32_t* b, size_t w) {
    for (size_t i = 0; i < w; ++i) {
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    }
    return 0;
}

// Visits every m-row RREF matrix of full rank m with `ambient` columns:
// pick pivot columns, sweep the free entries odometer-style.
template <class Emit>
void for_each_rref(const PrimeField& f, size_t ambient, size_t m, Emit&& emit) {
    if (m == 0) {
        emit(FfMatrix(f, 0, ambient));
        return;
    }
    if (m > ambient) return;
    const uint32_t p = f.p();
    std::vector<size_t> piv(m);
    std::iota(piv.begin(), piv.end(), size_t(0));
    std::vector<char> is_piv(ambient, 0);
    for (;;) {
        std::fill(is_piv.begin(), is_piv.end(), 0);
        for (size_t c : piv) is_piv[c] = 1;
        std::vector<std::pair<size_t, size_t>> free_pos;
        for (size_t i = 0; i < m; ++i) {
            for (size_t c = piv[i] + 1; c < ambient; ++c) {
                if (!is_piv[c]) free_pos.emplace_back(i, c);
            }
        }
        FfMatrix base(f, m, ambient);
        for (size_t i = 0; i < m; ++i) base.at(i, piv[i]) = 1;
        std::vector<uint32_t> digits(free_pos.size(), 0);
        bool more = true;
        while (more) {
            emit(base);
            more = false;
            for (size_t t = digits.size(); t-- > 0;) {
                auto [i, c] = free_pos[t];
                if (++digits[t] < p) {
                    base.at(i, c) = digits[t];
                    more = true;
                    break;
                }
                digits[t] = 0;
                base.at(i, c) = 0;
            }
        }
        // next pivot column combination
        size_t j = m;
        bool advanced = false;
        while (j-- > 0) {
            if (piv[j] + (m - j) < ambient) {
                ++piv[j];
                for (size_t t = j + 1; t < m; ++t) piv[t] = piv[t - 1] + 1;
                advanced = true;
                break;
            }
        }
        if (!advanced) break;
    }
}

// omega(u, v) in the interleaved basis, rows of a common matrix
uint32_t row_pairing(const PrimeField& f, const FfMatrix& m, size_t i, size_t j) {
    uint32_t acc = 0;
    for (size_t t = 0; t + 1 < m.cols(); t += 2) {
        acc = f.add(acc, f.mul(m.at(i, t), m.at(j, t + 1)));
        acc = f.sub(acc, f.mul(m.at(i, t + 1), m.at(j, t)));
    }
    return acc;
}

bool rows_isotropic(const PrimeField& f, const FfMatrix& m) {
    for (size_t i = 0; i < m.rows(); ++i) {
        for (size_t j = i + 1; j < m.rows(); ++j) {
            if (row_pairing(f, m, i, j) != 0) return false;
        }
    }
    return true;
}

std::vector<Subspace> wrap_sorted(std::vector<FfMatrix> mats) {
    std::sort(mats.begin(), mats.end(),
              [](const FfMatrix& a, const FfMatrix& b) { return (a <=> b) < 0; });
    std::vector<Subspace> out;
    out.reserve(mats.size());
    for (const FfMatrix& m : mats) out.emplace_back(m);
    return out;
}

} // namespace

std::vector<Subspace> enumerate_subspaces(uint32_t p, size_t ambient, size_t m) {
    PrimeField f(p);
    if (m > ambient) throw RangeError("subspace dimension exceeds the ambient dimension");
    std::vector<FfMatrix> mats;
    for_each_rref(f, ambient, m, [&](const FfMatrix& b) { mats.push_back(b); });
    return wrap_sorted(std::move(mats));
}

std::vector<Subspace> enumerate_isotropic_subspaces(uint32_t p, size_t n, size_t m) {
    PrimeField f(p);
    if (m > n) throw RangeError("isotropic dimension exceeds n");
    std::vector<FfMatrix> mats;
    for_each_rref(f, 2 * n, m, [&](const FfMatrix& b) {
        if (rows_isotropic(f, b)) mats.push_back(b);
    });
    return wrap_sorted(std::move(mats));
}

uint64_t simplex_cap() {
    const char* env = std::getenv("STEIN_SIMPLEX_CAP");
    if (env != nullptr && *env != '\0') {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return v;
    }
    return 100000000ull;
}

SimplicialComplex::SimplicialComplex(size_t vertex_count,
                                     std::vector<std::vector<uint32_t>> higher)
    : vertex_count_(vertex_count) {
    while (!higher.empty() && higher.back().empty()) higher.pop_back();
    if (vertex_count_ == 0) {
        if (!higher.empty()) throw NotASimplex("simplices listed without vertices");
        return;
    }
    by_dim_.emplace_back(vertex_count_);
    std::iota(by_dim_[0].begin(), by_dim_[0].end(), uint32_t(0));
    for (size_t h = 0; h < higher.size(); ++h) {
        const size_t w = h + 2;
        std::vector<uint32_t>& flat = higher[h];
        if (flat.size() % w != 0) throw NotASimplex("flat simplex list has a partial tuple");
        const size_t cnt = flat.size() / w;
        for (size_t i = 0; i < cnt; ++i) {
            const uint32_t* t = flat.data() + i * w;
            for (size_t j = 0; j < w; ++j) {
                if (t[j] >= vertex_count_) throw NotASimplex("vertex id out of range");
                if (j > 0 && t[j] <= t[j - 1]) {
                    throw NotASimplex("simplex tuple is not strictly increasing");
                }
            }
        }
        std::vector<uint32_t> perm(cnt);
        std::iota(perm.begin(), perm.end(), uint32_t(0));
        std::sort(perm.begin(), perm.end(), [&](uint32_t a, uint32_t b) {
            return tuple_cmp(flat.data() + size_t(a) * w, flat.data() + size_t(b) * w, w) < 0;
        });
        std::vector<uint32_t> sorted(flat.size());
        for (size_t i = 0; i < cnt; ++i) {
            std::copy_n(flat.data() + size_t(perm[i]) * w, w, sorted.data() + i * w);
        }
        for (size_t i = 1; i < cnt; ++i) {
            if (tuple_cmp(sorted.data() + (i - 1) * w, sorted.data() + i * w, w) == 0) {
                throw NotASimplex("duplicate simplex");
            }
        }
        by_dim_.push_back(std::move(sorted));
    }
}

size_t SimplicialComplex::count(size_t d) const {
    if (d >= by_dim_.size()) return 0;
    return by_dim_[d].size() / (d + 1);
}

std::vector<size_t> SimplicialComplex::f_vector() const {
    std::vector<size_t> f;
    for (size_t d = 0; d < dim_count(); ++d) f.push_back(count(d));
    return f;
}

size_t SimplicialComplex::simplex_index(size_t d, const uint32_t* t) const {
    if (d >= by_dim_.size()) return npos;
    const std::vector<uint32_t>& flat = by_dim_[d];
    const size_t w = d + 1;
    size_t lo = 0, hi = flat.size() / w;
    while (lo < hi) {
        const size_t mid = lo + (hi - lo) / 2;
        const int c = tuple_cmp(flat.data() + mid * w, t, w);
        if (c == 0) return mid;
        if (c < 0) {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    return npos;
}

bool SimplicialComplex::contains_simplex(const std::vector<uint32_t>& s) const {
    if (s.empty()) return false;
    std::vector<uint32_t> t(s);
    std::sort(t.begin(), t.end());
    if (std::adjacent_find(t.begin(), t.end()) != t.end()) return false;
    return simplex_index(t.size() - 1, t.data()) != npos;
}

void SimplicialComplex::validate() const {
    std::vector<uint32_t> facet;
    for (size_t d = 1; d < by_dim_.size(); ++d) {
        const size_t w = d + 1;
        const std::vector<uint32_t>& flat = by_dim_[d];
        facet.resize(d);
        for (size_t i = 0; i * w < flat.size(); ++i) {
            const uint32_t* t = flat.data() + i * w;
            for (size_t j = 0; j < w; ++j) {
                for (size_t r = 0, k = 0; r < w; ++r) {
                    if (r != j) facet[k++] = t[r];
                }
                if (simplex_index(d - 1, facet.data()) == npos) {
                    throw NotFaceClosed("missing facet of a dimension-" + std::to_string(d) +
                                        " simplex");
                }
            }
        }
    }
}

Building build_building(BuildingKind kind, size_t n, uint32_t p) {
    PrimeField f(p);
    const bool lin = kind_is_linear(kind);
    const bool res = kind_is_restricted(kind);
    const bool pm = kind_is_pm(kind);
    if (lin && n < 2) throw SpecViolation("linear buildings require n >= 2");
    if (!lin && n < 1) throw SpecViolation("symplectic buildings require n >= 1");
    if (pm && p < 3) throw SpecViolation("pm buildings require p >= 3");

    const uint64_t cap = simplex_cap();
    const uint64_t kcls = pm ? uint64_t((p - 1) / 2) : 1;
    const size_t top = lin ? n - 1 : n;
    const size_t amb = lin ? n : 2 * n;

    Int predicted_vertices = 0;
    for (size_t m = 1; m <= top; ++m) {
        predicted_vertices += lin ? gaussian_binomial(n, m, p) : iso_grassmannian(n, m, p);
    }
    predicted_vertices *= Int(static_cast<unsigned long>(kcls));
    if (predicted_vertices > Int(static_cast<unsigned long>(cap))) {
        throw CapExceeded("predicted vertex count " + predicted_vertices.get_str() +
                          (res ? " (upper bound)" : "") + " exceeds the simplex cap " +
                          std::to_string(cap));
    }

    std::vector<std::vector<Subspace>> groups(top + 1);
    std::vector<size_t> offset(top + 2, 0);
    for (size_t m = 1; m <= top; ++m) {
        groups[m] = lin ? enumerate_subspaces(p, n, m) : enumerate_isotropic_subspaces(p, n, m);
        if (res) {
            std::erase_if(groups[m], [&](const Subspace& s) {
                for (size_t r = 0; r < s.dim(); ++r) {
                    if (s.basis().at(r, amb - 1) != 0) return true;
                }
                return false;
            });
        }
        offset[m + 1] = offset[m] + groups[m].size();
    }
    const size_t nplain = offset[top + 1];

    // adjacency upward: for each vertex, the ids of the strictly larger
    // comparable vertices; generated by mapping the subspaces of each vertex
    // through its basis and locating them in the enumeration
    std::vector<std::vector<uint32_t>> up(nplain);
    std::map<std::pair<size_t, size_t>, std::vector<FfMatrix>> patterns;
    for (size_t m = 2; m <= top; ++m) {
        for (size_t j = 1; j < m; ++j) {
            auto key = std::make_pair(m, j);
            auto it = patterns.find(key);
            if (it == patterns.end()) {
                std::vector<FfMatrix> pats;
                for_each_rref(f, m, j, [&](const FfMatrix& b) { pats.push_back(b); });
                it = patterns.emplace(key, std::move(pats)).first;
            }
            const std::vector<Subspace>& small = groups[j];
            for (size_t idx = 0; idx < groups[m].size(); ++idx) {
                const uint32_t wid = uint32_t(offset[m] + idx);
                const FfMatrix& basis = groups[m][idx].basis();
                for (const FfMatrix& pat : it->second) {
                    Subspace sub(pat.mul(basis));
                    auto pos = std::lower_bound(
                        small.begin(), small.end(), sub,
                        [](const Subspace& a, const Subspace& b) { return (a <=> b) < 0; });
                    if (pos == small.end() || !(*pos == sub)) {
                        throw VerificationFailure(
                            "subspace of a vertex missing from the vertex enumeration");
                    }
                    up[offset[j] + size_t(pos - small.begin())].push_back(wid);
                }
            }
        }
    }
    for (std::vector<uint32_t>& u : up) std::sort(u.begin(), u.end());

    // weighted chain count: each plain chain of length L yields kcls^L
    // simplices, counted before any are materialized
    Int total = 0;
    {
        std::vector<Int> wgt(nplain);
        const Int kint(static_cast<unsigned long>(kcls));
        for (size_t v = nplain; v-- > 0;) {
            Int s = 1;
            for (uint32_t w : up[v]) s += wgt[w];
            wgt[v] = kint * s;
            total += wgt[v];
        }
    }
    if (total > Int(static_cast<unsigned long>(cap))) {
        throw CapExceeded("predicted simplex count " + total.get_str() +
                          " exceeds the simplex cap " + std::to_string(cap));
    }

    // materialize chains depth-first; emission per plain chain expands the
    // orientation classes odometer-style for pm kinds
    std::vector<std::vector<uint32_t>> higher(top >= 2 ? top - 1 : 0);
    std::vector<uint32_t> path;
    path.reserve(top);
    std::vector<uint32_t> cls(top), tup(top);
    auto emit = [&]() {
        const size_t len = path.size();
        if (len < 2) return;
        std::vector<uint32_t>& dst = higher[len - 2];
        if (!pm) {
            dst.insert(dst.end(), path.begin(), path.end());
            return;
        }
        std::fill(cls.begin(), cls.begin() + len, 0);
        bool more = true;
        while (more) {
            for (size_t i = 0; i < len; ++i) tup[i] = uint32_t(path[i] * kcls + cls[i]);
            dst.insert(dst.end(), tup.begin(), tup.begin() + len);
            more = false;
            for (size_t t = len; t-- > 0;) {
                if (++cls[t] < kcls) {
                    more = true;
                    break;
                }
                cls[t] = 0;
            }
        }
    };
    struct Frame {
        uint32_t v;
        size_t next;
    };
    std::vector<Frame> stack;
    for (uint32_t s = 0; s < nplain; ++s) {
        stack.clear();
        stack.push_back({s, 0});
        path.assign(1, s);
        emit();
        while (!stack.empty()) {
            Frame& fr = stack.back();
            if (fr.next < up[fr.v].size()) {
                const uint32_t w = up[fr.v][fr.next++];
                stack.push_back({w, 0});
                path.push_back(w);
                emit();
            } else {
                stack.pop_back();
                path.pop_back();
            }
        }
    }

    Building b{kind, p, n, {}, SimplicialComplex(nplain * kcls, std::move(higher))};
    b.complex.validate();
    b.vertices.reserve(nplain * kcls);
    uint32_t id = 0;
    for (size_t m = 1; m <= top; ++m) {
        for (const Subspace& s : groups[m]) {
            if (pm) {
                for (uint32_t c = 1; c <= kcls; ++c) {
                    b.vertices.push_back(BuildingVertex{id++, uint32_t(m), s, c});
                }
            } else {
                b.vertices.push_back(BuildingVertex{id++, uint32_t(m), s, 0});
            }
        }
    }
    return b;
}

namespace {

// does the sorted tuple t (width w) contain every element of sorted s?
bool tuple_superset(const uint32_t* t, size_t w, const std::vector<uint32_t>& s) {
    size_t i = 0;
    for (uint32_t want : s) {
        while (i < w && t[i] < want) ++i;
        if (i == w || t[i] != want) return false;
        ++i;
    }
    return true;
}

} // namespace

std::pair<SimplicialComplex, std::vector<uint32_t>> link_of(const SimplicialComplex& c,
                                                            const std::vector<uint32_t>& simplex) {
    std::vector<uint32_t> s(simplex);
    std::sort(s.begin(), s.end());
    if (s.empty() || std::adjacent_find(s.begin(), s.end()) != s.end() ||
        !c.contains_simplex(s)) {
        throw NotASimplex("link requires a simplex of the complex");
    }
    const size_t k = s.size();
    std::vector<uint32_t> verts;
    if (k < c.dim_count()) {
        const std::vector<uint32_t>& flat = c.flat(k);
        const size_t w = k + 1;
        for (size_t i = 0; i * w < flat.size(); ++i) {
            const uint32_t* t = flat.data() + i * w;
            if (!tuple_superset(t, w, s)) continue;
            size_t si = 0;
            for (size_t j = 0; j < w; ++j) {
                if (si < k && t[j] == s[si]) {
                    ++si;
                } else {
                    verts.push_back(t[j]);
                }
            }
        }
    }
    std::sort(verts.begin(), verts.end());
    std::vector<std::vector<uint32_t>> higher;
    if (c.dim_count() > k + 1) higher.resize(c.dim_count() - k - 2 + 1);
    for (size_t bigd = k + 1; bigd < c.dim_count(); ++bigd) {
        const std::vector<uint32_t>& flat = c.flat(bigd);
        const size_t w = bigd + 1;
        std::vector<uint32_t>& dst = higher[bigd - k - 1];
        for (size_t i = 0; i * w < flat.size(); ++i) {
            const uint32_t* t = flat.data() + i * w;
            if (!tuple_superset(t, w, s)) continue;
            size_t si = 0;
            for (size_t j = 0; j < w; ++j) {
                if (si < k && t[j] == s[si]) {
                    ++si;
                    continue;
                }
                const size_t at =
                    size_t(std::lower_bound(verts.begin(), verts.end(), t[j]) - verts.begin());
                dst.push_back(uint32_t(at));
            }
        }
    }
    return {SimplicialComplex(verts.size(), std::move(higher)), std::move(verts)};
}

SimplicialComplex join_complex(const SimplicialComplex& a, const SimplicialComplex& b) {
    const size_t shift = a.vertex_count();
    const size_t da = a.dim_count(), db = b.dim_count();
    const size_t dims = da + db >= 1 ? da + db : 0;
    std::vector<std::vector<uint32_t>> higher(dims >= 2 ? dims - 1 : 0);
    auto copy_side = [&](const SimplicialComplex& src, uint32_t off) {
        for (size_t d = 1; d < src.dim_count(); ++d) {
            const std::vector<uint32_t>& flat = src.flat(d);
            std::vector<uint32_t>& dst = higher[d - 1];
            dst.reserve(dst.size() + flat.size());
            for (uint32_t v : flat) dst.push_back(v + off);
        }
    };
    copy_side(a, 0);
    copy_side(b, uint32_t(shift));
    for (size_t ia = 0; ia < da; ++ia) {
        const std::vector<uint32_t>& fa = a.flat(ia);
        const size_t wa = ia + 1;
        for (size_t ib = 0; ib < db; ++ib) {
            const std::vector<uint32_t>& fb = b.flat(ib);
            const size_t wb = ib + 1;
            std::vector<uint32_t>& dst = higher[ia + ib];
            for (size_t i = 0; i * wa < fa.size(); ++i) {
                for (size_t j = 0; j * wb < fb.size(); ++j) {
                    const uint32_t* ta = fa.data() + i * wa;
                    const uint32_t* tb = fb.data() + j * wb;
                    for (size_t t = 0; t < wa; ++t) dst.push_back(ta[t]);
                    for (size_t t = 0; t < wb; ++t) dst.push_back(tb[t] + uint32_t(shift));
                }
            }
        }
    }
    return SimplicialComplex(a.vertex_count() + b.vertex_count(), std::move(higher));
}

} // namespace stein
