#include "stein/json_io.hpp"

#include <cstdint>

#include "stein/errors.hpp"

namespace stein {

namespace {
const Int json_number_limit = Int(1) << 53;
}

Json int_to_json(const Int& v) {
    if (v <= json_number_limit && v >= -json_number_limit) {
        // fits in a double-exact window, and comfortably in int64
        return Json(static_cast<int64_t>(mpz_get_si(v.get_mpz_t())));
    }
    return Json(v.get_str());
}

Int int_from_json(const Json& j) {
    if (j.is_number_unsigned()) return Int(static_cast<unsigned long>(j.get<uint64_t>()));
    if (j.is_number_integer()) return Int(static_cast<long>(j.get<int64_t>()));
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        Int r;
        if (s.empty() || mpz_set_str(r.get_mpz_t(), s.c_str(), 10) != 0)
            throw RangeError("not a decimal integer string: \"" + s + "\"");
        return r;
    }
    throw RangeError("expected an integer or a decimal string, got " + std::string(j.type_name()));
}

Json matrix_to_json(const IntMatrix& m) {
    Json rows = Json::array();
    for (size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (size_t j = 0; j < m.cols(); ++j) row.push_back(int_to_json(m.at(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

IntMatrix matrix_from_json(const Json& j) {
    if (!j.is_array()) throw RangeError("matrix JSON must be an array of rows");
    const size_t rows = j.size();
    size_t cols = 0;
    std::vector<Int> entries;
    for (size_t i = 0; i < rows; ++i) {
        const Json& row = j[i];
        if (!row.is_array()) throw RangeError("matrix row " + std::to_string(i) + " is not an array");
        if (i == 0)
            cols = row.size();
        else if (row.size() != cols)
            throw RangeError("matrix rows have unequal lengths (" + std::to_string(cols) +
                             " vs " + std::to_string(row.size()) + ")");
        for (const Json& cell : row) entries.push_back(int_from_json(cell));
    }
    return IntMatrix(rows, cols, std::move(entries));
}

Json subspace_to_json(const Subspace& s) {
    Json basis = Json::array();
    for (size_t i = 0; i < s.dim(); ++i) {
        Json row = Json::array();
        for (size_t j = 0; j < s.ambient(); ++j) row.push_back(s.basis().at(i, j));
        basis.push_back(std::move(row));
    }
    return Json{{"p", s.field().p()}, {"ambient", s.ambient()}, {"basis", std::move(basis)}};
}

Json oriented_subspace_to_json(const OrientedSubspace& s) {
    Json j = subspace_to_json(s.subspace);
    j["cls"] = s.cls;
    return j;
}

Json building_to_json(const Building& b) {
    Json verts = Json::array();
    for (const BuildingVertex& v : b.vertices) {
        Json basis = Json::array();
        for (size_t i = 0; i < v.space.dim(); ++i) {
            Json row = Json::array();
            for (size_t j = 0; j < v.space.ambient(); ++j) row.push_back(v.space.basis().at(i, j));
            basis.push_back(std::move(row));
        }
        Json jv{{"id", v.id}, {"dim", v.dim}, {"basis", std::move(basis)}};
        if (kind_is_pm(b.kind))
            jv["cls"] = v.cls;
        else
            jv["cls"] = nullptr;
        verts.push_back(std::move(jv));
    }
    Json simp = Json::object();
    for (size_t d = 0; d < b.complex.dim_count(); ++d) {
        Json list = Json::array();
        for (size_t i = 0; i < b.complex.count(d); ++i) {
            const uint32_t* t = b.complex.simplex(d, i);
            list.push_back(Json(std::vector<uint32_t>(t, t + d + 1)));
        }
        simp[std::to_string(d)] = std::move(list);
    }
    return Json{{"kind", building_kind_name(b.kind)},
                {"p", b.p},
                {"n", b.n},
                {"vertices", std::move(verts)},
                {"simplices", std::move(simp)}};
}

Json betti_to_json(const BettiVector& bv) {
    Json betti = Json::array();
    for (const Int& b : bv.betti) betti.push_back(int_to_json(b));
    Json j{{"betti", std::move(betti)},
           {"method", bv.method == RankMethod::modq ? "modq" : "exact"},
           {"primes", bv.primes},
           {"euler", int_to_json(bv.euler)}};
    if (bv.spherical_degree.has_value())
        j["spherical_degree"] = *bv.spherical_degree;
    else
        j["spherical_degree"] = nullptr;
    return j;
}

Json parse_json_text(const std::string& text, const std::string& what) {
    Json j = Json::parse(text, nullptr, false);
    if (j.is_discarded()) throw RangeError("malformed JSON in " + what);
    return j;
}

} // namespace stein
