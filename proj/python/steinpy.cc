// Python bindings for the main operations: closed-form counts, building
// construction, reduced homology, and the integer symplectic witnesses.
// Arbitrary-precision values cross the boundary as native Python ints.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "stein/buildings.hpp"
#include "stein/errors.hpp"
#include "stein/formulas.hpp"
#include "stein/homology.hpp"
#include "stein/json_io.hpp"
#include "stein/lift.hpp"
#include "stein/pfaffian.hpp"
#include "stein/symplectic_int.hpp"

namespace py = pybind11;
using namespace stein;

namespace {

py::object pyint(const Int& v) {
    return py::reinterpret_steal<py::object>(
        PyLong_FromString(v.get_str().c_str(), nullptr, 10));
}

Int to_int(py::handle h) {
    if (!py::isinstance<py::int_>(h))
        throw RangeError("matrix entries must be integers");
    const std::string s = py::str(h);
    Int r;
    if (mpz_set_str(r.get_mpz_t(), s.c_str(), 10) != 0)
        throw RangeError("not an integer: " + s);
    return r;
}

IntMatrix to_matrix(py::sequence rows) {
    const size_t r = py::len(rows);
    size_t c = 0;
    std::vector<Int> entries;
    for (size_t i = 0; i < r; ++i) {
        py::sequence row = rows[i].cast<py::sequence>();
        if (i == 0)
            c = py::len(row);
        else if (py::len(row) != c)
            throw RangeError("matrix rows have unequal lengths");
        for (size_t j = 0; j < c; ++j) entries.push_back(to_int(row[j]));
    }
    return IntMatrix(r, c, std::move(entries));
}

py::list from_matrix(const IntMatrix& m) {
    py::list rows;
    for (size_t i = 0; i < m.rows(); ++i) {
        py::list row;
        for (size_t j = 0; j < m.cols(); ++j) row.append(pyint(m.at(i, j)));
        rows.append(row);
    }
    return rows;
}

py::object json_to_py(const Json& j) {
    return py::module_::import("json").attr("loads")(py::str(j.dump()));
}

RankMethod parse_method(const std::string& name) {
    if (name == "modq") return RankMethod::modq;
    if (name == "exact") return RankMethod::exact;
    throw RangeError("unknown method: " + name);
}

} // namespace

PYBIND11_MODULE(steinpy, m) {
    m.doc() = "exact Steinberg ranks, Tits buildings, and integer symplectic witnesses";

    // base first so the derived translator, registered later, runs first
    auto& err = py::register_exception<Error>(m, "SteinError");
    py::register_exception<VerificationFailure>(m, "VerificationFailure", err.ptr());

    m.def("gaussian_binomial",
          [](size_t n, size_t mm, uint32_t p) { return pyint(gaussian_binomial(n, mm, p)); },
          py::arg("n"), py::arg("m"), py::arg("p"),
          "number of m-dimensional subspaces of F_p^n");
    m.def("iso_grassmannian",
          [](size_t n, size_t mm, uint32_t p) { return pyint(iso_grassmannian(n, mm, p)); },
          py::arg("n"), py::arg("m"), py::arg("p"),
          "number of m-dimensional isotropic subspaces of the symplectic F_p^{2n}");
    m.def("steinberg_rank", [](size_t n, uint32_t p) { return pyint(steinberg_rank(n, p)); },
          py::arg("n"), py::arg("p"));
    m.def("symplectic_steinberg_rank",
          [](size_t n, uint32_t p) { return pyint(symplectic_steinberg_rank(n, p)); },
          py::arg("n"), py::arg("p"));
    m.def("t_omega", [](size_t n, uint32_t p) { return pyint(t_omega_closed(n, p)); },
          py::arg("n"), py::arg("p"));
    m.def("t_omega_oracle", [](size_t n, uint32_t p) { return pyint(t_omega_flag_oracle(n, p)); },
          py::arg("n"), py::arg("p"));
    m.def("t_linear", [](size_t n, uint32_t p) { return pyint(t_linear_closed(n, p)); },
          py::arg("n"), py::arg("p"));
    m.def("t_linear_oracle",
          [](size_t n, uint32_t p) { return pyint(t_linear_flag_oracle(n, p)); }, py::arg("n"),
          py::arg("p"));
    m.def("lower_bound_symplectic",
          [](size_t n, uint32_t p) { return pyint(lower_bound_symplectic(n, p)); }, py::arg("n"),
          py::arg("p"));
    m.def("lower_bound_linear",
          [](size_t n, uint32_t p) { return pyint(lower_bound_linear(n, p)); }, py::arg("n"),
          py::arg("p"));

    m.def("f_vector",
          [](const std::string& kind, size_t n, uint32_t p) {
              return build_building(parse_building_kind(kind), n, p).complex.f_vector();
          },
          py::arg("kind"), py::arg("n"), py::arg("p"), "simplex counts per dimension");
    m.def("building",
          [](const std::string& kind, size_t n, uint32_t p) {
              return json_to_py(building_to_json(build_building(parse_building_kind(kind), n, p)));
          },
          py::arg("kind"), py::arg("n"), py::arg("p"),
          "the full complex as a dict: kind, p, n, vertices, simplices");
    m.def("betti",
          [](const std::string& kind, size_t n, uint32_t p, const std::string& method,
             const std::vector<uint32_t>& primes) {
              const Building b = build_building(parse_building_kind(kind), n, p);
              return json_to_py(betti_to_json(reduced_betti(b.complex, parse_method(method),
                                                            primes)));
          },
          py::arg("kind"), py::arg("n"), py::arg("p"), py::arg("method") = "modq",
          py::arg("primes") = std::vector<uint32_t>{},
          "reduced Betti data: betti, method, primes, euler, spherical_degree");

    m.def("pfaffian", [](py::sequence a) { return pyint(pfaffian(to_matrix(a))); }, py::arg("a"),
          "pfaffian of a skew-symmetric integer matrix");
    m.def("determinant", [](py::sequence a) { return pyint(determinant_int(to_matrix(a))); },
          py::arg("a"));
    m.def("restricted_normal_form",
          [](py::sequence b) { return from_matrix(restricted_summand_normal_form(to_matrix(b))); },
          py::arg("b"), "normal-form basis of a corank-1 direct summand of Z^{2n}");
    m.def("lift_symplectic",
          [](py::sequence gbar, uint32_t p) {
              const IntMatrix raw = to_matrix(gbar);
              return from_matrix(lift_sp_mod_p(raw.reduce_mod(PrimeField(p))));
          },
          py::arg("gbar"), py::arg("p"),
          "integer symplectic lift of a symplectic matrix over F_p");
    m.def("congruence_witness",
          [](py::sequence v, py::sequence v2, uint32_t p) {
              return from_matrix(congruence_witness(to_matrix(v), to_matrix(v2), p));
          },
          py::arg("v"), py::arg("v2"), py::arg("p"),
          "level-p congruence element carrying span(v) to span(v2)");
}
