#pragma once
#include <string>
#include <vector>

#include "stein/ff.hpp"

namespace stein {

enum class BuildingKind {
    linear,
    linear_pm,
    symplectic,
    symplectic_pm,
    symplectic_restricted,
    symplectic_restricted_pm,
};

// names use dashes: "linear", "linear-pm", "symplectic", "symplectic-pm",
// "symplectic-restricted", "symplectic-restricted-pm"
BuildingKind parse_building_kind(const std::string& name);
std::string building_kind_name(BuildingKind kind);
bool kind_is_linear(BuildingKind kind);
bool kind_is_restricted(BuildingKind kind);
bool kind_is_pm(BuildingKind kind);

// Flag complex stored dimension by dimension; a d-simplex is a strictly
// increasing tuple of d+1 vertex ids, stored flattened. Dimension 0 is the
// vertex list itself. Within each dimension simplices are sorted
// lexicographically.
class SimplicialComplex {
  public:
    // higher[d] holds the flattened (d+1)-tuples of dimension-(d+1) simplices;
    // singleton simplices are implied by vertex_count
    SimplicialComplex(size_t vertex_count, std::vector<std::vector<uint32_t>> higher);

    size_t vertex_count() const { return vertex_count_; }
    // number of dimensions carrying simplices; 0 for the empty complex
    size_t dim_count() const { return vertex_count_ == 0 ? 0 : by_dim_.size(); }
    size_t count(size_t d) const;
    const std::vector<uint32_t>& flat(size_t d) const { return by_dim_.at(d); }
    const uint32_t* simplex(size_t d, size_t i) const { return by_dim_[d].data() + i * (d + 1); }

    std::vector<size_t> f_vector() const;
    bool contains_simplex(const std::vector<uint32_t>& s) const;
    // position of the sorted tuple t (d+1 ids) within dimension d, or npos
    static constexpr size_t npos = size_t(-1);
    size_t simplex_index(size_t d, const uint32_t* t) const;
    // every facet of every simplex must be present; throws NotFaceClosed
    void validate() const;

  private:
    size_t vertex_count_;
    std::vector<std::vector<uint32_t>> by_dim_; // by_dim_[d]: f_d tuples of size d+1
};

struct BuildingVertex {
    uint32_t id;
    uint32_t dim; // dimension of the subspace, not of the vertex simplex
    Subspace space;
    uint32_t cls; // orientation class in [1, (p-1)/2]; 0 in plain buildings
};

struct Building {
    BuildingKind kind;
    uint32_t p;
    size_t n;
    std::vector<BuildingVertex> vertices;
    SimplicialComplex complex;
};

// All dimension-m subspaces of F_p^ambient, one canonical RREF basis each,
// sorted lexicographically by basis matrix. m = 0 gives the zero subspace.
std::vector<Subspace> enumerate_subspaces(uint32_t p, size_t ambient, size_t m);

// All dimension-m isotropic subspaces of the symplectic F_p^{2n}, same order.
std::vector<Subspace> enumerate_isotropic_subspaces(uint32_t p, size_t n, size_t m);

// Order complex of proper nonzero subspaces (linear kinds, ambient F_p^n) or
// of nonzero isotropic subspaces (symplectic kinds, ambient F_p^{2n});
// restricted kinds keep only subspaces of the span of all coordinates but the
// last. The pm kinds replicate each vertex once per orientation class, with
// comparability ignoring classes. Vertices are ordered by (dim, basis); the
// vertex id of class c on plain vertex i is i * (p-1)/2 + c - 1.
// Throws SpecViolation for invalid parameter combinations (linear needs
// n >= 2, symplectic n >= 1, pm kinds p >= 3) and CapExceeded when the
// predicted simplex count would pass the cap (STEIN_SIMPLEX_CAP, default
// 10^8).
Building build_building(BuildingKind kind, size_t n, uint32_t p);

// total simplex count limit, from STEIN_SIMPLEX_CAP
uint64_t simplex_cap();

// Link of a simplex: full subcomplex on the vertices joinable to it, with
// vertex ids renumbered consecutively in their original order. The second
// return value maps new ids back to the input complex. Throws NotASimplex
// when the tuple is not a simplex of the complex.
std::pair<SimplicialComplex, std::vector<uint32_t>> link_of(const SimplicialComplex& c,
                                                            const std::vector<uint32_t>& simplex);

// Join: every union of a simplex from each side, plus both sides themselves;
// ids of b are shifted by a.vertex_count().
SimplicialComplex join_complex(const SimplicialComplex& a, const SimplicialComplex& b);

} // namespace stein
