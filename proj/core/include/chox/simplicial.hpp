#pragma once

#include <map>
#include <vector>

#include "chox/errors.hpp"
#include "chox/matrix.hpp"

namespace chox {

// A simplex is a strictly increasing tuple of vertex ids.
using Simplex = std::vector<int>;

std::string simplex_string(const Simplex& s);

// Canonical order on simplices: dimension first, then lexicographic.
struct SimplexOrder {
    bool operator()(const Simplex& a, const Simplex& b) const {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    }
};

bool is_face(const Simplex& a, const Simplex& b);          // a <= b
std::vector<Simplex> facets_of(const Simplex& s);          // codim-1 faces
std::vector<Simplex> faces_of(const Simplex& s);           // all nonempty faces
int incidence(const Simplex& face, const Simplex& s);      // (-1)^i, 0 if not a facet

class SimplicialComplex {
  public:
    SimplicialComplex() = default;

    // Closure of the given tuples; vertex set defaults to their union.
    static SimplicialComplex build(const std::vector<Simplex>& maximal_simplices,
                                   const std::vector<int>& declared_vertices = {});

    int dim() const { return static_cast<int>(by_dim_.size()) - 1; }
    const std::vector<int>& vertices() const { return vertices_; }
    const std::vector<Simplex>& simplices(int d) const;
    std::vector<Simplex> all_simplices() const;
    size_t simplex_count() const;

    bool contains(const Simplex& s) const;
    long index_of(const Simplex& s) const;  // position among simplices of its dimension

    // Signed incidence of n-simplices against (n-1)-simplices, canonical bases.
    IntMat boundary_matrix(int n) const;

    std::vector<Simplex> cofacets(const Simplex& s) const;
    SimplicialComplex link(const Simplex& s) const;
    std::vector<Simplex> maximal_simplices() const;

    bool closed_under_faces() const;
    bool operator==(const SimplicialComplex& o) const {
        return vertices_ == o.vertices_ && by_dim_ == o.by_dim_;
    }

  private:
    std::vector<int> vertices_;
    std::vector<std::vector<Simplex>> by_dim_;
};

// Barycentric subdivision. Vertices of the subdivision are indexed in the
// canonical order of the base simplices they are barycentres of, so flags
// come out strictly sorted.
struct SubdividedComplex {
    SimplicialComplex complex;
    SimplicialComplex base;
    int level = 1;
    std::vector<Simplex> vertex_base;       // sd vertex id -> base simplex
    std::map<Simplex, int> barycentre_id;   // base simplex -> sd vertex id

    // Smallest base simplex whose closure contains the given sd simplex:
    // the top of the flag.
    const Simplex& carrier(const Simplex& sd_simplex) const;

    // The flag of base simplices named by an sd simplex.
    std::vector<Simplex> flag(const Simplex& sd_simplex) const;
};

SubdividedComplex barycentric_subdivide(const SimplicialComplex& x);
SubdividedComplex barycentric_subdivide(const SubdividedComplex& s);

struct DualCell {
    Simplex center;
    std::vector<Simplex> closed;    // flags with center <= sigma_0 < ... < sigma_k
    std::vector<Simplex> boundary;  // center strictly below sigma_0
    std::vector<Simplex> open;      // center = sigma_0
};

DualCell dual_cell(const Simplex& s, const SimplicialComplex& x,
                   const SubdividedComplex& sd);

}  // namespace chox
