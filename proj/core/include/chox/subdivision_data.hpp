#pragma once

#include <optional>

#include "chox/simplicial.hpp"

namespace chox {

enum class RPolicy { MinVertex, BoundaryRetracting };

// One homotopy cell of the decomposition induced by r: the part of the
// subdivision swept over the open face by the chain of simplices.
struct HomotopyCell {
    Simplex face;                // tau in the base of this level
    std::vector<Simplex> chain;  // sigma_0 < ... < sigma_m with face <= sigma_0
    std::vector<Simplex> tops;   // sd simplices of dimension |face| + m inside the cell
};

// a simplicial chain of the subdivision, sparsely
using SdChain = std::map<Simplex, Int, SimplexOrder>;

// Everything derived from one choice of simplicial approximation r at one
// barycentric subdivision level.
struct SubdivisionLevel {
    SubdividedComplex sd;
    std::vector<int> r;                         // sd vertex id -> vertex of this level's base
    std::map<Simplex, Simplex> region;          // sd simplex -> base simplex (the I-partition label)
    std::map<Simplex, int> orientation;         // sd simplex -> +-1 (r-permutation sign off level 0)
    std::map<Simplex, Simplex> distinguished;   // base simplex -> its distinguished flag in sd
    std::vector<std::pair<int, int>> forest;    // edges (sd vertex, sd vertex)
    std::vector<HomotopyCell> cells;
    std::map<Simplex, std::vector<size_t>> cells_of_top;  // sd simplex -> cells listing it as a top

    // signs of the cross-region block placements of the subdivision functor,
    // keyed by (face, cofacet-with-the-same-offset); solved from the matching
    // conditions with the in-region boundary and anchored at level zero
    std::map<std::pair<Simplex, Simplex>, int> pair_sign;
    bool signs_consistent = false;

    // the canonical chain homotopy built on the forest: d P + P d = 1 - s r
    std::map<Simplex, SdChain> homotopy_p;
    bool homotopy_ok = false;

    // coordinates of each sd vertex inside its carrier in the original complex
    std::vector<Simplex> carrier0;                   // sd vertex -> simplex of the original base
    std::vector<std::vector<Rat>> coords0;           // sd vertex -> barycentric coords over carrier0

    const Simplex& region_of(const Simplex& sd_simplex) const;
    int sign_of(const Simplex& sd_simplex) const { return orientation.at(sd_simplex); }
    int block_sign(const Simplex& tau, const Simplex& sigma) const;
    int level_in_region(const Simplex& sd_simplex) const {
        return static_cast<int>(sd_simplex.size()) - 1 -
               (static_cast<int>(region_of(sd_simplex).size()) - 1);
    }

    // the subdivision chain map, its chain inverse and canonical homotopy on
    // simplicial chains, in the canonical sorted basis
    SdChain s_chain(const Simplex& base_simplex) const;
    SdChain r_chain(const Simplex& sd_simplex) const;
    const SdChain& p_chain(const Simplex& sd_simplex) const;
};

struct SubdivisionData {
    SimplicialComplex base;
    RPolicy policy = RPolicy::MinVertex;
    std::vector<SubdivisionLevel> levels;

    int level_count() const { return static_cast<int>(levels.size()); }
    const SubdivisionLevel& top() const { return levels.back(); }

    // composite r down to the original base, per top-level sd vertex
    std::vector<int> composite_r() const;
    // union forest in the top-level subdivision
    std::vector<std::pair<int, int>> composite_forest() const;
};

SubdivisionData choose_r(const SimplicialComplex& x, int levels, RPolicy policy);

// Region partition sanity: every open simplex of the subdivision lands in
// exactly one region and regions refine dimensions correctly.
bool regions_partition(const SubdivisionLevel& lv);

// Canonical forest sanity: acyclic, spans every sd vertex, and each tree
// stays inside one fibre of r.
bool forest_spans(const SubdivisionLevel& lv);

}  // namespace chox
