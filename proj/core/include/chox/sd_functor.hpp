#pragma once

#include "chox/contraction.hpp"

namespace chox {

// Algebraic subdivision of one barycentric level. Complexes come in and out
// in the canonical sorted basis; the level's solved placement signs carry
// the comparison with the subdivision's own oriented basis.
GradedChainComplex sd_complex(const GradedChainComplex& c, const SubdivisionLevel& lv);
GradedChainMap sd_map(const GradedChainMap& f, const SubdivisionLevel& lv,
                      const GradedChainComplex& sd_src, const GradedChainComplex& sd_tgt);

// Assembly over the regions of r, preserving the variant.
GradedChainComplex assemble_regions(const GradedChainComplex& c, const SubdivisionLevel& lv);
GradedChainMap assemble_regions(const GradedChainMap& f, const SubdivisionLevel& lv,
                                const GradedChainComplex& asrc, const GradedChainComplex& atgt);

// The subdivision chain equivalence of one level, after assembling regions:
//   retraction . section = 1    and    d H + H d = 1 - section . retraction
struct LevelPackage {
    std::shared_ptr<GradedChainComplex> subdivided;  // over Sd(base)
    std::shared_ptr<GradedChainComplex> assembled;   // over base
    GradedChainMap section;                          // C -> assembled
    GradedChainMap retraction;                       // assembled -> C
    GradedHomotopy homotopy;                         // on assembled
    std::vector<std::shared_ptr<const GradedChainComplex>> keep;
};

GradedChainMap s_star(const GradedChainComplex& c, const SubdivisionLevel& lv,
                      const GradedChainComplex& sdc, const GradedChainComplex& assembled);
GradedChainMap r_star(const GradedChainComplex& c, const SubdivisionLevel& lv,
                      const GradedChainComplex& sdc, const GradedChainComplex& assembled);
GradedHomotopy p_star(const GradedChainComplex& c, const GradedChainMap& section,
                      const GradedChainMap& retraction);

LevelPackage level_package(const GradedChainComplex& c, const SubdivisionLevel& lv);

// Iterated subdivision: level packages composed along the tower.
struct TowerPackage {
    std::shared_ptr<GradedChainComplex> finest;  // over Sd^i(base), unassembled
    GradedChainMap section;                      // C -> assembled tower
    GradedChainMap retraction;
    GradedHomotopy homotopy;
    std::shared_ptr<GradedChainComplex> assembled;
    std::vector<std::shared_ptr<const GradedChainComplex>> keep;
};

TowerPackage tower_package(const GradedChainComplex& c, const SubdivisionData& data);

bool sd_commutes_with_cone(const GradedChainMap& f, const SubdivisionLevel& lv);

// Chain isomorphism Sd(simplicial chains of X) -> simplicial chains of Sd X.
struct SdIso {
    std::shared_ptr<GradedChainComplex> source;
    std::shared_ptr<GradedChainComplex> target;
    GradedChainMap forward;
    GradedChainMap backward;
    bool verified = false;
};

SdIso sd_simplicial_iso(const SimplicialComplex& x, const SubdivisionLevel& lv);

// A chain equivalence between subdivided complexes with explicit inverse and
// homotopies, graded over the finest subdivision without variant constraint.
struct FullEquivalence {
    GradedChainMap forward;   // Sd^i C -> Sd^i D
    GradedChainMap backward;  // Sd^i D -> Sd^i C
    GradedHomotopy on_source;
    GradedHomotopy on_target;
};

struct SqueezeOutcome {
    GradedChainMap map;  // C -> D, triangular
    EquivalenceData certificate;
    Length measured_bound;
    std::vector<std::shared_ptr<const GradedChainComplex>> keep;
};

SqueezeOutcome squeeze(const FullEquivalence& f, const GradedChainComplex& c,
                       const GradedChainComplex& d, const SubdivisionData& data);

}  // namespace chox
