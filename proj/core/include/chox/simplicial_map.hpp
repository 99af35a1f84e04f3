#pragma once

#include "chox/contraction.hpp"

namespace chox {

struct SimplicialMap {
    SimplicialComplex source;
    SimplicialComplex target;
    std::map<int, int> vertex_map;

    Simplex image(const Simplex& s) const;  // span of the vertex images
};

bool validate(const SimplicialMap& f);

// A vertex of the fibre complex over sigma is a section of f on the vertices
// of sigma; simplices are chains of sections under the coordinatewise order,
// confined to one source simplex. This is the staircase triangulation of the
// glued product cells.
struct FiberDecomposition {
    Simplex over;
    bool empty = false;
    SimplicialComplex k;
    std::vector<std::vector<int>> sections;              // K vertex id -> images
    std::map<Simplex, std::vector<long>, SimplexOrder> witnesses;  // top source -> factor ranks
};

FiberDecomposition fiber(const SimplicialMap& f, const Simplex& sigma);

struct FiberStatus {
    enum class State { Acyclic, NotAcyclic, Empty } state = State::Empty;
    std::vector<long> reduced_betti;
    std::vector<Int> torsion;
};

std::map<Simplex, FiberStatus, SimplexOrder> fiber_acyclicity_report(const SimplicialMap& f);

// Euler characteristic of the glued fibre against the open product cells.
bool fiber_euler_consistent(const SimplicialMap& f, const Simplex& sigma);

struct InducedChainMap {
    std::shared_ptr<GradedChainComplex> source;  // chains of preimages, graded over the target
    std::shared_ptr<GradedChainComplex> target;  // simplicial chains of the target
    GradedChainMap map;
    bool verified = false;
};

InducedChainMap induced_chain_map(const SimplicialMap& f);

struct VietorisVerdict {
    bool contractible_fibres = false;
    std::optional<ContractionCertificate> certificate;
    std::optional<ContractibilityWitness> witness;
    std::vector<std::shared_ptr<const GradedChainComplex>> keep;
};

VietorisVerdict vietoris_verdict(const SimplicialMap& f);

}  // namespace chox
