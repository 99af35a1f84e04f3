#pragma once

#include "chox/sd_functor.hpp"

namespace chox {

struct FundamentalClass {
    int dimension = 0;
    std::map<Simplex, int, SimplexOrder> coefficients;  // top simplex -> +-1
};

struct FundamentalClassFailure {
    enum class Reason { NotPure, NonPseudomanifold, NonOrientable } reason;
    Simplex offending;
    std::string describe() const;
};

using FundamentalClassResult = std::variant<FundamentalClass, FundamentalClassFailure>;

FundamentalClassResult fundamental_class(const SimplicialComplex& x);

// Front-face/back-face cap product on canonical oriented simplices.
// Chains and cochains are coefficient maps on simplices of one dimension.
using Chain = std::map<Simplex, Int, SimplexOrder>;
using Cochain = std::map<Simplex, Int, SimplexOrder>;

Chain cap_product(const Cochain& xi, int p, const Chain& c, int n,
                  const SimplicialComplex& x);

Chain boundary_chain(const Chain& c, int n, const SimplicialComplex& x);
Cochain coboundary_cochain(const Cochain& xi, int p, const SimplicialComplex& x);

struct DualityReport {
    bool fundamental_class_exists = false;
    std::optional<FundamentalClass> fclass;
    std::optional<FundamentalClassFailure> fclass_failure;
    bool is_pd_space = false;
    TotalHomologyReport cone_report;  // witness when not a PD space
    std::vector<std::shared_ptr<const GradedChainComplex>> keep;
    std::optional<GradedChainMap> duality_map;
    std::optional<GradedHomotopy> cone_contraction;  // verified when present
};

// The duality map as a full-variant graded map from the reindexed cochain
// complex to the chain complex.
struct DualityMapParts {
    std::shared_ptr<GradedChainComplex> source;  // Delta^{n-*}, star pieces reindexed
    std::shared_ptr<GradedChainComplex> target;  // Delta_*
    GradedChainMap cap;
};

DualityMapParts duality_map(const SimplicialComplex& x, const FundamentalClass& fc);

DualityReport pd_check(const SimplicialComplex& x);

// Control of the duality package after i subdivisions, measured in the base.
struct ControlledBound {
    int level = 0;
    Length bound;
};

ControlledBound controlled_pd_bound(const SimplicialComplex& x, int level);

struct LinkDiagnostic {
    Simplex simplex;
    bool sphere_like = false;
    std::vector<long> reduced_betti;  // reduced Betti numbers of the link
    std::vector<Int> torsion;
};

struct HomologyManifoldReport {
    bool is_homology_manifold = false;
    bool pure = false;
    std::vector<LinkDiagnostic> diagnostics;  // failures listed first
};

HomologyManifoldReport is_homology_manifold(const SimplicialComplex& x);

}  // namespace chox
