#pragma once

#include "chox/subdivision_data.hpp"

namespace chox {

struct SimplexMetrics {
    Rat diam_sq;
    Length rad;  // exact square at level 0, enclosure above
};

struct MetricReport {
    int level = 0;
    Rat mesh_sq;
    Length comesh;                 // +inf sentinel encoded by `infinite`
    bool comesh_infinite = false;  // no positive-dimensional simplex
    std::map<Simplex, SimplexMetrics, SimplexOrder> per_simplex;
};

MetricReport metric_report(const SimplicialComplex& x, int level);

struct MeshDecay {
    bool holds = false;
    bool at_equality = false;
    Rat lhs_sq, rhs_sq;
};

// mesh(Sd^i X)^2 < (n/(n+1))^{2i} mesh(X)^2, exact
MeshDecay verify_mesh_decay(const SimplicialComplex& x, int level);

struct SqueezeParams {
    Rat alpha;
    Rat epsilon_sq;
    long iterations = 0;
};

SqueezeParams squeeze_params(const SimplicialComplex& x, const Rat& alpha);

// Shortest-path metric on barycentres of the subdivision, measured in the
// unsubdivided base. Conservative upper bound for the path-space metric.
class BaseMetric {
  public:
    explicit BaseMetric(const SimplicialComplex& x);            // level 0
    BaseMetric(const SimplicialComplex& x, const SubdivisionData& data);  // finest level

    Length distance(const Simplex& a, const Simplex& b) const;
    int node_count() const { return static_cast<int>(names_.size()); }

  private:
    void build_edges();
    long node(const Simplex& s) const;
    const std::vector<Length>& dijkstra(long src) const;

    SimplicialComplex base_;
    std::vector<Simplex> names_;                       // node id -> simplex
    std::map<Simplex, long, SimplexOrder> ids_;
    std::vector<Simplex> carrier_;                     // node -> base simplex
    std::vector<std::vector<Rat>> coords_;             // node -> coords over carrier
    std::vector<std::vector<std::pair<long, Rat>>> adj_;  // edge, squared length
    mutable std::map<long, std::vector<Length>> cache_;
};

// Largest distance between barycentres of simplices joined by a nonzero block.
// Declared here; the graded-map argument lives in graded.hpp.
class GradedChainMap;
Length morphism_bound(const GradedChainMap& f, const BaseMetric& metric);

// Operational epsilon-neighbourhood: a simplex joins when one of its vertices
// sits within eps of a vertex of the target; closed under faces.
std::vector<Simplex> epsilon_neighbourhood(const SubdividedComplex& s,
                                           const std::vector<Simplex>& target,
                                           const Rat& eps_sq, const BaseMetric& metric);

}  // namespace chox
