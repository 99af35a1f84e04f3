#pragma once

#include <memory>
#include <variant>

#include "chox/graded.hpp"
#include "chox/metrics.hpp"

namespace chox {

// A finite free chain complex concentrated at one piece.
struct LocalComplex {
    std::map<int, long> ranks;
    std::map<int, IntMat> d;  // d[n]: degree n -> n-1

    long rank(int n) const;
    IntMat boundary(int n) const;
};

LocalComplex piece_complex(const GradedChainComplex& c, const Simplex& s);

struct LocalContraction {
    std::map<int, IntMat> gamma;  // degree n -> n+1
    IntMat block(const LocalComplex& c, int n) const;
};

struct LocalWitness {
    int degree = 0;
    HomologySummary summary;
    std::vector<Int> cycle;
};

using LocalResult = std::variant<LocalContraction, LocalWitness>;

// Exactness decision via Smith splittings; an exact bounded free complex
// over the integers splits, so a contraction always exists in that case.
LocalResult local_contract(const LocalComplex& c);

bool local_contraction_valid(const LocalComplex& c, const LocalContraction& g);

struct ContractionCertificate {
    GradedHomotopy homotopy;
    bool verified = false;
    std::shared_ptr<const GradedChainComplex> keepalive;
};

struct ContractibilityWitness {
    Simplex piece;
    LocalWitness local;
};

using ContractionResult = std::variant<ContractionCertificate, ContractibilityWitness>;

GradedHomotopy globalize_contraction(const GradedChainComplex& c,
                                     const std::map<Simplex, LocalContraction, SimplexOrder>& locals);

ContractionResult is_contractible(const GradedChainComplex& c);

// whether dP + Pd = 1 holds blockwise
bool contraction_valid(const GradedChainComplex& c, const GradedHomotopy& p);
// whether dP + Pd = target holds blockwise
bool homotopy_matches(const GradedHomotopy& p, const GradedChainMap& target);

struct EquivalenceData {
    GradedChainMap inverse;     // g: D -> C
    GradedHomotopy on_source;   // d G + G d = 1 - g f on C
    GradedHomotopy on_target;   // d G + G d = 1 - f g on D
};

struct EquivalenceCheck {
    bool equivalent = false;
    std::shared_ptr<const GradedChainComplex> cone;
    std::optional<ContractionCertificate> cone_certificate;
    std::optional<ContractibilityWitness> witness;
    std::optional<EquivalenceData> data;
};

EquivalenceCheck is_chain_equivalence(const GradedChainMap& f);

// extraction of inverse and homotopies from a cone contraction
EquivalenceData split_cone_contraction(const GradedChainMap& f, const GradedChainComplex& cone,
                                       const GradedHomotopy& q);

// Full-variant decisions by global homology of the total complex.
struct TotalHomologyReport {
    bool acyclic = true;
    int degree = 0;
    HomologySummary summary;
    std::map<std::pair<Simplex, int>, std::vector<Int>> witness_chain;
};

TotalHomologyReport total_homology(const GradedChainComplex& c);

// Contraction of an acyclic complex in any variant by Gaussian elimination,
// preferring short-range pivots when a metric is supplied.
GradedHomotopy acyclic_contraction(const GradedChainComplex& c, const BaseMetric* metric);

}  // namespace chox
