#pragma once

#include <tuple>

#include "chox/subdivision_data.hpp"

namespace chox {

enum class Variant { Costar, Star, Full };

std::string variant_name(Variant v);

// (tau, sigma, n): a block mapping the sigma piece in degree n to the tau piece.
using BlockKey = std::tuple<Simplex, Simplex, int>;

struct GradedChainComplex {
    SimplicialComplex base;
    Variant variant = Variant::Costar;
    std::map<std::pair<Simplex, int>, long> ranks;
    std::map<BlockKey, IntMat> diff;  // degree n -> n-1
    int lo = 0, hi = -1;

    long rank(const Simplex& s, int n) const;
    IntMat block(const Simplex& tau, const Simplex& sigma, int n) const;
    void set_rank(const Simplex& s, int n, long r);
    void set_block(const Simplex& tau, const Simplex& sigma, int n, IntMat m);
    bool piece_present(const Simplex& s) const;
};

struct GradedChainMap {
    // source and target share a base
    const GradedChainComplex* source = nullptr;
    const GradedChainComplex* target = nullptr;
    std::map<BlockKey, IntMat> blocks;  // degree-preserving

    IntMat block(const Simplex& tau, const Simplex& sigma, int n) const;
    void set_block(const Simplex& tau, const Simplex& sigma, int n, IntMat m);
};

struct GradedHomotopy {
    const GradedChainComplex* on = nullptr;
    std::map<BlockKey, IntMat> blocks;  // degree n -> n+1

    IntMat block(const Simplex& tau, const Simplex& sigma, int n) const;
    void set_block(const Simplex& tau, const Simplex& sigma, int n, IntMat m);
};

bool variant_allows(Variant v, const Simplex& tau, const Simplex& sigma);

bool verify(const GradedChainComplex& c);
bool is_chain_map(const GradedChainMap& f);

GradedChainMap identity_map(const GradedChainComplex& c);
GradedChainMap compose(const GradedChainMap& g, const GradedChainMap& f,
                       std::map<BlockKey, IntMat>* scratch = nullptr);
GradedChainMap map_sum(const GradedChainMap& a, const GradedChainMap& b);
GradedChainMap map_negate(const GradedChainMap& a);
bool map_equal(const GradedChainMap& a, const GradedChainMap& b);

// d P + P d as a degree-zero map on P.on
GradedChainMap homotopy_boundary(const GradedHomotopy& p);
// g . P . f for composable data (P on mid, f: src->mid, g: mid->tgt of degree 0)
GradedHomotopy conjugate_homotopy(const GradedChainMap& g, const GradedHomotopy& p,
                                  const GradedChainMap& f, const GradedChainComplex& on);
GradedHomotopy homotopy_sum(const GradedHomotopy& a, const GradedHomotopy& b);

struct ConeComplex {
    GradedChainComplex cone;
    const GradedChainComplex* c = nullptr;
    const GradedChainComplex* d = nullptr;
};

// C_n (+) D_{n+1} with differential [[d_C, 0], [f, -d_D]]
ConeComplex mapping_cone(const GradedChainMap& f);

GradedChainComplex simplicial_chain_complex(const SimplicialComplex& x);
GradedChainComplex simplicial_cochain_complex(const SimplicialComplex& x);

GradedChainComplex dualize(const GradedChainComplex& c);
GradedChainMap dualize(const GradedChainMap& f, const GradedChainComplex& dual_src,
                       const GradedChainComplex& dual_tgt);
GradedHomotopy dualize(const GradedHomotopy& p, const GradedChainComplex& dual_on);

GradedChainComplex assemble_covariant(const GradedChainComplex& c, const SubdividedComplex& sd);
GradedChainComplex assemble_contravariant(const GradedChainComplex& c, const SubdividedComplex& sd);
GradedChainMap assemble_covariant(const GradedChainMap& f, const SubdividedComplex& sd,
                                  const GradedChainComplex& asrc, const GradedChainComplex& atgt);

// total complex of all pieces in one integer matrix per degree
struct TotalComplex {
    std::map<int, IntMat> d;                                // degree n -> n-1
    std::map<int, std::vector<std::pair<Simplex, long>>> layout;  // per degree
    std::map<int, std::map<Simplex, long>> offset;
    int lo = 0, hi = -1;
};

TotalComplex totalize(const GradedChainComplex& c);

}  // namespace chox
