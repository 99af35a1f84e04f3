#include <doctest.h>

#include "fixtures.hpp"

using namespace chox;
using namespace chox::fixtures;

TEST_CASE("the interval chain complex matches the two-arrow picture") {
    auto x = interval();
    GradedChainComplex c = simplicial_chain_complex(x);
    CHECK(verify(c));
    CHECK(c.rank({0}, 0) == 1);
    CHECK(c.rank({1}, 0) == 1);
    CHECK(c.rank({0, 1}, 1) == 1);
    CHECK(c.block({0}, {0, 1}, 1).at(0, 0) == -1);
    CHECK(c.block({1}, {0, 1}, 1).at(0, 0) == 1);
}

TEST_CASE("verify rejects a sign-flipped triangle boundary") {
    auto x = triangle();
    GradedChainComplex c = simplicial_chain_complex(x);
    IntMat b = c.block({0, 1}, {0, 1, 2}, 2);
    c.set_block({0, 1}, {0, 1, 2}, 2, -b);
    CHECK(!verify(c));
}

TEST_CASE("verify rejects star blocks in a costar complex") {
    auto x = interval();
    GradedChainComplex c = simplicial_chain_complex(x);
    IntMat up(1, 1);
    up.at(0, 0) = 1;
    c.set_block({0, 1}, {0}, 0, up);
    CHECK(!verify(c));
}

TEST_CASE("random costar complexes verify") {
    for (uint64_t seed : {1ull, 2ull, 3ull}) {
        GradedChainComplex c = random_costar(sphere2(), seed, 3, 0, 4, false);
        CHECK(verify(c));
        GradedChainComplex d = dualize(c);
        CHECK(d.variant == Variant::Star);
        CHECK(verify(d));
    }
}

TEST_CASE("cochain complex mirrors the chain complex in negative degrees") {
    auto x = sphere2();
    GradedChainComplex c = simplicial_cochain_complex(x);
    CHECK(verify(c));
    CHECK(c.variant == Variant::Star);
    CHECK(c.rank({0}, 0) == 1);
    CHECK(c.rank({0, 1, 2}, -2) == 1);
}

TEST_CASE("mapping cone of zero is the shifted target with negated differential") {
    auto x = interval();
    GradedChainComplex d = simplicial_chain_complex(x);
    GradedChainComplex zero;
    zero.base = x;
    zero.variant = Variant::Costar;
    GradedChainMap f;
    f.source = &zero;
    f.target = &d;
    ConeComplex cone = mapping_cone(f);
    CHECK(verify(cone.cone));
    CHECK(cone.cone.rank({0, 1}, 0) == 1);
    CHECK(cone.cone.block({0}, {0, 1}, 0).at(0, 0) == 1);  // minus the original -1
}

TEST_CASE("cone of the identity verifies") {
    auto x = triangle();
    GradedChainComplex c = simplicial_chain_complex(x);
    GradedChainMap one = identity_map(c);
    ConeComplex cone = mapping_cone(one);
    CHECK(verify(cone.cone));
}

TEST_CASE("null-homotopic maps are chain maps") {
    for (uint64_t seed : {5ull, 6ull}) {
        GradedChainComplex c = random_costar(triangle(), seed, 2, 0, 3, false);
        GradedChainMap f = random_null_map(c, seed * 11);
        CHECK(is_chain_map(f));
    }
}

TEST_CASE("covariant assembly of the subdivided interval matches the worked block") {
    auto x = interval();
    SubdividedComplex sd = barycentric_subdivide(x);
    GradedChainComplex c = simplicial_chain_complex(sd.complex);
    GradedChainComplex r = assemble_covariant(c, sd);
    CHECK(verify(r));
    CHECK(r.variant == Variant::Costar);
    // ranks (1; 3; 1): vertices keep rank 1, the open edge collects three cells
    CHECK(r.rank({0}, 0) == 1);
    CHECK(r.rank({1}, 0) == 1);
    CHECK(r.rank({0, 1}, 0) == 1);
    CHECK(r.rank({0, 1}, 1) == 2);
    // middle differential block: the edge phase carries the barycentre column
    IntMat mu = r.block({0, 1}, {0, 1}, 1);
    CHECK(mu.rows() == 1);
    CHECK(mu.cols() == 2);
}

TEST_CASE("contravariant assembly swaps the variant and mirrors blocks") {
    auto x = interval();
    SubdividedComplex sd = barycentric_subdivide(x);
    GradedChainComplex c = simplicial_chain_complex(sd.complex);
    GradedChainComplex t = assemble_contravariant(c, sd);
    CHECK(t.variant == Variant::Star);
    CHECK(verify(t));
    // the dual cell of each vertex collects two cells, the edge keeps one
    CHECK(t.rank({0}, 0) == 1);
    CHECK(t.rank({0}, 1) == 1);
    CHECK(t.rank({0, 1}, 0) == 1);
}

TEST_CASE("assembly is functorial on null-homotopic maps") {
    auto x = interval();
    SubdividedComplex sd = barycentric_subdivide(x);
    GradedChainComplex c = random_costar(sd.complex, 9, 2, 0, 3, false);
    GradedChainMap f = random_null_map(c, 17);
    GradedChainMap g = random_null_map(c, 23);
    GradedChainComplex ac = assemble_covariant(c, sd);
    GradedChainMap af = assemble_covariant(f, sd, ac, ac);
    GradedChainMap ag = assemble_covariant(g, sd, ac, ac);
    GradedChainMap comp = compose(g, f);
    GradedChainMap acomp = assemble_covariant(comp, sd, ac, ac);
    CHECK(map_equal(acomp, compose(ag, af)));
    CHECK(is_chain_map(af));
}
