#include <doctest.h>

#include "chox/simplicial.hpp"

using namespace chox;

TEST_CASE("closure of a single triangle") {
    auto x = SimplicialComplex::build({{0, 1, 2}});
    CHECK(x.simplex_count() == 7);
    CHECK(x.dim() == 2);
    CHECK(x.closed_under_faces());
    // deterministic regardless of input order
    auto y = SimplicialComplex::build({{2, 1, 0}});
    CHECK(x == y);
}

TEST_CASE("the T graph") {
    auto t = SimplicialComplex::build({{0, 1}, {1, 2}, {1, 3}});
    CHECK(t.vertices().size() == 4);
    CHECK(t.simplices(1).size() == 3);
    CHECK(t.dim() == 1);
}

TEST_CASE("boundary of the 3-simplex") {
    auto x = SimplicialComplex::build({{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
    CHECK(x.simplex_count() == 14);
    IntMat d2 = x.boundary_matrix(2);
    IntMat d1 = x.boundary_matrix(1);
    CHECK((d1 * d2).is_zero());
}

TEST_CASE("malformed input is rejected") {
    CHECK_THROWS_AS(SimplicialComplex::build({{0, 0, 1}}), malformed_simplex_error);
    CHECK_THROWS_AS(SimplicialComplex::build({}), malformed_simplex_error);
    CHECK_THROWS_AS(SimplicialComplex::build({{}}), malformed_simplex_error);
}

TEST_CASE("boundary matrix of the interval") {
    auto x = SimplicialComplex::build({{0, 1}});
    IntMat d1 = x.boundary_matrix(1);
    REQUIRE(d1.rows() == 2);
    REQUIRE(d1.cols() == 1);
    CHECK(d1.at(0, 0) == -1);
    CHECK(d1.at(1, 0) == 1);
}

TEST_CASE("boundary matrix of the triangle has alternating signs") {
    auto x = SimplicialComplex::build({{0, 1, 2}});
    IntMat d2 = x.boundary_matrix(2);
    // rows ordered (0,1), (0,2), (1,2)
    CHECK(d2.at(0, 0) == 1);
    CHECK(d2.at(1, 0) == -1);
    CHECK(d2.at(2, 0) == 1);
}

TEST_CASE("barycentric subdivision of the interval") {
    auto x = SimplicialComplex::build({{0, 1}});
    SubdividedComplex sd = barycentric_subdivide(x);
    CHECK(sd.complex.simplices(0).size() == 3);
    CHECK(sd.complex.simplices(1).size() == 2);
    CHECK(sd.level == 1);
}

TEST_CASE("barycentric subdivision of the triangle counts flags") {
    auto x = SimplicialComplex::build({{0, 1, 2}});
    SubdividedComplex sd = barycentric_subdivide(x);
    CHECK(sd.complex.simplices(0).size() == 7);
    CHECK(sd.complex.simplices(1).size() == 12);
    CHECK(sd.complex.simplices(2).size() == 6);
}

TEST_CASE("subdividing a point is the identity") {
    auto x = SimplicialComplex::build({{0}});
    SubdividedComplex sd = barycentric_subdivide(x);
    CHECK(sd.complex.simplex_count() == 1);
}

TEST_CASE("carriers name the top of the flag") {
    auto x = SimplicialComplex::build({{0, 1, 2}});
    SubdividedComplex sd = barycentric_subdivide(x);
    for (const Simplex& t : sd.complex.all_simplices()) {
        const Simplex& car = sd.carrier(t);
        for (const Simplex& member : sd.flag(t)) CHECK(is_face(member, car));
    }
}

TEST_CASE("dual cells of the triangle") {
    auto x = SimplicialComplex::build({{0, 1, 2}});
    SubdividedComplex sd = barycentric_subdivide(x);
    // top simplex: the dual cell is its barycentre alone
    DualCell top = dual_cell({0, 1, 2}, x, sd);
    CHECK(top.closed.size() == 1);
    CHECK(top.boundary.empty());
    // vertex 2: hexagon-like star of its barycentre
    DualCell v = dual_cell({2}, x, sd);
    CHECK(v.open.size() + v.boundary.size() == v.closed.size());
    for (const Simplex& t : v.open) CHECK(sd.flag(t).front() == Simplex{2});
    // edge (0,1) of a lone triangle: one sd edge out of its barycentre
    DualCell e = dual_cell({0, 1}, x, sd);
    int open_edges = 0;
    for (const Simplex& t : e.open)
        if (t.size() == 2) ++open_edges;
    CHECK(open_edges == 1);
    CHECK_THROWS_AS(dual_cell({0, 3}, x, sd), unknown_simplex_error);
}

TEST_CASE("dual cell of an interior edge is two edges meeting at its barycentre") {
    auto x = SimplicialComplex::build({{0, 1, 2}, {0, 1, 3}});
    SubdividedComplex sd = barycentric_subdivide(x);
    DualCell e = dual_cell({0, 1}, x, sd);
    int open_edges = 0;
    for (const Simplex& t : e.open)
        if (t.size() == 2) ++open_edges;
    CHECK(open_edges == 2);
}

TEST_CASE("every subdivision simplex lies in exactly one open dual cell") {
    auto x = SimplicialComplex::build({{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
    SubdividedComplex sd = barycentric_subdivide(x);
    std::map<Simplex, int, SimplexOrder> seen;
    for (const Simplex& s : x.all_simplices()) {
        DualCell d = dual_cell(s, x, sd);
        for (const Simplex& t : d.open) seen[t] += 1;
    }
    CHECK(seen.size() == sd.complex.simplex_count());
    for (const auto& [t, k] : seen) CHECK(k == 1);
}

TEST_CASE("links in the boundary of the 3-simplex") {
    auto x = SimplicialComplex::build({{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
    SimplicialComplex link_v = x.link({0});
    CHECK(link_v.dim() == 1);
    CHECK(link_v.simplices(1).size() == 3);  // a circle
    SimplicialComplex link_e = x.link({0, 1});
    CHECK(link_e.dim() == 0);
    CHECK(link_e.simplices(0).size() == 2);  // two points
}
