#include <doctest.h>

#include <algorithm>
#include <set>

#include "chox/subdivision_data.hpp"

using namespace chox;

TEST_CASE("min-vertex data on the interval matches the worked partition") {
    auto x = SimplicialComplex::build({{0, 1}});
    SubdivisionData data = choose_r(x, 1, RPolicy::MinVertex);
    const SubdivisionLevel& lv = data.top();
    // vertex order: {0} -> 0, {1} -> 1, {0,1} -> 2
    CHECK(lv.r[0] == 0);
    CHECK(lv.r[1] == 1);
    CHECK(lv.r[2] == 0);
    // regions: I_{v0} = [v0^, (01)^], I_{(0,1)} = the far half-open edge, I_{v1} = [v1^]
    CHECK(lv.region_of({0}) == Simplex{0});
    CHECK(lv.region_of({2}) == Simplex{0});
    CHECK(lv.region_of({0, 2}) == Simplex{0});
    CHECK(lv.region_of({1}) == Simplex{1});
    CHECK(lv.region_of({1, 2}) == Simplex{0, 1});
    CHECK(regions_partition(lv));
    CHECK(forest_spans(lv));
    // distinguished flag of the edge maps onto it
    CHECK(lv.distinguished.at({0, 1}) == Simplex{1, 2});
}

TEST_CASE("min-vertex data on the triangle") {
    auto x = SimplicialComplex::build({{0, 1, 2}});
    SubdivisionData data = choose_r(x, 1, RPolicy::MinVertex);
    const SubdivisionLevel& lv = data.top();
    CHECK(regions_partition(lv));
    CHECK(forest_spans(lv));
    // counts per region match the worked picture: I over the top simplex is a
    // single open triangle, each edge region has two triangles, two edges and
    // one of them also a diagonal... count open simplices per region
    std::map<Simplex, int, SimplexOrder> counts;
    for (const auto& [t, reg] : lv.region) counts[reg] += 1;
    long total = 0;
    for (const auto& [reg, k] : counts) total += k;
    CHECK(total == static_cast<long>(lv.sd.complex.simplex_count()));
    CHECK(counts[{0, 1, 2}] == 1);  // a single top simplex maps onto the triangle
}

TEST_CASE("iterated data composes r and the forest") {
    auto x = SimplicialComplex::build({{0, 1}});
    SubdivisionData data = choose_r(x, 2, RPolicy::MinVertex);
    CHECK(data.level_count() == 2);
    for (const SubdivisionLevel& lv : data.levels) {
        CHECK(regions_partition(lv));
        CHECK(forest_spans(lv));
    }
    std::vector<int> r = data.composite_r();
    CHECK(r.size() == data.top().sd.vertex_base.size());
    for (int v : r) CHECK((v == 0 || v == 1));
    // union forest: one edge per subdivision vertex that is not an original vertex
    auto forest = data.composite_forest();
    std::set<int> covered;
    for (auto [a, b] : forest) {
        covered.insert(a);
        covered.insert(b);
    }
    CHECK(covered.size() == data.top().sd.vertex_base.size());
}

TEST_CASE("gamma cells of the triangle include the square over each edge region") {
    auto x = SimplicialComplex::build({{0, 1, 2}});
    SubdivisionData data = choose_r(x, 1, RPolicy::MinVertex);
    const SubdivisionLevel& lv = data.top();
    // the cell over the edge (0,1) with chain (edge < triangle) has two tops
    bool found = false;
    for (const HomotopyCell& cell : lv.cells) {
        if (cell.face == Simplex{0, 1} && cell.chain.size() == 2 &&
            cell.chain[0] == Simplex{0, 1} && cell.chain[1] == Simplex{0, 1, 2}) {
            found = true;
            CHECK(cell.tops.size() == 2);
        }
    }
    CHECK(found);
}

TEST_CASE("orientation anchors agree on distinguished flags") {
    for (auto maximal : {std::vector<Simplex>{{0, 1, 2}},
                         std::vector<Simplex>{{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}}}) {
        auto x = SimplicialComplex::build(maximal);
        SubdivisionData data = choose_r(x, 1, RPolicy::MinVertex);
        const SubdivisionLevel& lv = data.top();
        for (const Simplex& t : lv.sd.complex.all_simplices()) CHECK(lv.orientation.count(t));
    }
}

TEST_CASE("boundary-retracting policy still yields valid data") {
    auto x = SimplicialComplex::build({{0, 1, 2}});
    SubdivisionData data = choose_r(x, 2, RPolicy::BoundaryRetracting);
    for (const SubdivisionLevel& lv : data.levels) {
        CHECK(regions_partition(lv));
        CHECK(forest_spans(lv));
        // r is a simplicial approximation to the identity
        for (size_t w = 0; w < lv.sd.vertex_base.size(); ++w) {
            const Simplex& b = lv.sd.vertex_base[w];
            CHECK(std::find(b.begin(), b.end(), lv.r[w]) != b.end());
        }
    }
}
