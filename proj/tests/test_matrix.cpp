#include <doctest.h>

#include "chox/matrix.hpp"

using namespace chox;

namespace {

IntMat from(std::initializer_list<std::initializer_list<long>> rows) {
    IntMat m(static_cast<long>(rows.size()),
             rows.size() ? static_cast<long>(rows.begin()->size()) : 0);
    long i = 0;
    for (const auto& r : rows) {
        long j = 0;
        for (long v : r) m.at(i, j++) = v;
        ++i;
    }
    return m;
}

uint64_t splitmix(uint64_t& s) {
    s += 0x9e3779b97f4a7c15ull;
    uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

}  // namespace

TEST_CASE("smith normal form reconstructs its input") {
    uint64_t seed = 42;
    for (int trial = 0; trial < 20; ++trial) {
        long r = 1 + splitmix(seed) % 5, c = 1 + splitmix(seed) % 5;
        IntMat a(r, c);
        for (long i = 0; i < r; ++i)
            for (long j = 0; j < c; ++j) a.at(i, j) = static_cast<long>(splitmix(seed) % 11) - 5;
        SmithForm f = smith_normal_form(a);
        CHECK((f.s * a * f.t - f.d).is_zero());
        CHECK((f.s * f.s_inv - IntMat::identity(r)).is_zero());
        CHECK((f.s_inv * f.s - IntMat::identity(r)).is_zero());
        CHECK((f.t * f.t_inv - IntMat::identity(c)).is_zero());
        for (size_t i = 1; i < f.invariants.size(); ++i)
            CHECK(f.invariants[i] % f.invariants[i - 1] == 0);
    }
}

TEST_CASE("solve finds integer solutions exactly when they exist") {
    IntMat a = from({{2, 0}, {0, 3}});
    auto sol = solve(a, {4, 9});
    REQUIRE(sol.has_value());
    CHECK((*sol)[0] == 2);
    CHECK((*sol)[1] == 3);
    CHECK(!solve(a, {1, 0}).has_value());
}

TEST_CASE("kernel basis spans the kernel") {
    IntMat a = from({{1, 1, 1}});
    IntMat k = kernel_basis(a);
    CHECK(k.cols() == 2);
    CHECK((a * k).is_zero());
}

TEST_CASE("homology of the hollow triangle") {
    IntMat d1 = from({{-1, -1, 0}, {1, 0, -1}, {0, 1, 1}});
    IntMat d0(0, 3);
    IntMat d2(3, 0);
    HomologySummary h1 = homology(d1, d2);
    CHECK(h1.betti == 1);
    CHECK(h1.torsion.empty());
    HomologySummary h0 = homology(d0, d1);
    CHECK(h0.betti == 1);
}

TEST_CASE("homology detects torsion with a witness") {
    IntMat d1 = from({{2}});
    IntMat d0(0, 1);
    std::vector<Int> w;
    HomologySummary h = homology(d0, d1, &w);
    REQUIRE(h.torsion.size() == 1);
    CHECK(h.torsion[0] == 2);
    CHECK(h.betti == 0);
}
