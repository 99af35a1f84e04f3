#pragma once

#include <cstdint>

#include "chox/graded.hpp"

namespace chox::fixtures {

inline uint64_t mix(uint64_t& s) {
    s += 0x9e3779b97f4a7c15ull;
    uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

inline SimplicialComplex interval() { return SimplicialComplex::build({{0, 1}}); }
inline SimplicialComplex triangle() { return SimplicialComplex::build({{0, 1, 2}}); }
inline SimplicialComplex sphere2() {
    return SimplicialComplex::build({{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
}
inline SimplicialComplex t_graph() { return SimplicialComplex::build({{0, 1}, {1, 2}, {1, 3}}); }

// grows a piece by `extra` slots, resizing every block touching it
inline void add_rank(GradedChainComplex& c, const Simplex& s, int n, long extra) {
    long r = c.rank(s, n) + extra;
    c.set_rank(s, n, r);
    std::vector<std::pair<BlockKey, IntMat>> updates;
    for (const auto& [key, m] : c.diff) {
        const auto& [a, b, deg] = key;
        bool as_source = (b == s && deg == n);
        bool as_target = (a == s && deg == n + 1);
        if (!as_source && !as_target) continue;
        long rows = m.rows() + (as_target ? extra : 0);
        long cols = m.cols() + (as_source ? extra : 0);
        IntMat grown(rows, cols);
        for (long i = 0; i < m.rows(); ++i)
            for (long j = 0; j < m.cols(); ++j) grown.at(i, j) = m.at(i, j);
        updates.emplace_back(key, std::move(grown));
    }
    for (auto& [key, m] : updates)
        c.set_block(std::get<0>(key), std::get<1>(key), std::get<2>(key), std::move(m));
}

// A random complex in the costar variant: elementary contractible pairs and
// optional free pieces, twisted by triangular transvections.
inline GradedChainComplex random_costar(const SimplicialComplex& base, uint64_t seed,
                                        long max_rank, int lo, int hi, bool contractible) {
    GradedChainComplex c;
    c.base = base;
    c.variant = Variant::Costar;
    std::vector<Simplex> simplices = base.all_simplices();
    for (const Simplex& s : simplices)
        for (int n = lo; n < hi; ++n) {
            long pairs = static_cast<long>(mix(seed) % (max_rank + 1));
            if (pairs > 0) {
                add_rank(c, s, n + 1, pairs);
                add_rank(c, s, n, pairs);
                long r_hi = c.rank(s, n + 1), r_lo = c.rank(s, n);
                IntMat d = c.block(s, s, n + 1);
                for (long k = 0; k < pairs; ++k)
                    d.at(r_lo - pairs + k, r_hi - pairs + k) = 1;
                c.set_block(s, s, n + 1, std::move(d));
            }
            if (!contractible && mix(seed) % 3 == 0) add_rank(c, s, n, 1);
        }
    // triangular transvections keep d^2 = 0 and the variant
    long twists = 4 + static_cast<long>(mix(seed) % 8);
    for (long t = 0; t < twists; ++t) {
        const Simplex& sigma = simplices[mix(seed) % simplices.size()];
        std::vector<Simplex> down = faces_of(sigma);
        const Simplex& tau = down[mix(seed) % down.size()];
        int n = lo + static_cast<int>(mix(seed) % (hi - lo + 1));
        long rt = c.rank(tau, n), rs = c.rank(sigma, n);
        if (rt == 0 || rs == 0) continue;
        long i = static_cast<long>(mix(seed) % rt), j = static_cast<long>(mix(seed) % rs);
        if (tau == sigma && i == j) continue;
        Int lam(static_cast<long>(mix(seed) % 5) - 2);
        if (lam == 0) continue;
        // e: single entry block (tau, sigma) in degree n; d' = d + e d - d e
        std::map<BlockKey, IntMat> upd;
        for (const auto& [k, m] : c.diff) {
            const auto& [a, b, deg] = k;
            // e . d  : d lands in (sigma, n)
            if (a == sigma && deg == n + 1) {
                IntMat add(rt, m.cols());
                for (long col = 0; col < m.cols(); ++col) add.at(i, col) = lam * m.at(j, col);
                BlockKey kk{tau, b, deg};
                auto it = upd.find(kk);
                if (it == upd.end())
                    upd.emplace(kk, c.block(tau, b, deg) + add);
                else
                    it->second = it->second + add;
            }
            // d . e : d leaves from (tau, n)
            if (b == tau && deg == n) {
                IntMat add(m.rows(), rs);
                for (long row = 0; row < m.rows(); ++row) add.at(row, j) = -lam * m.at(row, i);
                BlockKey kk{a, sigma, deg};
                auto it = upd.find(kk);
                if (it == upd.end())
                    upd.emplace(kk, c.block(a, sigma, deg) + add);
                else
                    it->second = it->second + add;
            }
        }
        for (auto& [k, m] : upd)
            c.set_block(std::get<0>(k), std::get<1>(k), std::get<2>(k), std::move(m));
    }
    return c;
}

// a null-homotopic chain map C -> C from random triangular degree +1 blocks
inline GradedChainMap random_null_map(const GradedChainComplex& c, uint64_t seed) {
    GradedHomotopy g;
    g.on = &c;
    std::vector<Simplex> simplices = c.base.all_simplices();
    for (int t = 0; t < 6; ++t) {
        const Simplex& sigma = simplices[mix(seed) % simplices.size()];
        std::vector<Simplex> down = faces_of(sigma);
        const Simplex& tau = down[mix(seed) % down.size()];
        for (const auto& [k, r] : c.ranks) {
            if (k.first != sigma) continue;
            int n = k.second;
            long rt = c.rank(tau, n + 1);
            if (rt == 0) continue;
            IntMat m(rt, r);
            m.at(static_cast<long>(mix(seed) % rt), static_cast<long>(mix(seed) % r)) =
                Int(static_cast<long>(mix(seed) % 3) - 1);
            if (m.is_zero()) continue;
            IntMat prev = g.block(tau, sigma, n);
            g.set_block(tau, sigma, n, prev + m);
        }
    }
    return homotopy_boundary(g);
}

}  // namespace chox::fixtures
