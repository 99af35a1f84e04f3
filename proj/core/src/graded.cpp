#include "chox/graded.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace chox {

std::string variant_name(Variant v) {
    switch (v) {
        case Variant::Costar: return "costar";
        case Variant::Star: return "star";
        default: return "full";
    }
}

long GradedChainComplex::rank(const Simplex& s, int n) const {
    auto it = ranks.find({s, n});
    return it == ranks.end() ? 0 : it->second;
}

IntMat GradedChainComplex::block(const Simplex& tau, const Simplex& sigma, int n) const {
    auto it = diff.find({tau, sigma, n});
    if (it != diff.end()) return it->second;
    return IntMat(rank(tau, n - 1), rank(sigma, n));
}

void GradedChainComplex::set_rank(const Simplex& s, int n, long r) {
    if (r == 0) {
        ranks.erase({s, n});
        return;
    }
    ranks[{s, n}] = r;
    if (lo > hi) {
        lo = hi = n;
    } else {
        lo = std::min(lo, n);
        hi = std::max(hi, n);
    }
}

void GradedChainComplex::set_block(const Simplex& tau, const Simplex& sigma, int n, IntMat m) {
    if (m.is_zero()) {
        diff.erase({tau, sigma, n});
        return;
    }
    diff[{tau, sigma, n}] = std::move(m);
}

bool GradedChainComplex::piece_present(const Simplex& s) const {
    for (const auto& [key, r] : ranks)
        if (key.first == s && r > 0) return true;
    return false;
}

IntMat GradedChainMap::block(const Simplex& tau, const Simplex& sigma, int n) const {
    auto it = blocks.find({tau, sigma, n});
    if (it != blocks.end()) return it->second;
    return IntMat(target->rank(tau, n), source->rank(sigma, n));
}

void GradedChainMap::set_block(const Simplex& tau, const Simplex& sigma, int n, IntMat m) {
    if (m.is_zero()) {
        blocks.erase({tau, sigma, n});
        return;
    }
    blocks[{tau, sigma, n}] = std::move(m);
}

IntMat GradedHomotopy::block(const Simplex& tau, const Simplex& sigma, int n) const {
    auto it = blocks.find({tau, sigma, n});
    if (it != blocks.end()) return it->second;
    return IntMat(on->rank(tau, n + 1), on->rank(sigma, n));
}

void GradedHomotopy::set_block(const Simplex& tau, const Simplex& sigma, int n, IntMat m) {
    if (m.is_zero()) {
        blocks.erase({tau, sigma, n});
        return;
    }
    blocks[{tau, sigma, n}] = std::move(m);
}

bool variant_allows(Variant v, const Simplex& tau, const Simplex& sigma) {
    switch (v) {
        case Variant::Costar: return is_face(tau, sigma);
        case Variant::Star: return is_face(sigma, tau);
        default: return true;
    }
}

bool verify(const GradedChainComplex& c) {
    for (const auto& [key, m] : c.diff) {
        const auto& [tau, sigma, n] = key;
        if (!variant_allows(c.variant, tau, sigma)) return false;
        if (m.rows() != c.rank(tau, n - 1) || m.cols() != c.rank(sigma, n)) return false;
        if (!c.base.contains(tau) || !c.base.contains(sigma)) return false;
    }
    // d^2 = 0 blockwise: group diff keys by source piece
    std::map<std::pair<Simplex, int>, std::vector<const BlockKey*>> into;
    for (const auto& [key, m] : c.diff) {
        (void)m;
        into[{std::get<1>(key), std::get<2>(key)}].push_back(&key);
    }
    for (const auto& [skey, srank] : c.ranks) {
        (void)srank;
        const auto& [sigma, n] = skey;
        std::map<Simplex, IntMat, SimplexOrder> acc;
        for (const auto& [key, m] : c.diff) {
            if (std::get<1>(key) != sigma || std::get<2>(key) != n) continue;
            const Simplex& tau = std::get<0>(key);
            auto it = into.find({tau, n - 1});
            if (it == into.end()) continue;
            for (const BlockKey* k2 : it->second) {
                const Simplex& rho = std::get<0>(*k2);
                IntMat prod = c.diff.at(*k2) * m;
                auto a = acc.find(rho);
                if (a == acc.end())
                    acc.emplace(rho, std::move(prod));
                else
                    a->second = a->second + prod;
            }
        }
        for (const auto& [rho, m] : acc)
            if (!m.is_zero()) return false;
    }
    return true;
}

bool is_chain_map(const GradedChainMap& f) {
    const GradedChainComplex& c = *f.source;
    const GradedChainComplex& d = *f.target;
    if (!(c.base == d.base)) return false;
    for (const auto& [key, m] : f.blocks) {
        const auto& [tau, sigma, n] = key;
        if (!variant_allows(c.variant, tau, sigma)) return false;
        if (m.rows() != d.rank(tau, n) || m.cols() != c.rank(sigma, n)) return false;
    }
    // d_D f = f d_C blockwise
    std::map<BlockKey, IntMat> lhs, rhs;
    auto add_to = [](std::map<BlockKey, IntMat>& acc, const BlockKey& k, IntMat m) {
        if (m.is_zero()) return;
        auto it = acc.find(k);
        if (it == acc.end())
            acc.emplace(k, std::move(m));
        else
            it->second = it->second + m;
    };
    for (const auto& [fk, fm] : f.blocks) {
        const auto& [mid, sigma, n] = fk;
        for (const auto& [dk, dm] : d.diff) {
            if (std::get<1>(dk) != mid || std::get<2>(dk) != n) continue;
            add_to(lhs, {std::get<0>(dk), sigma, n}, dm * fm);
        }
    }
    for (const auto& [dk, dm] : c.diff) {
        const auto& [mid, sigma, n] = dk;
        for (const auto& [fk, fm] : f.blocks) {
            if (std::get<1>(fk) != mid || std::get<2>(fk) != n - 1) continue;
            add_to(rhs, {std::get<0>(fk), sigma, n - 1}, fm * dm);
        }
    }
    // lhs keys (rho, sigma, n): map C(sigma)_n -> D(rho)_{n-1}; rhs was emitted
    // with key (tau, sigma, n-1) for the same positions, so re-tag by +1
    auto diff_nonzero = [](const std::map<BlockKey, IntMat>& a,
                           const std::map<BlockKey, IntMat>& b) {
        for (const auto& [k, m] : a) {
            auto it = b.find(k);
            if (it == b.end()) {
                if (!m.is_zero()) return true;
            } else if (!(m - it->second).is_zero()) {
                return true;
            }
        }
        for (const auto& [k, m] : b)
            if (!a.count(k) && !m.is_zero()) return true;
        return false;
    };
    std::map<BlockKey, IntMat> rhs2;
    for (auto& [k, m] : rhs)
        rhs2.emplace(BlockKey{std::get<0>(k), std::get<1>(k), std::get<2>(k) + 1}, std::move(m));
    return !diff_nonzero(lhs, rhs2);
}

GradedChainMap identity_map(const GradedChainComplex& c) {
    GradedChainMap f;
    f.source = &c;
    f.target = &c;
    for (const auto& [key, r] : c.ranks) f.blocks[{key.first, key.first, key.second}] = IntMat::identity(r);
    return f;
}

GradedChainMap compose(const GradedChainMap& g, const GradedChainMap& f,
                       std::map<BlockKey, IntMat>*) {
    GradedChainMap h;
    h.source = f.source;
    h.target = g.target;
    std::map<std::pair<Simplex, int>, std::vector<const BlockKey*>> g_by_src;
    for (const auto& [k, m] : g.blocks) {
        (void)m;
        g_by_src[{std::get<1>(k), std::get<2>(k)}].push_back(&k);
    }
    for (const auto& [fk, fm] : f.blocks) {
        const auto& [mid, sigma, n] = fk;
        auto it = g_by_src.find({mid, n});
        if (it == g_by_src.end()) continue;
        for (const BlockKey* gk : it->second) {
            IntMat prod = g.blocks.at(*gk) * fm;
            if (prod.is_zero()) continue;
            BlockKey key{std::get<0>(*gk), sigma, n};
            auto at = h.blocks.find(key);
            if (at == h.blocks.end())
                h.blocks.emplace(key, std::move(prod));
            else
                at->second = at->second + prod;
        }
    }
    std::erase_if(h.blocks, [](const auto& kv) { return kv.second.is_zero(); });
    return h;
}

GradedChainMap map_sum(const GradedChainMap& a, const GradedChainMap& b) {
    GradedChainMap out = a;
    for (const auto& [k, m] : b.blocks) {
        auto it = out.blocks.find(k);
        if (it == out.blocks.end())
            out.blocks.emplace(k, m);
        else
            it->second = it->second + m;
    }
    std::erase_if(out.blocks, [](const auto& kv) { return kv.second.is_zero(); });
    return out;
}

GradedChainMap map_negate(const GradedChainMap& a) {
    GradedChainMap out = a;
    for (auto& [k, m] : out.blocks) m = -m;
    return out;
}

bool map_equal(const GradedChainMap& a, const GradedChainMap& b) {
    for (const auto& [k, m] : a.blocks) {
        auto it = b.blocks.find(k);
        if (it == b.blocks.end()) {
            if (!m.is_zero()) return false;
        } else if (!(m - it->second).is_zero())
            return false;
    }
    for (const auto& [k, m] : b.blocks)
        if (!a.blocks.count(k) && !m.is_zero()) return false;
    return true;
}

GradedChainMap homotopy_boundary(const GradedHomotopy& p) {
    const GradedChainComplex& c = *p.on;
    GradedChainMap out;
    out.source = p.on;
    out.target = p.on;
    auto add_to = [&](const BlockKey& k, IntMat m) {
        if (m.is_zero()) return;
        auto it = out.blocks.find(k);
        if (it == out.blocks.end())
            out.blocks.emplace(k, std::move(m));
        else
            it->second = it->second + m;
    };
    for (const auto& [pk, pm] : p.blocks) {
        const auto& [mid, sigma, n] = pk;
        for (const auto& [dk, dm] : c.diff) {
            if (std::get<1>(dk) == mid && std::get<2>(dk) == n + 1)
                add_to({std::get<0>(dk), sigma, n}, dm * pm);
        }
    }
    for (const auto& [dk, dm] : c.diff) {
        const auto& [mid, sigma, n] = dk;
        for (const auto& [pk, pm] : p.blocks) {
            if (std::get<1>(pk) == mid && std::get<2>(pk) == n - 1)
                add_to({std::get<0>(pk), sigma, n}, pm * dm);
        }
    }
    std::erase_if(out.blocks, [](const auto& kv) { return kv.second.is_zero(); });
    return out;
}

GradedHomotopy conjugate_homotopy(const GradedChainMap& g, const GradedHomotopy& p,
                                  const GradedChainMap& f, const GradedChainComplex& on) {
    GradedHomotopy out;
    out.on = &on;
    // g . p . f, degree bookkeeping: f degree 0, p degree +1, g degree 0
    for (const auto& [pk, pm] : p.blocks) {
        const auto& [tau, mid, n] = pk;
        for (const auto& [fk, fm] : f.blocks) {
            if (std::get<0>(fk) != mid || std::get<2>(fk) != n) continue;
            IntMat pf = pm * fm;
            if (pf.is_zero()) continue;
            for (const auto& [gk, gm] : g.blocks) {
                if (std::get<1>(gk) != tau || std::get<2>(gk) != n + 1) continue;
                IntMat gpf = gm * pf;
                if (gpf.is_zero()) continue;
                BlockKey key{std::get<0>(gk), std::get<1>(fk), n};
                auto it = out.blocks.find(key);
                if (it == out.blocks.end())
                    out.blocks.emplace(key, std::move(gpf));
                else
                    it->second = it->second + gpf;
            }
        }
    }
    std::erase_if(out.blocks, [](const auto& kv) { return kv.second.is_zero(); });
    return out;
}

GradedHomotopy homotopy_sum(const GradedHomotopy& a, const GradedHomotopy& b) {
    GradedHomotopy out = a;
    for (const auto& [k, m] : b.blocks) {
        auto it = out.blocks.find(k);
        if (it == out.blocks.end())
            out.blocks.emplace(k, m);
        else
            it->second = it->second + m;
    }
    std::erase_if(out.blocks, [](const auto& kv) { return kv.second.is_zero(); });
    return out;
}

ConeComplex mapping_cone(const GradedChainMap& f) {
    const GradedChainComplex& c = *f.source;
    const GradedChainComplex& d = *f.target;
    if (!(c.base == d.base)) throw base_mismatch_error("mapping cone needs a common base");
    if (c.variant != d.variant) throw unsupported_variant_error("mapping cone needs one variant");
    ConeComplex out;
    out.c = f.source;
    out.d = f.target;
    GradedChainComplex& cone = out.cone;
    cone.base = c.base;
    cone.variant = c.variant;
    std::set<std::pair<Simplex, int>> keys;
    for (const auto& [k, r] : c.ranks) {
        (void)r;
        keys.insert(k);
    }
    for (const auto& [k, r] : d.ranks) {
        (void)r;
        keys.insert({k.first, k.second - 1});
    }
    for (const auto& [s, n] : keys) cone.set_rank(s, n, c.rank(s, n) + d.rank(s, n + 1));
    std::set<std::tuple<Simplex, Simplex, int>> bkeys;
    for (const auto& [k, m] : c.diff) {
        (void)m;
        bkeys.insert(k);
    }
    for (const auto& [k, m] : d.diff) {
        (void)m;
        bkeys.insert({std::get<0>(k), std::get<1>(k), std::get<2>(k) - 1});
    }
    for (const auto& [k, m] : f.blocks) {
        (void)m;
        bkeys.insert(k);
    }
    for (const auto& [tau, sigma, n] : bkeys) {
        long rc_t = c.rank(tau, n - 1), rd_t = d.rank(tau, n);
        long rc_s = c.rank(sigma, n), rd_s = d.rank(sigma, n + 1);
        IntMat m(rc_t + rd_t, rc_s + rd_s);
        IntMat dc = c.block(tau, sigma, n);
        for (long i = 0; i < rc_t; ++i)
            for (long j = 0; j < rc_s; ++j) m.at(i, j) = dc.at(i, j);
        IntMat fm = f.block(tau, sigma, n);
        for (long i = 0; i < rd_t; ++i)
            for (long j = 0; j < rc_s; ++j) m.at(rc_t + i, j) = fm.at(i, j);
        IntMat dd = d.block(tau, sigma, n + 1);
        for (long i = 0; i < rd_t; ++i)
            for (long j = 0; j < rd_s; ++j) m.at(rc_t + i, rc_s + j) = -dd.at(i, j);
        cone.set_block(tau, sigma, n, std::move(m));
    }
    return out;
}

GradedChainComplex simplicial_chain_complex(const SimplicialComplex& x) {
    GradedChainComplex c;
    c.base = x;
    c.variant = Variant::Costar;
    for (const Simplex& s : x.all_simplices()) c.set_rank(s, static_cast<int>(s.size()) - 1, 1);
    for (const Simplex& s : x.all_simplices()) {
        int n = static_cast<int>(s.size()) - 1;
        for (const Simplex& f : facets_of(s)) {
            IntMat m(1, 1);
            m.at(0, 0) = incidence(f, s);
            c.set_block(f, s, n, std::move(m));
        }
    }
    return c;
}

GradedChainComplex dualize(const GradedChainComplex& c) {
    GradedChainComplex d;
    d.base = c.base;
    d.variant = c.variant == Variant::Costar  ? Variant::Star
                : c.variant == Variant::Star ? Variant::Costar
                                             : Variant::Full;
    for (const auto& [k, r] : c.ranks) d.set_rank(k.first, -k.second, r);
    for (const auto& [k, m] : c.diff) {
        const auto& [tau, sigma, n] = k;
        // original block: C(sigma)_n -> C(tau)_{n-1}; dual: D(tau)_{-(n-1)} -> D(sigma)_{-n}
        d.set_block(sigma, tau, -(n - 1), m.transpose());
    }
    return d;
}

GradedChainMap dualize(const GradedChainMap& f, const GradedChainComplex& dual_src,
                       const GradedChainComplex& dual_tgt) {
    // dual of f: C -> D is f*: D* -> C*
    GradedChainMap g;
    g.source = &dual_src;  // D*
    g.target = &dual_tgt;  // C*
    for (const auto& [k, m] : f.blocks) {
        const auto& [tau, sigma, n] = k;
        g.set_block(sigma, tau, -n, m.transpose());
    }
    return g;
}

GradedHomotopy dualize(const GradedHomotopy& p, const GradedChainComplex& dual_on) {
    GradedHomotopy out;
    out.on = &dual_on;
    for (const auto& [k, m] : p.blocks) {
        const auto& [tau, sigma, n] = k;
        // block: A(sigma)_n -> A(tau)_{n+1}; dual: A*(tau)_{-n-1} -> A*(sigma)_{-n}
        out.set_block(sigma, tau, -n - 1, m.transpose());
    }
    return out;
}

GradedChainComplex simplicial_cochain_complex(const SimplicialComplex& x) {
    return dualize(simplicial_chain_complex(x));
}

namespace {

struct Grouping {
    std::map<Simplex, std::vector<Simplex>, SimplexOrder> parts;  // base simplex -> sd simplices
    std::map<Simplex, Simplex, SimplexOrder> owner;               // sd simplex -> base simplex
};

Grouping group_by(const SubdividedComplex& sd,
                  const std::function<Simplex(const Simplex&)>& label) {
    Grouping g;
    for (const Simplex& t : sd.complex.all_simplices()) {
        Simplex b = label(t);
        g.owner[t] = b;
        g.parts[b].push_back(t);
    }
    for (auto& [b, list] : g.parts) std::sort(list.begin(), list.end(), SimplexOrder());
    return g;
}

// offsets of each fine piece inside the assembled piece, per (group, degree)
std::map<std::pair<Simplex, int>, std::map<Simplex, long>> group_offsets(
    const GradedChainComplex& c, const Grouping& g,
    std::map<std::pair<Simplex, int>, long>* total) {
    std::map<std::pair<Simplex, int>, std::map<Simplex, long>> offsets;
    for (const auto& [b, list] : g.parts) {
        std::set<int> degrees;
        for (const Simplex& t : list)
            for (const auto& [k, r] : c.ranks) {
                (void)r;
                if (k.first == t) degrees.insert(k.second);
            }
        for (int n : degrees) {
            long cur = 0;
            for (const Simplex& t : list) {
                long r = c.rank(t, n);
                if (r == 0) continue;
                offsets[{b, n}][t] = cur;
                cur += r;
            }
            if (total) (*total)[{b, n}] = cur;
        }
    }
    return offsets;
}

GradedChainComplex assemble(const GradedChainComplex& c, const SubdividedComplex& sd,
                            const Grouping& g, Variant out_variant) {
    GradedChainComplex out;
    out.base = sd.base;
    out.variant = out_variant;
    std::map<std::pair<Simplex, int>, long> total;
    auto offsets = group_offsets(c, g, &total);
    for (const auto& [k, r] : total) out.set_rank(k.first, k.second, r);
    for (const auto& [k, m] : c.diff) {
        const auto& [tau, sigma, n] = k;
        const Simplex& bt = g.owner.at(tau);
        const Simplex& bs = g.owner.at(sigma);
        long rows = out.rank(bt, n - 1), cols = out.rank(bs, n);
        BlockKey key{bt, bs, n};
        auto it = out.diff.find(key);
        if (it == out.diff.end()) it = out.diff.emplace(key, IntMat(rows, cols)).first;
        long ro = offsets.at({bt, n - 1}).at(tau);
        long co = offsets.at({bs, n}).at(sigma);
        for (long i = 0; i < m.rows(); ++i)
            for (long j = 0; j < m.cols(); ++j) it->second.at(ro + i, co + j) = m.at(i, j);
    }
    std::erase_if(out.diff, [](const auto& kv) { return kv.second.is_zero(); });
    return out;
}

}  // namespace

GradedChainComplex assemble_covariant(const GradedChainComplex& c, const SubdividedComplex& sd) {
    Grouping g = group_by(sd, [&](const Simplex& t) { return sd.carrier(t); });
    return assemble(c, sd, g, c.variant);
}

GradedChainComplex assemble_contravariant(const GradedChainComplex& c, const SubdividedComplex& sd) {
    Grouping g = group_by(sd, [&](const Simplex& t) { return sd.flag(t).front(); });
    Variant v = c.variant == Variant::Costar  ? Variant::Star
                : c.variant == Variant::Star ? Variant::Costar
                                             : Variant::Full;
    return assemble(c, sd, g, v);
}

GradedChainMap assemble_covariant(const GradedChainMap& f, const SubdividedComplex& sd,
                                  const GradedChainComplex& asrc, const GradedChainComplex& atgt) {
    Grouping g = group_by(sd, [&](const Simplex& t) { return sd.carrier(t); });
    auto src_off = group_offsets(*f.source, g, nullptr);
    auto tgt_off = group_offsets(*f.target, g, nullptr);
    GradedChainMap out;
    out.source = &asrc;
    out.target = &atgt;
    for (const auto& [k, m] : f.blocks) {
        const auto& [tau, sigma, n] = k;
        const Simplex& bt = g.owner.at(tau);
        const Simplex& bs = g.owner.at(sigma);
        BlockKey key{bt, bs, n};
        auto it = out.blocks.find(key);
        if (it == out.blocks.end())
            it = out.blocks.emplace(key, IntMat(atgt.rank(bt, n), asrc.rank(bs, n))).first;
        long ro = tgt_off.at({bt, n}).at(tau);
        long co = src_off.at({bs, n}).at(sigma);
        for (long i = 0; i < m.rows(); ++i)
            for (long j = 0; j < m.cols(); ++j) it->second.at(ro + i, co + j) = m.at(i, j);
    }
    std::erase_if(out.blocks, [](const auto& kv) { return kv.second.is_zero(); });
    return out;
}

TotalComplex totalize(const GradedChainComplex& c) {
    TotalComplex t;
    if (c.ranks.empty()) return t;
    t.lo = c.ranks.begin()->first.second;
    t.hi = t.lo;
    for (const auto& [k, r] : c.ranks) {
        (void)r;
        t.lo = std::min(t.lo, k.second);
        t.hi = std::max(t.hi, k.second);
    }
    for (int n = t.lo; n <= t.hi; ++n) {
        long cur = 0;
        for (const auto& [k, r] : c.ranks) {
            if (k.second != n) continue;
            t.layout[n].emplace_back(k.first, r);
            t.offset[n][k.first] = cur;
            cur += r;
        }
    }
    auto dim_of = [&](int n) {
        long d = 0;
        for (const auto& [s, r] : t.layout[n]) {
            (void)s;
            d += r;
        }
        return d;
    };
    for (int n = t.lo; n <= t.hi + 1; ++n) {
        IntMat m(dim_of(n - 1), dim_of(n));
        for (const auto& [k, blk] : c.diff) {
            const auto& [tau, sigma, deg] = k;
            if (deg != n) continue;
            long ro = t.offset[n - 1].at(tau);
            long co = t.offset[n].at(sigma);
            for (long i = 0; i < blk.rows(); ++i)
                for (long j = 0; j < blk.cols(); ++j) m.at(ro + i, co + j) = blk.at(i, j);
        }
        t.d[n] = std::move(m);
    }
    return t;
}

}  // namespace chox
