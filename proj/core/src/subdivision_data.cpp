#include "chox/subdivision_data.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <set>

namespace chox {

namespace {

int sort_sign(std::vector<int> seq) {
    // sign of the permutation sorting seq (distinct entries)
    int sign = 1;
    for (size_t i = 0; i < seq.size(); ++i)
        for (size_t j = i + 1; j < seq.size(); ++j)
            if (seq[i] > seq[j]) sign = -sign;
    return sign;
}

Simplex span_of_images(const Simplex& sd_simplex, const std::vector<int>& r) {
    std::set<int> img;
    for (int v : sd_simplex) img.insert(r[v]);
    return Simplex(img.begin(), img.end());
}

bool images_distinct(const Simplex& sd_simplex, const std::vector<int>& r) {
    std::set<int> img;
    for (int v : sd_simplex) img.insert(r[v]);
    return img.size() == sd_simplex.size();
}

// the vertex of f_t not in f_{t-1}
int new_vertex(const Simplex& prev, const Simplex& cur) {
    for (int v : cur)
        if (!std::binary_search(prev.begin(), prev.end(), v)) return v;
    throw error("flag step without a new vertex");
}

struct LevelBuilder {
    const SimplicialComplex& base;
    SubdivisionLevel lv;
    bool retract;
    // depth of a base vertex / point inside the original complex, used by the
    // boundary-retracting policy (larger = deeper inside its carrier)
    const std::vector<std::vector<Rat>>* prev_coords0 = nullptr;
    const std::vector<Simplex>* prev_carrier0 = nullptr;

    explicit LevelBuilder(const SimplicialComplex& b, bool retract_) : base(b), retract(retract_) {}

    int bary(const Simplex& s) const { return lv.sd.barycentre_id.at(s); }

    // min barycentric coordinate of a base vertex inside car, zero on its boundary
    Rat depth_of_vertex(int base_vertex, const Simplex& car) const {
        if (!prev_coords0) return Rat(0);
        const Simplex& vc = (*prev_carrier0)[base_vertex];
        if (vc != car) return Rat(0);
        const auto& c = (*prev_coords0)[base_vertex];
        Rat m = c.empty() ? Rat(0) : c[0];
        for (const Rat& t : c)
            if (t < m) m = t;
        return m;
    }

    Simplex carrier_here(const Simplex& base_simplex) const {
        if (!prev_carrier0) return base_simplex;
        return (*prev_carrier0)[base_simplex.back()];
    }

    void choose_vertices_min() {
        lv.r.resize(lv.sd.vertex_base.size());
        for (size_t w = 0; w < lv.sd.vertex_base.size(); ++w) lv.r[w] = lv.sd.vertex_base[w].front();
        for (const Simplex& s : base.all_simplices()) note_distinguished(s);
    }

    void note_distinguished(const Simplex& s) {
        // descend from s, removing the r-image at each step
        std::vector<int> flag_ids;
        Simplex cur = s;
        while (true) {
            int w = bary(cur);
            flag_ids.push_back(w);
            if (cur.size() == 1) break;
            int drop = lv.r[w];
            Simplex next;
            for (int v : cur)
                if (v != drop) next.push_back(v);
            cur = next;
        }
        Simplex flag(flag_ids.rbegin(), flag_ids.rend());
        std::sort(flag.begin(), flag.end());
        lv.distinguished[s] = flag;
    }

    void choose_vertices_retracting() {
        size_t nv = lv.sd.vertex_base.size();
        lv.r.assign(nv, -1);
        // fix distinguished flags by increasing dimension, deepest first
        for (int d = 0; d <= base.dim(); ++d) {
            for (const Simplex& s : base.simplices(d)) {
                const Simplex car = carrier_here(s);
                std::vector<Simplex> best;
                Rat best_depth(-1);
                std::vector<Simplex> chain{s};
                collect_flags(chain, [&](const std::vector<Simplex>& down_flag) {
                    // down_flag runs from s down to a vertex; check compatibility
                    Rat depth(0);
                    bool ok = true;
                    for (size_t t = 0; t + 1 < down_flag.size(); ++t) {
                        int w = bary(down_flag[t]);
                        int nv_t = new_vertex(down_flag[t + 1], down_flag[t]);
                        if (lv.r[w] >= 0 && lv.r[w] != nv_t) {
                            ok = false;
                            break;
                        }
                        depth += depth_of_vertex(nv_t, car);
                    }
                    if (!ok) return;
                    int w0 = bary(down_flag.back());
                    int v0 = down_flag.back().front();
                    if (lv.r[w0] >= 0 && lv.r[w0] != v0) return;
                    if (best.empty() || depth > best_depth) {
                        best = down_flag;
                        best_depth = depth;
                    }
                });
                if (best.empty()) throw error("no compatible distinguished flag");
                for (size_t t = 0; t + 1 < best.size(); ++t)
                    lv.r[bary(best[t])] = new_vertex(best[t + 1], best[t]);
                lv.r[bary(best.back())] = best.back().front();
                Simplex flag;
                for (const Simplex& f : best) flag.push_back(bary(f));
                std::sort(flag.begin(), flag.end());
                lv.distinguished[s] = flag;
            }
        }
        // remaining barycentres retract toward the boundary of their carrier
        for (size_t w = 0; w < nv; ++w) {
            if (lv.r[w] >= 0) continue;
            const Simplex& s = lv.sd.vertex_base[w];
            const Simplex car = carrier_here(s);
            int pick = s.front();
            Rat pick_depth = depth_of_vertex(pick, car);
            for (int v : s) {
                Rat dep = depth_of_vertex(v, car);
                if (dep < pick_depth) {
                    pick = v;
                    pick_depth = dep;
                }
            }
            lv.r[w] = pick;
        }
    }

    template <typename F>
    void collect_flags(std::vector<Simplex>& chain, F&& visit) {
        if (chain.back().size() == 1) {
            visit(chain);
            return;
        }
        for (const Simplex& f : facets_of(chain.back())) {
            chain.push_back(f);
            collect_flags(chain, visit);
            chain.pop_back();
        }
    }

    void compute_regions() {
        for (const Simplex& t : lv.sd.complex.all_simplices())
            lv.region[t] = span_of_images(t, lv.r);
    }

    void compute_forest() {
        for (size_t w = 0; w < lv.sd.vertex_base.size(); ++w) {
            if (lv.sd.vertex_base[w].size() == 1) continue;
            int target = bary(Simplex{lv.r[w]});
            lv.forest.emplace_back(target, static_cast<int>(w));
        }
    }

    // the sd vertex of the distinguished flag of x whose new vertex is v
    int gamma_vertex(const Simplex& x, int v) const {
        const Simplex& flag = lv.distinguished.at(x);
        Simplex prev;
        for (int w : flag) {
            const Simplex& elem = lv.sd.vertex_base[w];
            int nw = prev.empty() ? elem.front() : new_vertex(prev, elem);
            if (nw == v) return w;
            prev = elem;
        }
        throw error("vertex not reached by distinguished flag");
    }

    void compute_cells() {
        std::map<Simplex, std::vector<Simplex>, SimplexOrder> by_region;
        for (const auto& [t, reg] : lv.region) by_region[reg].push_back(t);

        for (const Simplex& tau : base.all_simplices()) {
            std::vector<Simplex> over;  // simplices >= tau
            for (const Simplex& s : base.all_simplices())
                if (is_face(tau, s)) over.push_back(s);
            std::vector<std::vector<Simplex>> chains;
            std::vector<Simplex> cur;
            enumerate_chains(over, 0, cur, chains);
            auto members_it = by_region.find(tau);
            const std::vector<Simplex>* members =
                members_it == by_region.end() ? nullptr : &members_it->second;
            for (const auto& chain : chains) {
                HomotopyCell cell;
                cell.face = tau;
                cell.chain = chain;
                size_t want_dim = tau.size() + chain.size() - 1;
                std::set<int> grid;
                std::vector<std::set<int>> grid_by_level;
                for (const Simplex& x : chain) {
                    std::set<int> g;
                    for (int v : tau) g.insert(gamma_vertex(x, v));
                    grid.insert(g.begin(), g.end());
                    grid_by_level.push_back(std::move(g));
                }
                if (members)
                    for (const Simplex& t : *members) {
                        if (t.size() != want_dim) continue;
                        bool in_grid = true;
                        for (int v : t)
                            if (!grid.count(v)) {
                                in_grid = false;
                                break;
                            }
                        if (!in_grid) continue;
                        bool touches_all = true;
                        for (const auto& g : grid_by_level) {
                            bool touch = false;
                            for (int v : t)
                                if (g.count(v)) {
                                    touch = true;
                                    break;
                                }
                            if (!touch) {
                                touches_all = false;
                                break;
                            }
                        }
                        if (touches_all) cell.tops.push_back(t);
                    }
                if (!cell.tops.empty()) {
                    size_t idx = lv.cells.size();
                    for (const Simplex& t : cell.tops) lv.cells_of_top[t].push_back(idx);
                    lv.cells.push_back(std::move(cell));
                }
            }
        }
    }

    static void enumerate_chains(const std::vector<Simplex>& over, size_t start,
                                 std::vector<Simplex>& cur,
                                 std::vector<std::vector<Simplex>>& out) {
        for (size_t i = start; i < over.size(); ++i) {
            if (!cur.empty() && !(is_face(cur.back(), over[i]) && cur.back() != over[i])) continue;
            cur.push_back(over[i]);
            out.push_back(cur);
            enumerate_chains(over, i + 1, cur, out);
            cur.pop_back();
        }
    }

    // Level-zero simplices carry the sign of their r-image permutation; that
    // is the only per-simplex orientation the machinery needs.
    void compute_orientation() {
        for (const Simplex& t : lv.sd.complex.all_simplices()) {
            if (images_distinct(t, lv.r)) {
                std::vector<int> images;
                for (int v : t) images.push_back(lv.r[v]);
                lv.orientation[t] = sort_sign(images);
            } else {
                lv.orientation[t] = 1;
            }
        }
    }

    // Signs of the cross-region block placements, one per pair of simplices
    // with the same offset above their regions. Anchored at level zero by the
    // r-permutation signs and propagated through two constraint families:
    // the matching of the in-region boundary across a placement, and the
    // transitivity of placements along compositions.
    void compute_pair_signs() {
        auto lvl = [&](const Simplex& t) { return lv.level_in_region(t); };
        std::map<std::pair<Simplex, Simplex>, int>& q = lv.pair_sign;
        std::vector<std::pair<Simplex, Simplex>> pairs;
        for (const Simplex& t : lv.sd.complex.all_simplices()) {
            int k = lvl(t);
            for (const Simplex& f : faces_of(t)) {
                if (lvl(f) != k) continue;
                pairs.emplace_back(f, t);
                if (f == t) {
                    q[{f, t}] = 1;
                } else if (k == 0) {
                    q[{f, t}] = lv.orientation.at(f) * lv.orientation.at(t);
                }
            }
        }

        struct MatchCon {  // sum inc(lower, mid) q(mid, upper) = sum q(lower, mid') inc(mid', upper)
            Simplex lower, upper;
            std::vector<std::pair<Simplex, int>> lhs;  // (mid, inc)
            std::vector<std::pair<Simplex, int>> rhs;  // (mid', inc)
        };
        std::vector<MatchCon> matches;
        struct TransCon {  // sum q(lower, mid) q(mid, upper) = q(lower, upper)
            Simplex lower, upper;
            std::vector<Simplex> mids;
        };
        std::vector<TransCon> trans;

        for (const Simplex& upper : lv.sd.complex.all_simplices()) {
            const Simplex& sig = lv.region_of(upper);
            int k = lvl(upper);
            for (const Simplex& lower : faces_of(upper)) {
                if (lower == upper) continue;
                const Simplex& tau = lv.region_of(lower);
                if (tau == sig) continue;
                if (lvl(lower) == k - 1) {
                    MatchCon con;
                    con.lower = lower;
                    con.upper = upper;
                    for (const Simplex& mid : faces_of(upper)) {
                        if (mid.size() != lower.size() + 1 || !is_face(lower, mid)) continue;
                        if (!(lv.region_of(mid) == tau) || lvl(mid) != k) continue;
                        con.lhs.emplace_back(mid, incidence(lower, mid));
                    }
                    for (const Simplex& mid : facets_of(upper)) {
                        if (!is_face(lower, mid)) continue;
                        if (!(lv.region_of(mid) == sig)) continue;
                        con.rhs.emplace_back(mid, incidence(mid, upper));
                    }
                    if (!con.lhs.empty() || !con.rhs.empty()) matches.push_back(std::move(con));
                } else if (lvl(lower) == k) {
                    // middles one region at a time
                    std::map<Simplex, std::vector<Simplex>, SimplexOrder> mids_by_region;
                    for (const Simplex& mid : faces_of(upper)) {
                        if (mid == upper || mid == lower) continue;
                        if (!is_face(lower, mid) || lvl(mid) != k) continue;
                        const Simplex& ups = lv.region_of(mid);
                        if (ups == tau || ups == sig) continue;
                        mids_by_region[ups].push_back(mid);
                    }
                    for (auto& [ups, mids] : mids_by_region) {
                        (void)ups;
                        TransCon con;
                        con.lower = lower;
                        con.upper = upper;
                        con.mids = std::move(mids);
                        trans.push_back(std::move(con));
                    }
                }
            }
        }

        bool progress = true;
        while (progress) {
            progress = false;
            for (const MatchCon& con : matches) {
                int known = 0, unknowns = 0, coef = 0;
                std::pair<Simplex, Simplex> slot;
                bool lhs_side = true;
                for (const auto& [mid, inc] : con.lhs) {
                    auto key = std::make_pair(mid, con.upper);
                    auto it = q.find(key);
                    if (it == q.end()) {
                        ++unknowns;
                        slot = key;
                        coef = inc;
                        lhs_side = true;
                    } else {
                        known += inc * it->second;
                    }
                }
                for (const auto& [mid, inc] : con.rhs) {
                    auto key = std::make_pair(con.lower, mid);
                    auto it = q.find(key);
                    if (it == q.end()) {
                        ++unknowns;
                        slot = key;
                        coef = inc;
                        lhs_side = false;
                    } else {
                        known -= inc * it->second;
                    }
                }
                if (unknowns != 1) continue;
                int need = lhs_side ? -known : known;
                if (need == coef || need == -coef) {
                    q[slot] = need / coef;
                    progress = true;
                }
            }
            for (const TransCon& con : trans) {
                auto direct = std::make_pair(con.lower, con.upper);
                if (con.mids.size() == 1) {
                    auto a = std::make_pair(con.lower, con.mids[0]);
                    auto b = std::make_pair(con.mids[0], con.upper);
                    int have = q.count(a) + q.count(b) + q.count(direct);
                    if (have != 2) continue;
                    if (!q.count(direct)) {
                        q[direct] = q[a] * q[b];
                        progress = true;
                    } else if (!q.count(a)) {
                        q[a] = q[direct] * q[b];
                        progress = true;
                    } else {
                        q[b] = q[direct] * q[a];
                        progress = true;
                    }
                }
            }
        }
        for (const auto& p : pairs)
            if (!q.count(p)) q[p] = 1;

        lv.signs_consistent = true;
        for (const MatchCon& con : matches) {
            int l = 0, r = 0;
            for (const auto& [mid, inc] : con.lhs) l += inc * q.at({mid, con.upper});
            for (const auto& [mid, inc] : con.rhs) r += inc * q.at({con.lower, mid});
            if (l != r) lv.signs_consistent = false;
        }
        for (const TransCon& con : trans) {
            int s = 0;
            for (const Simplex& mid : con.mids)
                s += q.at({con.lower, mid}) * q.at({mid, con.upper});
            if (s != q.at({con.lower, con.upper})) lv.signs_consistent = false;
        }
    }

    void compute_homotopy() {
        // canonical forest homotopy: solved degreewise with supports kept on
        // r-degenerate simplices inside the carrier of the input
        auto sr_of = [&](const Simplex& t) -> SdChain {
            SdChain out;
            if (!images_distinct(t, lv.r)) return out;
            std::vector<int> images;
            for (int v : t) images.push_back(lv.r[v]);
            int w = sort_sign(images);
            std::sort(images.begin(), images.end());
            SdChain s = lv.s_chain(images);
            for (auto& [k, v] : s) out[k] = v * w;
            return out;
        };
        std::map<Simplex, SdChain>& hp = lv.homotopy_p;
        lv.homotopy_ok = true;
        for (const Simplex& t : lv.sd.complex.all_simplices()) {
            SdChain target;
            target[t] += 1;
            for (auto& [k, v] : sr_of(t)) target[k] -= v;
            for (const Simplex& f : facets_of(t)) {
                int inc = incidence(f, t);
                auto it = hp.find(f);
                if (it == hp.end()) continue;
                for (const auto& [k, v] : it->second) target[k] -= Int(inc) * v;
            }
            std::erase_if(target, [](const auto& kv) { return kv.second == 0; });
            if (target.empty()) {
                hp[t] = {};
                continue;
            }
            // candidates: r-degenerate simplices of one higher dimension whose
            // flags stay inside the carrier of t
            const Simplex& car = lv.sd.vertex_base[t.back()];
            std::vector<Simplex> cand;
            for (const Simplex& u : lv.sd.complex.simplices(static_cast<int>(t.size()))) {
                if (images_distinct(u, lv.r)) continue;
                bool inside = true;
                for (int v : u)
                    if (!is_face(lv.sd.vertex_base[v], car)) {
                        inside = false;
                        break;
                    }
                if (inside) cand.push_back(u);
            }
            std::map<Simplex, long, SimplexOrder> row_of;
            std::vector<Simplex> rows;
            auto row_id = [&](const Simplex& s) {
                auto it = row_of.find(s);
                if (it != row_of.end()) return it->second;
                long id = static_cast<long>(rows.size());
                row_of[s] = id;
                rows.push_back(s);
                return id;
            };
            for (const auto& [k, v] : target) {
                (void)v;
                row_id(k);
            }
            std::vector<std::map<long, Int>> cols(cand.size());
            for (size_t j = 0; j < cand.size(); ++j)
                for (const Simplex& f : facets_of(cand[j]))
                    if (lv.sd.complex.contains(f)) cols[j][row_id(f)] = incidence(f, cand[j]);
            IntMat m(static_cast<long>(rows.size()), static_cast<long>(cand.size()));
            for (size_t j = 0; j < cand.size(); ++j)
                for (const auto& [i, v] : cols[j]) m.at(i, static_cast<long>(j)) = v;
            std::vector<Int> b(rows.size(), Int(0));
            for (const auto& [k, v] : target) b[row_of.at(k)] = v;
            auto sol = solve(m, b);
            if (!sol) {
                lv.homotopy_ok = false;
                hp[t] = {};
                continue;
            }
            SdChain fill;
            for (size_t j = 0; j < cand.size(); ++j)
                if ((*sol)[j] != 0) fill[cand[j]] = (*sol)[j];
            hp[t] = std::move(fill);
        }
    }


    void compute_coords(const SubdivisionLevel* prev, const SimplicialComplex& original) {
        size_t nv = lv.sd.vertex_base.size();
        lv.carrier0.resize(nv);
        lv.coords0.resize(nv);
        for (size_t w = 0; w < nv; ++w) {
            const Simplex& b = lv.sd.vertex_base[w];
            if (!prev) {
                // barycentre of an original simplex
                lv.carrier0[w] = b;
                lv.coords0[w].assign(b.size(), Rat(1, b.size()));
            } else {
                // carrier of the previous-level simplex b = carrier of its last vertex
                const Simplex& car = prev->carrier0[b.back()];
                std::vector<Rat> acc(car.size(), Rat(0));
                for (int pv : b) {
                    const Simplex& pc = prev->carrier0[pv];
                    const auto& cc = prev->coords0[pv];
                    for (size_t i = 0; i < pc.size(); ++i) {
                        auto pos = std::lower_bound(car.begin(), car.end(), pc[i]) - car.begin();
                        acc[pos] += cc[i];
                    }
                }
                for (Rat& v : acc) v /= Rat(static_cast<long>(b.size()));
                lv.carrier0[w] = car;
                lv.coords0[w] = std::move(acc);
            }
        }
        (void)original;
    }
};

}  // namespace

const Simplex& SubdivisionLevel::region_of(const Simplex& sd_simplex) const {
    auto it = region.find(sd_simplex);
    if (it == region.end())
        throw unknown_simplex_error("no region for " + simplex_string(sd_simplex));
    return it->second;
}

int SubdivisionLevel::block_sign(const Simplex& tau, const Simplex& sigma) const {
    auto it = pair_sign.find({tau, sigma});
    if (it == pair_sign.end())
        throw unknown_simplex_error("no placement sign for " + simplex_string(tau) + " <= " +
                                    simplex_string(sigma));
    return it->second;
}

SdChain SubdivisionLevel::s_chain(const Simplex& base_simplex) const {
    SdChain out;
    std::function<void(std::vector<int>&)> grow = [&](std::vector<int>& order) {
        if (order.size() == base_simplex.size()) {
            Simplex flag_ids;
            Simplex acc;
            for (int v : order) {
                acc.push_back(v);
                std::sort(acc.begin(), acc.end());
                flag_ids.push_back(sd.barycentre_id.at(acc));
            }
            std::sort(flag_ids.begin(), flag_ids.end());
            int sign = 1;
            for (size_t i = 0; i < order.size(); ++i)
                for (size_t j = i + 1; j < order.size(); ++j)
                    if (order[i] > order[j]) sign = -sign;
            out[flag_ids] += sign;
            return;
        }
        for (int v : base_simplex) {
            if (std::find(order.begin(), order.end(), v) != order.end()) continue;
            order.push_back(v);
            grow(order);
            order.pop_back();
        }
    };
    std::vector<int> order;
    grow(order);
    return out;
}

SdChain SubdivisionLevel::r_chain(const Simplex& sd_simplex) const {
    SdChain out;
    std::set<int> img;
    for (int v : sd_simplex) img.insert(r[v]);
    if (img.size() != sd_simplex.size()) return out;
    Simplex image(img.begin(), img.end());
    out[image] = orientation.at(sd_simplex);
    return out;
}

const SdChain& SubdivisionLevel::p_chain(const Simplex& sd_simplex) const {
    static const SdChain none;
    auto it = homotopy_p.find(sd_simplex);
    return it == homotopy_p.end() ? none : it->second;
}

SubdivisionData choose_r(const SimplicialComplex& x, int levels, RPolicy policy) {
    if (levels < 1) throw parameter_error("subdivision level must be at least 1");
    SubdivisionData data;
    data.base = x;
    data.policy = policy;
    const SimplicialComplex* cur = &x;
    for (int j = 0; j < levels; ++j) {
        LevelBuilder b(*cur, policy == RPolicy::BoundaryRetracting);
        b.lv.sd = barycentric_subdivide(*cur);
        b.lv.sd.level = j + 1;
        if (!data.levels.empty()) {
            b.prev_coords0 = &data.levels.back().coords0;
            b.prev_carrier0 = &data.levels.back().carrier0;
        }
        b.compute_coords(data.levels.empty() ? nullptr : &data.levels.back(), x);
        if (policy == RPolicy::BoundaryRetracting)
            b.choose_vertices_retracting();
        else
            b.choose_vertices_min();
        b.compute_regions();
        b.compute_forest();
        b.compute_cells();
        b.compute_orientation();
        b.compute_pair_signs();
        b.compute_homotopy();
        data.levels.push_back(std::move(b.lv));
        cur = &data.levels.back().sd.complex;
    }
    return data;
}

std::vector<int> SubdivisionData::composite_r() const {
    std::vector<int> r = levels.back().r;
    for (int j = level_count() - 2; j >= 0; --j)
        for (int& v : r) v = levels[j].r[v];
    return r;
}

std::vector<std::pair<int, int>> SubdivisionData::composite_forest() const {
    // push each level's forest up to the finest subdivision
    std::vector<std::pair<int, int>> out;
    for (int j = 0; j < level_count(); ++j) {
        std::vector<std::pair<int, int>> edges = levels[j].forest;
        for (int k = j + 1; k < level_count(); ++k) {
            std::vector<std::pair<int, int>> next;
            const auto& ids = levels[k].sd.barycentre_id;
            for (auto [u, v] : edges) {
                Simplex e{u, v};
                std::sort(e.begin(), e.end());
                int bu = ids.at(Simplex{u});
                int bv = ids.at(Simplex{v});
                int m = ids.at(e);
                next.emplace_back(bu, m);
                next.emplace_back(m, bv);
            }
            edges = std::move(next);
        }
        out.insert(out.end(), edges.begin(), edges.end());
    }
    return out;
}

bool regions_partition(const SubdivisionLevel& lv) {
    size_t counted = 0;
    std::map<Simplex, int, SimplexOrder> tops_on;
    for (const Simplex& t : lv.sd.complex.all_simplices()) {
        auto it = lv.region.find(t);
        if (it == lv.region.end()) return false;
        ++counted;
        if (t.size() == it->second.size()) ++tops_on[it->second];
    }
    if (counted != lv.sd.complex.simplex_count()) return false;
    // exactly one full-dimensional simplex of Sd sigma maps onto sigma:
    // the distinguished flag
    for (const auto& [s, flag] : lv.distinguished) {
        (void)flag;
        std::size_t full = 0;
        for (const Simplex& t : lv.sd.complex.all_simplices()) {
            if (t.size() != s.size()) continue;
            if (lv.region.at(t) != s) continue;
            // t must lie in Sd s: every flag element a face of s
            bool inside = true;
            for (int v : t)
                if (!is_face(lv.sd.vertex_base[v], s)) {
                    inside = false;
                    break;
                }
            if (inside) ++full;
        }
        if (full != 1) return false;
    }
    return true;
}

bool forest_spans(const SubdivisionLevel& lv) {
    size_t nv = lv.sd.vertex_base.size();
    std::vector<int> parent(nv);
    for (size_t i = 0; i < nv; ++i) parent[i] = static_cast<int>(i);
    std::function<int(int)> find = [&](int a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };
    for (auto [u, v] : lv.forest) {
        if (lv.r[u] != lv.r[v]) return false;  // trees stay inside one fibre
        int ru = find(u), rv = find(v);
        if (ru == rv) return false;  // cycle
        parent[ru] = rv;
    }
    // spanning: each vertex connects to the barycentre of its r-image vertex
    for (size_t w = 0; w < nv; ++w) {
        Simplex root{lv.r[w]};
        int root_id = lv.sd.barycentre_id.at(root);
        if (find(static_cast<int>(w)) != find(root_id)) return false;
    }
    return true;
}

}  // namespace chox
