#include "chox/metrics.hpp"

#include <algorithm>
#include <queue>
#include <set>

#include "chox/graded.hpp"

namespace chox {

namespace {

Rat dist_sq(const std::vector<Rat>& a, const std::vector<Rat>& b) {
    Rat s(0);
    for (size_t i = 0; i < a.size(); ++i) {
        Rat d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

std::vector<Rat> extend_coords(const Simplex& from, const std::vector<Rat>& c,
                               const Simplex& to) {
    std::vector<Rat> out(to.size(), Rat(0));
    for (size_t i = 0; i < from.size(); ++i) {
        auto pos = std::lower_bound(to.begin(), to.end(), from[i]) - to.begin();
        out[pos] = c[i];
    }
    return out;
}

Rat gram_det(const std::vector<std::vector<Rat>>& pts) {
    // Gram determinant of edge vectors from pts[0]
    size_t k = pts.size() - 1;
    if (k == 0) return Rat(1);
    std::vector<std::vector<Rat>> g(k, std::vector<Rat>(k));
    for (size_t i = 0; i < k; ++i)
        for (size_t j = 0; j < k; ++j) {
            Rat dot(0);
            for (size_t t = 0; t < pts[0].size(); ++t)
                dot += (pts[i + 1][t] - pts[0][t]) * (pts[j + 1][t] - pts[0][t]);
            g[i][j] = dot;
        }
    // fraction-free-ish Gaussian elimination over rationals
    Rat det(1);
    for (size_t c = 0; c < k; ++c) {
        size_t p = c;
        while (p < k && g[p][c] == 0) ++p;
        if (p == k) return Rat(0);
        if (p != c) {
            std::swap(g[p], g[c]);
            det = -det;
        }
        det *= g[c][c];
        for (size_t r = c + 1; r < k; ++r) {
            if (g[r][c] == 0) continue;
            Rat f = g[r][c] / g[c][c];
            for (size_t t = c; t < k; ++t) g[r][t] -= f * g[c][t];
        }
    }
    return det;
}

Interval interval_div(const Interval& a, const Interval& b) {
    if (b.lo <= 0) throw error("interval division by an enclosure touching zero");
    return Interval(a.lo / b.hi, a.hi / b.lo);
}

Length inradius(const std::vector<std::vector<Rat>>& pts) {
    size_t k = pts.size() - 1;
    if (k == 0) return Length::zero();
    Rat g = gram_det(pts);
    if (k == 1) return Length::from_sq(g / 4);
    Interval num = sqrt_enclosure(g);
    Interval den = Interval::point(Rat(0));
    for (size_t skip = 0; skip < pts.size(); ++skip) {
        std::vector<std::vector<Rat>> face;
        for (size_t i = 0; i < pts.size(); ++i)
            if (i != skip) face.push_back(pts[i]);
        den = den + sqrt_enclosure(gram_det(face));
    }
    Length out;
    out.sq.reset();
    out.box = interval_div(num, den);
    return out;
}

}  // namespace

MetricReport metric_report(const SimplicialComplex& x, int level) {
    MetricReport rep;
    rep.level = level;
    if (level == 0) {
        bool any_pos = false;
        Rat mesh(0);
        std::optional<Rat> comesh_sq;
        for (const Simplex& s : x.all_simplices()) {
            long n = static_cast<long>(s.size()) - 1;
            SimplexMetrics m;
            m.diam_sq = n >= 1 ? Rat(2) : Rat(0);
            m.rad = n >= 1 ? Length::from_sq(Rat(1, n * (n + 1))) : Length::zero();
            if (n >= 1) {
                any_pos = true;
                if (m.diam_sq > mesh) mesh = m.diam_sq;
                if (!comesh_sq || *m.rad.sq < *comesh_sq) comesh_sq = *m.rad.sq;
            }
            rep.per_simplex[s] = std::move(m);
        }
        rep.mesh_sq = mesh;
        if (any_pos)
            rep.comesh = Length::from_sq(*comesh_sq);
        else
            rep.comesh_infinite = true;
        return rep;
    }

    SubdivisionData data = choose_r(x, level, RPolicy::MinVertex);
    const SubdivisionLevel& lv = data.top();
    bool any_pos = false;
    Rat mesh(0);
    Length comesh;
    bool comesh_set = false;
    for (const Simplex& t : lv.sd.complex.all_simplices()) {
        SimplexMetrics m;
        m.diam_sq = Rat(0);
        const Simplex& car = lv.carrier0[t.back()];
        std::vector<std::vector<Rat>> pts;
        for (int v : t) pts.push_back(extend_coords(lv.carrier0[v], lv.coords0[v], car));
        for (size_t i = 0; i < pts.size(); ++i)
            for (size_t j = i + 1; j < pts.size(); ++j) {
                Rat d = dist_sq(pts[i], pts[j]);
                if (d > m.diam_sq) m.diam_sq = d;
            }
        m.rad = inradius(pts);
        if (t.size() >= 2) {
            any_pos = true;
            if (m.diam_sq > mesh) mesh = m.diam_sq;
            if (!comesh_set || m.rad.definitely_less(comesh)) {
                comesh = m.rad;
                comesh_set = true;
            }
        }
        rep.per_simplex[t] = std::move(m);
    }
    rep.mesh_sq = mesh;
    if (any_pos)
        rep.comesh = comesh;
    else
        rep.comesh_infinite = true;
    return rep;
}

MeshDecay verify_mesh_decay(const SimplicialComplex& x, int level) {
    if (x.dim() < 1) throw parameter_error("mesh decay needs a positive-dimensional complex");
    MeshDecay out;
    long n = x.dim();
    out.lhs_sq = metric_report(x, level).mesh_sq;
    Rat factor = rat_pow(Rat(n, n + 1), 2 * static_cast<unsigned long>(level));
    out.rhs_sq = factor * metric_report(x, 0).mesh_sq;
    out.holds = out.lhs_sq < out.rhs_sq;
    out.at_equality = out.lhs_sq == out.rhs_sq;
    return out;
}

SqueezeParams squeeze_params(const SimplicialComplex& x, const Rat& alpha) {
    if (!(alpha > 0 && alpha < 1)) throw parameter_error("alpha must lie strictly in (0,1)");
    long n = x.dim();
    if (n < 1) throw parameter_error("squeeze parameters need dimension >= 1");
    MetricReport rep = metric_report(x, 0);
    Rat comesh_sq = *rep.comesh.sq;
    SqueezeParams p;
    p.alpha = alpha;
    p.epsilon_sq = alpha * alpha * comesh_sq;
    // smallest m >= 0 with (n/(n+1))^{2m} <= R^2, R = (1-alpha) comesh / (2 mesh);
    // this is the exact ceiling of log_{n/(n+1)} R
    Rat r_sq = (1 - alpha) * (1 - alpha) * comesh_sq / (4 * rep.mesh_sq);
    Rat base_sq = Rat(n * n, (n + 1) * (n + 1));
    Rat pow(1);
    long m = 0;
    while (pow > r_sq) {
        pow *= base_sq;
        ++m;
        if (m > 100000) throw error("squeeze parameter search did not terminate");
    }
    p.iterations = m + 1;
    return p;
}

BaseMetric::BaseMetric(const SimplicialComplex& x) : base_(x) {
    for (const Simplex& s : x.all_simplices()) {
        ids_[s] = static_cast<long>(names_.size());
        names_.push_back(s);
        carrier_.push_back(s);
        coords_.push_back(std::vector<Rat>(s.size(), Rat(1, static_cast<long>(s.size()))));
    }
    build_edges();
}

BaseMetric::BaseMetric(const SimplicialComplex& x, const SubdivisionData& data) : base_(x) {
    const SubdivisionLevel& lv = data.top();
    for (const Simplex& t : lv.sd.complex.all_simplices()) {
        ids_[t] = static_cast<long>(names_.size());
        names_.push_back(t);
        const Simplex& car = lv.carrier0[t.back()];
        std::vector<Rat> acc(car.size(), Rat(0));
        for (int v : t) {
            auto c = extend_coords(lv.carrier0[v], lv.coords0[v], car);
            for (size_t i = 0; i < acc.size(); ++i) acc[i] += c[i];
        }
        for (Rat& a : acc) a /= Rat(static_cast<long>(t.size()));
        carrier_.push_back(car);
        coords_.push_back(std::move(acc));
    }
    build_edges();
}

void BaseMetric::build_edges() {
    adj_.resize(names_.size());
    for (size_t i = 0; i < names_.size(); ++i)
        for (size_t j = i + 1; j < names_.size(); ++j) {
            Simplex join;
            std::set_union(carrier_[i].begin(), carrier_[i].end(), carrier_[j].begin(),
                           carrier_[j].end(), std::back_inserter(join));
            if (!base_.contains(join)) continue;
            Rat d = dist_sq(extend_coords(carrier_[i], coords_[i], join),
                            extend_coords(carrier_[j], coords_[j], join));
            adj_[i].emplace_back(static_cast<long>(j), d);
            adj_[j].emplace_back(static_cast<long>(i), d);
        }
}

long BaseMetric::node(const Simplex& s) const {
    auto it = ids_.find(s);
    if (it == ids_.end()) throw unknown_simplex_error("no metric node for " + simplex_string(s));
    return it->second;
}

const std::vector<Length>& BaseMetric::dijkstra(long src) const {
    auto it = cache_.find(src);
    if (it != cache_.end()) return it->second;
    size_t n = names_.size();
    std::vector<Length> dist(n);
    std::vector<bool> have(n, false), done(n, false);
    dist[src] = Length::zero();
    have[src] = true;
    for (size_t round = 0; round < n; ++round) {
        long best = -1;
        for (size_t i = 0; i < n; ++i) {
            if (!have[i] || done[i]) continue;
            if (best < 0 || dist[i].box.hi < dist[best].box.hi) best = static_cast<long>(i);
        }
        if (best < 0) break;
        done[best] = true;
        for (const auto& [to, wsq] : adj_[best]) {
            Length cand = dist[best] + Length::from_sq(wsq);
            if (!have[to] || cand.box.hi < dist[to].box.hi) {
                dist[to] = cand;
                have[to] = true;
            }
        }
    }
    return cache_.emplace(src, std::move(dist)).first->second;
}

Length BaseMetric::distance(const Simplex& a, const Simplex& b) const {
    if (a == b) return Length::zero();
    return dijkstra(node(a))[node(b)];
}

Length morphism_bound(const GradedChainMap& f, const BaseMetric& metric) {
    Length sup = Length::zero();
    for (const auto& [key, block] : f.blocks) {
        if (block.is_zero()) continue;
        const auto& [tau, sigma, n] = key;
        (void)n;
        sup = sup.max(metric.distance(tau, sigma));
    }
    return sup;
}

std::vector<Simplex> epsilon_neighbourhood(const SubdividedComplex& s,
                                           const std::vector<Simplex>& target,
                                           const Rat& eps_sq, const BaseMetric& metric) {
    std::set<int> target_vertices;
    for (const Simplex& t : target)
        for (int v : t) target_vertices.insert(v);
    std::set<Simplex, SimplexOrder> out;
    for (const Simplex& t : s.complex.all_simplices()) {
        bool in = false;
        for (int v : t) {
            for (int w : target_vertices) {
                Length d = metric.distance(Simplex{v}, Simplex{w});
                if (d.leq_sqrt(eps_sq)) {
                    in = true;
                    break;
                }
            }
            if (in) break;
        }
        if (in)
            for (Simplex& f : faces_of(t)) out.insert(std::move(f));
    }
    return std::vector<Simplex>(out.begin(), out.end());
}

}  // namespace chox
