#include "chox/duality.hpp"

#include <algorithm>
#include <queue>
#include <set>

namespace chox {

std::string FundamentalClassFailure::describe() const {
    switch (reason) {
        case Reason::NotPure: return "non-pseudomanifold: " + simplex_string(offending) +
                                     " is not a face of a top simplex";
        case Reason::NonPseudomanifold:
            return "non-pseudomanifold: " + simplex_string(offending) +
                   " does not lie in exactly two top simplices";
        default: return "non-orientable: no consistent signs around " + simplex_string(offending);
    }
}

FundamentalClassResult fundamental_class(const SimplicialComplex& x) {
    int n = x.dim();
    const auto& tops = x.simplices(n);
    for (const Simplex& s : x.all_simplices()) {
        bool covered = false;
        for (const Simplex& t : tops)
            if (is_face(s, t)) {
                covered = true;
                break;
            }
        if (!covered)
            return FundamentalClassFailure{FundamentalClassFailure::Reason::NotPure, s};
    }
    std::map<Simplex, std::vector<Simplex>, SimplexOrder> rim;
    for (const Simplex& t : tops)
        for (const Simplex& f : facets_of(t)) rim[f].push_back(t);
    for (const auto& [f, owners] : rim)
        if (owners.size() != 2)
            return FundamentalClassFailure{FundamentalClassFailure::Reason::NonPseudomanifold, f};

    FundamentalClass fc;
    fc.dimension = n;
    std::queue<Simplex> work;
    for (const Simplex& t : tops) {
        if (fc.coefficients.count(t)) continue;
        fc.coefficients[t] = 1;
        work.push(t);
        while (!work.empty()) {
            Simplex cur = work.front();
            work.pop();
            int c_cur = fc.coefficients.at(cur);
            for (const Simplex& f : facets_of(cur)) {
                for (const Simplex& other : rim.at(f)) {
                    if (other == cur) continue;
                    int need = -c_cur * incidence(f, cur) * incidence(f, other);
                    auto it = fc.coefficients.find(other);
                    if (it == fc.coefficients.end()) {
                        fc.coefficients[other] = need;
                        work.push(other);
                    } else if (it->second != need) {
                        return FundamentalClassFailure{
                            FundamentalClassFailure::Reason::NonOrientable, f};
                    }
                }
            }
        }
    }
    // the signed sum must be a cycle
    if (n >= 1) {
        IntMat b = x.boundary_matrix(n);
        std::vector<Int> v(tops.size(), Int(0));
        for (size_t j = 0; j < tops.size(); ++j) v[j] = fc.coefficients.at(tops[j]);
        std::vector<Int> img = mat_apply(b, v);
        for (const Int& e : img)
            if (e != 0) throw error("fundamental class candidate is not a cycle");
    }
    return fc;
}

Chain cap_product(const Cochain& xi, int p, const Chain& c, int n, const SimplicialComplex& x) {
    if (p < 0 || n < p) throw parameter_error("cap product degrees out of range");
    Chain out;
    for (const auto& [s, coef] : c) {
        if (static_cast<int>(s.size()) - 1 != n)
            throw parameter_error("chain entry of wrong dimension");
        Simplex front(s.begin(), s.begin() + p + 1);
        auto it = xi.find(front);
        if (it == xi.end() || it->second == 0) continue;
        Simplex back(s.begin() + p, s.end());
        out[back] += coef * it->second;
    }
    std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
    (void)x;
    return out;
}

Chain boundary_chain(const Chain& c, int n, const SimplicialComplex& x) {
    Chain out;
    (void)x;
    (void)n;
    for (const auto& [s, coef] : c) {
        const auto facets = facets_of(s);
        for (const Simplex& f : facets) out[f] += coef * incidence(f, s);
    }
    std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
    return out;
}

Cochain coboundary_cochain(const Cochain& xi, int p, const SimplicialComplex& x) {
    Cochain out;
    for (const Simplex& t : x.simplices(p + 1))
        for (const Simplex& f : facets_of(t)) {
            auto it = xi.find(f);
            if (it != xi.end() && it->second != 0) out[t] += incidence(f, t) * it->second;
        }
    std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
    return out;
}

DualityMapParts duality_map(const SimplicialComplex& x, const FundamentalClass& fc) {
    const int n = fc.dimension;
    DualityMapParts parts;
    parts.source = std::make_shared<GradedChainComplex>();
    parts.source->base = x;
    parts.source->variant = Variant::Full;
    for (const Simplex& s : x.all_simplices())
        parts.source->set_rank(s, n - (static_cast<int>(s.size()) - 1), 1);
    for (const Simplex& s : x.all_simplices()) {
        int p = static_cast<int>(s.size()) - 1;
        int m = n - p;
        // reindexed coboundary, signed so that capping with a cycle is a chain map
        for (const Simplex& t : x.cofacets(s)) {
            IntMat blk(1, 1);
            blk.at(0, 0) = Int(((p + 1) % 2 ? -1 : 1) * incidence(s, t));
            parts.source->set_block(t, s, m, std::move(blk));
        }
    }
    parts.target = std::make_shared<GradedChainComplex>(simplicial_chain_complex(x));
    parts.cap.source = parts.source.get();
    parts.cap.target = parts.target.get();
    for (const auto& [top, coef] : fc.coefficients) {
        for (int p = 0; p <= n; ++p) {
            Simplex front(top.begin(), top.begin() + p + 1);
            Simplex back(top.begin() + p, top.end());
            IntMat blk = parts.cap.block(back, front, n - p);
            blk.at(0, 0) += coef;
            parts.cap.set_block(back, front, n - p, std::move(blk));
        }
    }
    return parts;
}

DualityReport pd_check(const SimplicialComplex& x) {
    DualityReport rep;
    FundamentalClassResult fr = fundamental_class(x);
    if (std::holds_alternative<FundamentalClassFailure>(fr)) {
        rep.fclass_failure = std::get<FundamentalClassFailure>(fr);
        return rep;
    }
    rep.fundamental_class_exists = true;
    rep.fclass = std::get<FundamentalClass>(fr);
    DualityMapParts parts = duality_map(x, *rep.fclass);
    rep.keep.push_back(parts.source);
    rep.keep.push_back(parts.target);
    ConeComplex cone = mapping_cone(parts.cap);
    auto cone_keep = std::make_shared<GradedChainComplex>(std::move(cone.cone));
    rep.keep.push_back(cone_keep);
    rep.cone_report = total_homology(*cone_keep);
    rep.is_pd_space = rep.cone_report.acyclic;
    rep.duality_map = parts.cap;
    if (rep.is_pd_space) {
        BaseMetric metric(x);
        GradedHomotopy q = acyclic_contraction(*cone_keep, &metric);
        rep.cone_contraction = std::move(q);
    }
    return rep;
}

ControlledBound controlled_pd_bound(const SimplicialComplex& x, int level) {
    ControlledBound out;
    out.level = level;
    SimplicialComplex fine = x;
    std::optional<SubdivisionData> data;
    if (level > 0) {
        data = choose_r(x, level, RPolicy::MinVertex);
        fine = data->top().sd.complex;
    }
    FundamentalClassResult fr = fundamental_class(fine);
    if (std::holds_alternative<FundamentalClassFailure>(fr))
        throw error("controlled duality bound requested for a space without fundamental class");
    DualityMapParts parts = duality_map(fine, std::get<FundamentalClass>(fr));
    ConeComplex cone = mapping_cone(parts.cap);
    TotalHomologyReport hom = total_homology(cone.cone);
    if (!hom.acyclic) throw error("controlled duality bound requested for a non-PD space");
    BaseMetric metric = level > 0 ? BaseMetric(x, *data) : BaseMetric(x);
    GradedHomotopy q = acyclic_contraction(cone.cone, &metric);
    Length bound = morphism_bound(parts.cap, metric);
    for (const auto& [k, m] : q.blocks) {
        (void)m;
        bound = bound.max(metric.distance(std::get<0>(k), std::get<1>(k)));
    }
    out.bound = bound;
    return out;
}

namespace {

std::vector<long> reduced_betti(const SimplicialComplex& l, std::vector<Int>* torsion) {
    std::vector<long> betti;
    int d = l.dim();
    for (int j = 0; j <= d; ++j) {
        IntMat dj = l.boundary_matrix(j);
        IntMat dj1 = l.boundary_matrix(j + 1);
        HomologySummary h = homology(dj, dj1);
        long b = h.betti;
        if (j == 0) b -= 1;  // reduced
        betti.push_back(b);
        if (torsion)
            for (const Int& t : h.torsion) torsion->push_back(t);
    }
    return betti;
}

}  // namespace

HomologyManifoldReport is_homology_manifold(const SimplicialComplex& x) {
    HomologyManifoldReport rep;
    int n = x.dim();
    rep.pure = true;
    for (const Simplex& s : x.all_simplices()) {
        bool covered = false;
        for (const Simplex& t : x.simplices(n))
            if (is_face(s, t)) {
                covered = true;
                break;
            }
        if (!covered) rep.pure = false;
    }
    bool all_good = rep.pure;
    std::vector<LinkDiagnostic> good;
    for (const Simplex& s : x.all_simplices()) {
        LinkDiagnostic diag;
        diag.simplex = s;
        int k = n - (static_cast<int>(s.size()) - 1) - 1;  // expected sphere dimension
        SimplicialComplex link = x.link(s);
        if (link.simplex_count() == 0) {
            diag.sphere_like = (k < 0);
        } else if (k < 0) {
            diag.sphere_like = false;
        } else {
            diag.reduced_betti = reduced_betti(link, &diag.torsion);
            diag.sphere_like = diag.torsion.empty();
            for (int j = 0; j < static_cast<int>(diag.reduced_betti.size()); ++j) {
                long expect = (j == k) ? 1 : 0;
                if (diag.reduced_betti[j] != expect) diag.sphere_like = false;
            }
            if (static_cast<int>(diag.reduced_betti.size()) <= k) diag.sphere_like = false;
        }
        if (!diag.sphere_like) {
            all_good = false;
            rep.diagnostics.push_back(std::move(diag));
        } else {
            good.push_back(std::move(diag));
        }
    }
    for (auto& d : good) rep.diagnostics.push_back(std::move(d));
    rep.is_homology_manifold = all_good;
    return rep;
}

}  // namespace chox
