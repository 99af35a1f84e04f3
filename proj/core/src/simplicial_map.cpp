#include "chox/simplicial_map.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace chox {

Simplex SimplicialMap::image(const Simplex& s) const {
    std::set<int> img;
    for (int v : s) img.insert(vertex_map.at(v));
    return Simplex(img.begin(), img.end());
}

bool validate(const SimplicialMap& f) {
    for (int v : f.source.vertices()) {
        auto it = f.vertex_map.find(v);
        if (it == f.vertex_map.end()) return false;
        if (!f.target.contains(Simplex{it->second})) return false;
    }
    for (const Simplex& s : f.source.all_simplices())
        if (!f.target.contains(f.image(s))) return false;
    return true;
}

FiberDecomposition fiber(const SimplicialMap& f, const Simplex& sigma) {
    if (!f.target.contains(sigma))
        throw unknown_simplex_error("fibre over a simplex outside the target");
    FiberDecomposition out;
    out.over = sigma;

    // sections of f over V(sigma) inside each surjecting source simplex
    std::map<std::vector<int>, int> section_id;
    std::vector<std::vector<Simplex>> chains_per_cell;
    for (const Simplex& omega : f.source.all_simplices()) {
        Simplex img = f.image(omega);
        if (!is_face(sigma, img)) continue;
        // partition the vertices of omega over the vertices of sigma
        std::map<int, std::vector<int>> slots;
        bool onto = true;
        for (int v : sigma) slots[v] = {};
        for (int w : omega) {
            int v = f.vertex_map.at(w);
            if (slots.count(v)) slots[v].push_back(w);
        }
        std::vector<long> ranks;
        for (int v : sigma) {
            if (slots[v].empty()) {
                onto = false;
                break;
            }
            ranks.push_back(static_cast<long>(slots[v].size()));
        }
        if (!onto) continue;
        if (f.image(omega) == sigma) out.witnesses[omega] = ranks;
        // enumerate sections: one choice per sigma vertex
        std::vector<std::vector<int>> local;
        local.emplace_back();
        for (int v : sigma) {
            std::vector<std::vector<int>> next;
            for (const auto& part : local)
                for (int w : slots[v]) {
                    auto q = part;
                    q.push_back(w);
                    next.push_back(std::move(q));
                }
            local = std::move(next);
        }
        std::vector<int> ids;
        for (auto& sec : local) {
            auto it = section_id.find(sec);
            if (it == section_id.end())
                it = section_id.emplace(sec, static_cast<int>(section_id.size())).first;
            ids.push_back(it->second);
        }
        std::sort(ids.begin(), ids.end());
        ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
        chains_per_cell.push_back({});
        // simplices: chains under coordinatewise order within this cell
        std::vector<std::vector<int>> secs(section_id.size());
        for (const auto& [sec, id] : section_id) secs[id] = sec;
        std::vector<int> chain;
        std::vector<Simplex> chains;
        // DFS over ids with comparability in the product order
        std::function<void(size_t)> dfs = [&](size_t start) {
            if (!chain.empty()) {
                Simplex s;
                for (int idx : chain) s.push_back(ids[idx]);
                std::sort(s.begin(), s.end());
                chains.push_back(std::move(s));
            }
            for (size_t i = start; i < ids.size(); ++i) {
                if (!chain.empty()) {
                    const auto& a = secs[ids[chain.back()]];
                    const auto& b = secs[ids[i]];
                    bool le = true, eq = true;
                    for (size_t t = 0; t < a.size(); ++t) {
                        if (a[t] > b[t]) le = false;
                        if (a[t] != b[t]) eq = false;
                    }
                    if (!le || eq) continue;
                }
                chain.push_back(static_cast<int>(i));
                dfs(i + 1);
                chain.pop_back();
            }
        };
        dfs(0);
        chains_per_cell.back() = std::move(chains);
    }
    if (section_id.empty()) {
        out.empty = true;
        return out;
    }
    out.sections.resize(section_id.size());
    for (const auto& [sec, id] : section_id) out.sections[id] = sec;
    std::set<Simplex, SimplexOrder> simplices;
    for (auto& chains : chains_per_cell)
        for (Simplex& s : chains) simplices.insert(std::move(s));
    std::vector<int> verts;
    for (size_t i = 0; i < section_id.size(); ++i) verts.push_back(static_cast<int>(i));
    out.k = SimplicialComplex::build(std::vector<Simplex>(simplices.begin(), simplices.end()),
                                     verts);
    return out;
}

namespace {

std::vector<long> reduced_betti_of(const SimplicialComplex& k, std::vector<Int>* torsion) {
    std::vector<long> betti;
    for (int j = 0; j <= k.dim(); ++j) {
        HomologySummary h = homology(k.boundary_matrix(j), k.boundary_matrix(j + 1));
        long b = h.betti;
        if (j == 0) b -= 1;
        betti.push_back(b);
        if (torsion)
            for (const Int& t : h.torsion) torsion->push_back(t);
    }
    return betti;
}

}  // namespace

std::map<Simplex, FiberStatus, SimplexOrder> fiber_acyclicity_report(const SimplicialMap& f) {
    std::map<Simplex, FiberStatus, SimplexOrder> out;
    for (const Simplex& sigma : f.target.all_simplices()) {
        FiberDecomposition fd = fiber(f, sigma);
        FiberStatus st;
        if (fd.empty) {
            st.state = FiberStatus::State::Empty;
        } else {
            st.reduced_betti = reduced_betti_of(fd.k, &st.torsion);
            bool acyclic = st.torsion.empty();
            for (long b : st.reduced_betti)
                if (b != 0) acyclic = false;
            st.state = acyclic ? FiberStatus::State::Acyclic : FiberStatus::State::NotAcyclic;
        }
        out[sigma] = std::move(st);
    }
    return out;
}

bool fiber_euler_consistent(const SimplicialMap& f, const Simplex& sigma) {
    FiberDecomposition fd = fiber(f, sigma);
    if (fd.empty) return true;
    long chi = 0;
    for (int j = 0; j <= fd.k.dim(); ++j) {
        long c = static_cast<long>(fd.k.simplices(j).size());
        chi += (j % 2 ? -c : c);
    }
    // open product cells: one per family of nonempty subsets (S_v) contained
    // in a common source simplex
    std::set<std::vector<std::vector<int>>> cells;
    for (const Simplex& omega : f.source.all_simplices()) {
        std::map<int, std::vector<int>> slots;
        bool onto = true;
        for (int v : sigma) slots[v] = {};
        for (int w : omega) {
            int v = f.vertex_map.at(w);
            if (slots.count(v)) slots[v].push_back(w);
        }
        for (int v : sigma)
            if (slots[v].empty()) onto = false;
        if (!onto || !is_face(sigma, f.image(omega))) continue;
        // all tuples of nonempty subsets
        std::vector<std::vector<std::vector<int>>> acc{{}};
        for (int v : sigma) {
            std::vector<std::vector<std::vector<int>>> next;
            const auto& pool = slots[v];
            for (size_t mask = 1; mask < (size_t(1) << pool.size()); ++mask) {
                std::vector<int> sub;
                for (size_t b = 0; b < pool.size(); ++b)
                    if (mask & (size_t(1) << b)) sub.push_back(pool[b]);
                for (const auto& partial : acc) {
                    auto q = partial;
                    q.push_back(sub);
                    next.push_back(std::move(q));
                }
            }
            acc = std::move(next);
        }
        for (auto& cell : acc) cells.insert(cell);
    }
    long chi_cells = 0;
    for (const auto& cell : cells) {
        long dim = 0;
        for (const auto& s : cell) dim += static_cast<long>(s.size()) - 1;
        chi_cells += (dim % 2 ? -1 : 1);
    }
    return chi == chi_cells;
}

InducedChainMap induced_chain_map(const SimplicialMap& f) {
    InducedChainMap out;
    out.source = std::make_shared<GradedChainComplex>();
    out.source->base = f.target;
    out.source->variant = Variant::Costar;
    out.target = std::make_shared<GradedChainComplex>(simplicial_chain_complex(f.target));

    std::map<Simplex, long, SimplexOrder> slot;  // source simplex -> index inside its piece
    std::map<std::pair<Simplex, int>, std::vector<Simplex>> piece;
    for (const Simplex& w : f.source.all_simplices()) {
        Simplex carrier = f.image(w);
        int m = static_cast<int>(w.size()) - 1;
        auto& list = piece[{carrier, m}];
        slot[w] = static_cast<long>(list.size());
        list.push_back(w);
    }
    for (const auto& [k, list] : piece)
        out.source->set_rank(k.first, k.second, static_cast<long>(list.size()));
    for (const auto& [k, list] : piece) {
        const auto& [carrier, m] = k;
        for (long j = 0; j < static_cast<long>(list.size()); ++j) {
            const Simplex& w = list[j];
            for (const Simplex& face : facets_of(w)) {
                Simplex fc = f.image(face);
                IntMat blk = out.source->block(fc, carrier, m);
                blk.at(slot.at(face), j) += incidence(face, w);
                out.source->set_block(fc, carrier, m, std::move(blk));
            }
        }
    }
    out.map.source = out.source.get();
    out.map.target = out.target.get();
    for (const auto& [k, list] : piece) {
        const auto& [carrier, m] = k;
        if (m != static_cast<int>(carrier.size()) - 1) continue;
        IntMat blk(1, static_cast<long>(list.size()));
        for (long j = 0; j < static_cast<long>(list.size()); ++j) {
            const Simplex& w = list[j];
            // nonzero only when f maps w bijectively onto its image
            std::vector<int> images;
            for (int v : w) images.push_back(f.vertex_map.at(v));
            std::set<int> uniq(images.begin(), images.end());
            if (uniq.size() != images.size()) continue;
            int sign = 1;
            for (size_t a = 0; a < images.size(); ++a)
                for (size_t b = a + 1; b < images.size(); ++b)
                    if (images[a] > images[b]) sign = -sign;
            blk.at(0, j) = sign;
        }
        if (!blk.is_zero()) out.map.set_block(carrier, carrier, m, std::move(blk));
    }
    out.verified = verify(*out.source) && is_chain_map(out.map);
    return out;
}

VietorisVerdict vietoris_verdict(const SimplicialMap& f) {
    VietorisVerdict out;
    InducedChainMap icm = induced_chain_map(f);
    if (!icm.verified) throw error("induced chain map failed verification");
    out.keep.push_back(icm.source);
    out.keep.push_back(icm.target);
    ConeComplex cone = mapping_cone(icm.map);
    auto keep = std::make_shared<GradedChainComplex>(std::move(cone.cone));
    out.keep.push_back(keep);
    ContractionResult r = is_contractible(*keep);
    if (std::holds_alternative<ContractionCertificate>(r)) {
        out.contractible_fibres = true;
        out.certificate = std::get<ContractionCertificate>(r);
        out.certificate->keepalive = keep;
    } else {
        out.witness = std::get<ContractibilityWitness>(r);
    }
    return out;
}

}  // namespace chox
