#include "chox/simplicial.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace chox {

std::string simplex_string(const Simplex& s) {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < s.size(); ++i) {
        if (i) os << ",";
        os << s[i];
    }
    os << ")";
    return os.str();
}

bool is_face(const Simplex& a, const Simplex& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

std::vector<Simplex> facets_of(const Simplex& s) {
    std::vector<Simplex> out;
    if (s.size() <= 1) return out;
    for (size_t i = 0; i < s.size(); ++i) {
        Simplex f;
        f.reserve(s.size() - 1);
        for (size_t j = 0; j < s.size(); ++j)
            if (j != i) f.push_back(s[j]);
        out.push_back(std::move(f));
    }
    return out;
}

std::vector<Simplex> faces_of(const Simplex& s) {
    std::vector<Simplex> out;
    size_t n = s.size();
    for (size_t mask = 1; mask < (size_t(1) << n); ++mask) {
        Simplex f;
        for (size_t j = 0; j < n; ++j)
            if (mask & (size_t(1) << j)) f.push_back(s[j]);
        out.push_back(std::move(f));
    }
    return out;
}

int incidence(const Simplex& face, const Simplex& s) {
    if (face.size() + 1 != s.size()) return 0;
    int missing = -1;
    size_t fi = 0;
    for (size_t i = 0; i < s.size(); ++i) {
        if (fi < face.size() && face[fi] == s[i]) {
            ++fi;
        } else if (missing < 0) {
            missing = static_cast<int>(i);
        } else {
            return 0;
        }
    }
    if (fi != face.size() || missing < 0) return 0;
    return (missing % 2 == 0) ? 1 : -1;
}

SimplicialComplex SimplicialComplex::build(const std::vector<Simplex>& maximal_simplices,
                                           const std::vector<int>& declared_vertices) {
    std::set<int> verts(declared_vertices.begin(), declared_vertices.end());
    std::set<Simplex, SimplexOrder> closure;
    for (const Simplex& raw : maximal_simplices) {
        if (raw.empty()) throw malformed_simplex_error("empty simplex tuple");
        Simplex s = raw;
        std::sort(s.begin(), s.end());
        if (std::adjacent_find(s.begin(), s.end()) != s.end())
            throw malformed_simplex_error("duplicate vertex in simplex " + simplex_string(raw));
        if (!declared_vertices.empty())
            for (int v : s)
                if (!verts.count(v))
                    throw malformed_simplex_error("vertex " + std::to_string(v) +
                                                  " not in declared vertex list");
        for (Simplex& f : faces_of(s)) closure.insert(std::move(f));
        for (int v : s) verts.insert(v);
    }
    for (int v : verts) closure.insert(Simplex{v});
    if (closure.empty()) throw malformed_simplex_error("empty complex");

    SimplicialComplex x;
    x.vertices_.assign(verts.begin(), verts.end());
    for (const Simplex& s : closure) {
        int d = static_cast<int>(s.size()) - 1;
        if (d >= static_cast<int>(x.by_dim_.size())) x.by_dim_.resize(d + 1);
        x.by_dim_[d].push_back(s);
    }
    return x;
}

const std::vector<Simplex>& SimplicialComplex::simplices(int d) const {
    static const std::vector<Simplex> none;
    if (d < 0 || d >= static_cast<int>(by_dim_.size())) return none;
    return by_dim_[d];
}

std::vector<Simplex> SimplicialComplex::all_simplices() const {
    std::vector<Simplex> out;
    for (const auto& level : by_dim_) out.insert(out.end(), level.begin(), level.end());
    return out;
}

size_t SimplicialComplex::simplex_count() const {
    size_t n = 0;
    for (const auto& level : by_dim_) n += level.size();
    return n;
}

bool SimplicialComplex::contains(const Simplex& s) const {
    int d = static_cast<int>(s.size()) - 1;
    if (d < 0 || d >= static_cast<int>(by_dim_.size())) return false;
    return std::binary_search(by_dim_[d].begin(), by_dim_[d].end(), s);
}

long SimplicialComplex::index_of(const Simplex& s) const {
    int d = static_cast<int>(s.size()) - 1;
    if (d < 0 || d >= static_cast<int>(by_dim_.size()))
        throw unknown_simplex_error("simplex " + simplex_string(s) + " not in complex");
    auto it = std::lower_bound(by_dim_[d].begin(), by_dim_[d].end(), s);
    if (it == by_dim_[d].end() || *it != s)
        throw unknown_simplex_error("simplex " + simplex_string(s) + " not in complex");
    return it - by_dim_[d].begin();
}

IntMat SimplicialComplex::boundary_matrix(int n) const {
    const auto& cols = simplices(n);
    const auto& rows = simplices(n - 1);
    IntMat m(static_cast<long>(rows.size()), static_cast<long>(cols.size()));
    if (n <= 0) return m;
    for (size_t j = 0; j < cols.size(); ++j) {
        const Simplex& s = cols[j];
        for (size_t i = 0; i < s.size(); ++i) {
            Simplex f;
            f.reserve(s.size() - 1);
            for (size_t k = 0; k < s.size(); ++k)
                if (k != i) f.push_back(s[k]);
            long r = index_of(f);
            m.at(r, static_cast<long>(j)) = (i % 2 == 0) ? 1 : -1;
        }
    }
    return m;
}

std::vector<Simplex> SimplicialComplex::cofacets(const Simplex& s) const {
    std::vector<Simplex> out;
    for (const Simplex& t : simplices(static_cast<int>(s.size())))
        if (is_face(s, t)) out.push_back(t);
    return out;
}

SimplicialComplex SimplicialComplex::link(const Simplex& s) const {
    std::vector<Simplex> maximal;
    std::vector<int> verts;
    for (int d = 0; d < static_cast<int>(by_dim_.size()); ++d)
        for (const Simplex& t : by_dim_[d]) {
            Simplex inter;
            std::set_intersection(s.begin(), s.end(), t.begin(), t.end(),
                                  std::back_inserter(inter));
            if (!inter.empty()) continue;
            Simplex join;
            std::set_union(s.begin(), s.end(), t.begin(), t.end(), std::back_inserter(join));
            if (contains(join)) maximal.push_back(t);
        }
    if (maximal.empty()) return SimplicialComplex();
    return SimplicialComplex::build(maximal);
}

std::vector<Simplex> SimplicialComplex::maximal_simplices() const {
    std::vector<Simplex> out;
    for (int d = 0; d < static_cast<int>(by_dim_.size()); ++d)
        for (const Simplex& s : by_dim_[d]) {
            bool maximal = true;
            for (const Simplex& t : simplices(d + 1))
                if (is_face(s, t)) {
                    maximal = false;
                    break;
                }
            if (maximal) out.push_back(s);
        }
    return out;
}

bool SimplicialComplex::closed_under_faces() const {
    for (const auto& level : by_dim_)
        for (const Simplex& s : level)
            for (const Simplex& f : facets_of(s))
                if (!contains(f)) return false;
    return true;
}

const Simplex& SubdividedComplex::carrier(const Simplex& sd_simplex) const {
    if (sd_simplex.empty()) throw malformed_simplex_error("empty sd simplex");
    return vertex_base.at(sd_simplex.back());
}

std::vector<Simplex> SubdividedComplex::flag(const Simplex& sd_simplex) const {
    std::vector<Simplex> out;
    out.reserve(sd_simplex.size());
    for (int v : sd_simplex) out.push_back(vertex_base.at(v));
    return out;
}

namespace {

void flags_from(const SimplicialComplex& base, const Simplex& top,
                std::vector<int>& chain, const std::map<Simplex, int>& id,
                std::vector<Simplex>& out) {
    chain.push_back(id.at(top));
    Simplex flag(chain.rbegin(), chain.rend());
    std::sort(flag.begin(), flag.end());
    out.push_back(flag);
    for (const Simplex& f : faces_of(top)) {
        if (f.size() == top.size()) continue;
        flags_from(base, f, chain, id, out);
    }
    chain.pop_back();
}

}  // namespace

SubdividedComplex barycentric_subdivide(const SimplicialComplex& x) {
    SubdividedComplex sd;
    sd.base = x;
    sd.level = 1;
    std::vector<Simplex> all = x.all_simplices();
    for (int i = 0; i < static_cast<int>(all.size()); ++i) {
        sd.vertex_base.push_back(all[i]);
        sd.barycentre_id[all[i]] = i;
    }
    // flags of the face poset, generated downward from each simplex
    std::vector<Simplex> flags;
    for (const Simplex& s : all) {
        std::vector<int> chain;
        flags_from(x, s, chain, sd.barycentre_id, flags);
    }
    std::set<Simplex, SimplexOrder> uniq(flags.begin(), flags.end());
    std::vector<Simplex> maximal(uniq.begin(), uniq.end());
    std::vector<int> verts;
    for (int i = 0; i < static_cast<int>(all.size()); ++i) verts.push_back(i);
    sd.complex = SimplicialComplex::build(maximal, verts);
    return sd;
}

SubdividedComplex barycentric_subdivide(const SubdividedComplex& s) {
    SubdividedComplex sd = barycentric_subdivide(s.complex);
    sd.level = s.level + 1;
    return sd;
}

DualCell dual_cell(const Simplex& s, const SimplicialComplex& x, const SubdividedComplex& sd) {
    if (!x.contains(s)) throw unknown_simplex_error("simplex " + simplex_string(s) + " not in complex");
    if (!(sd.base == x)) throw base_mismatch_error("subdivision is not of the given complex");
    DualCell d;
    d.center = s;
    for (const Simplex& t : sd.complex.all_simplices()) {
        std::vector<Simplex> flag = sd.flag(t);
        if (!is_face(s, flag.front())) continue;
        d.closed.push_back(t);
        if (flag.front() == s)
            d.open.push_back(t);
        else
            d.boundary.push_back(t);
    }
    return d;
}

}  // namespace chox
