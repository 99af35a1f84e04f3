#include "chox/io.hpp"

namespace chox {

Json complex_to_json(const SimplicialComplex& x) {
    Json j;
    j["vertices"] = x.vertices();
    Json maximal = Json::array();
    for (const Simplex& s : x.maximal_simplices()) maximal.push_back(s);
    j["maximal"] = maximal;
    return j;
}

SimplicialComplex complex_from_json(const Json& j) {
    if (!j.contains("maximal")) throw parameter_error("complex file needs a 'maximal' field");
    std::vector<Simplex> maximal;
    for (const auto& t : j.at("maximal")) maximal.push_back(t.get<Simplex>());
    std::vector<int> verts;
    if (j.contains("vertices")) verts = j.at("vertices").get<std::vector<int>>();
    return SimplicialComplex::build(maximal, verts);
}

Json matrix_to_json(const IntMat& m) {
    Json rows = Json::array();
    for (long i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (long j = 0; j < m.cols(); ++j) row.push_back(m.at(i, j).get_str());
        rows.push_back(row);
    }
    Json j;
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    j["entries"] = rows;
    return j;
}

IntMat matrix_from_json(const Json& j) {
    IntMat m(j.at("rows").get<long>(), j.at("cols").get<long>());
    const Json& rows = j.at("entries");
    for (long i = 0; i < m.rows(); ++i)
        for (long c = 0; c < m.cols(); ++c) {
            const Json& e = rows.at(i).at(c);
            if (e.is_string())
                m.at(i, c) = Int(e.get<std::string>());
            else
                m.at(i, c) = Int(e.get<long>());
        }
    return m;
}

Json graded_to_json(const GradedChainComplex& c) {
    Json j;
    j["base"] = complex_to_json(c.base);
    j["variant"] = variant_name(c.variant);
    Json ranks = Json::array();
    for (const auto& [k, r] : c.ranks) {
        Json e = Json::array();
        e.push_back(k.first);
        e.push_back(k.second);
        e.push_back(r);
        ranks.push_back(e);
    }
    j["ranks"] = ranks;
    Json diff = Json::array();
    for (const auto& [k, m] : c.diff) {
        Json e = Json::array();
        e.push_back(std::get<0>(k));
        e.push_back(std::get<1>(k));
        e.push_back(std::get<2>(k));
        e.push_back(matrix_to_json(m));
        diff.push_back(e);
    }
    j["diff"] = diff;
    return j;
}

GradedChainComplex graded_from_json(const Json& j) {
    GradedChainComplex c;
    c.base = complex_from_json(j.at("base"));
    std::string v = j.at("variant").get<std::string>();
    if (v == "costar")
        c.variant = Variant::Costar;
    else if (v == "star")
        c.variant = Variant::Star;
    else if (v == "full")
        c.variant = Variant::Full;
    else
        throw parameter_error("unknown variant '" + v + "'");
    for (const auto& e : j.at("ranks"))
        c.set_rank(e.at(0).get<Simplex>(), e.at(1).get<int>(), e.at(2).get<long>());
    for (const auto& e : j.at("diff"))
        c.set_block(e.at(0).get<Simplex>(), e.at(1).get<Simplex>(), e.at(2).get<int>(),
                    matrix_from_json(e.at(3)));
    return c;
}

Json blocks_to_json(const std::map<BlockKey, IntMat>& blocks) {
    Json out = Json::array();
    for (const auto& [k, m] : blocks) {
        Json e = Json::array();
        e.push_back(std::get<0>(k));
        e.push_back(std::get<1>(k));
        e.push_back(std::get<2>(k));
        e.push_back(matrix_to_json(m));
        out.push_back(e);
    }
    return out;
}

std::map<BlockKey, IntMat> blocks_from_json(const Json& j) {
    std::map<BlockKey, IntMat> out;
    for (const auto& e : j) {
        BlockKey k{e.at(0).get<Simplex>(), e.at(1).get<Simplex>(), e.at(2).get<int>()};
        out.emplace(k, matrix_from_json(e.at(3)));
    }
    return out;
}

Json simplicial_map_to_json(const SimplicialMap& f) {
    Json j;
    j["source"] = complex_to_json(f.source);
    j["target"] = complex_to_json(f.target);
    Json vm = Json::array();
    for (const auto& [a, b] : f.vertex_map) {
        Json e = Json::array();
        e.push_back(a);
        e.push_back(b);
        vm.push_back(e);
    }
    j["vertex_map"] = vm;
    return j;
}

SimplicialMap simplicial_map_from_json(const Json& j) {
    SimplicialMap f;
    f.source = complex_from_json(j.at("source"));
    f.target = complex_from_json(j.at("target"));
    for (const auto& e : j.at("vertex_map")) f.vertex_map[e.at(0).get<int>()] = e.at(1).get<int>();
    if (!validate(f)) throw parameter_error("vertex map is not simplicial");
    return f;
}

Json length_to_json(const Length& v) {
    Json j;
    if (v.sq) j["square"] = rat_string(*v.sq);
    j["lower"] = v.box.lo.get_d();
    j["upper"] = v.box.hi.get_d();
    return j;
}

Json subdivision_summary(const SubdivisionData& data) {
    Json j;
    j["levels"] = data.level_count();
    j["policy"] = data.policy == RPolicy::MinVertex ? "min-vertex" : "boundary-retracting";
    const SubdivisionLevel& lv = data.top();
    Json rv = Json::array();
    for (size_t w = 0; w < lv.sd.vertex_base.size(); ++w) {
        Json e = Json::array();
        e.push_back(lv.sd.vertex_base[w]);
        e.push_back(lv.r[w]);
        rv.push_back(e);
    }
    j["r_vertex_map"] = rv;
    Json regions = Json::object();
    std::map<Simplex, long, SimplexOrder> counts;
    for (const auto& [t, reg] : lv.region) counts[reg]++;
    for (const auto& [reg, k] : counts) regions[simplex_string(reg)] = k;
    j["region_sizes"] = regions;
    j["complex"] = complex_to_json(lv.sd.complex);
    return j;
}

}  // namespace chox
