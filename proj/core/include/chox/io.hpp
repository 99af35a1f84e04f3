#pragma once

#include <json.hpp>

#include "chox/duality.hpp"
#include "chox/simplicial_map.hpp"

namespace chox {

using Json = nlohmann::ordered_json;

Json complex_to_json(const SimplicialComplex& x);
SimplicialComplex complex_from_json(const Json& j);

Json graded_to_json(const GradedChainComplex& c);
GradedChainComplex graded_from_json(const Json& j);

Json blocks_to_json(const std::map<BlockKey, IntMat>& blocks);
std::map<BlockKey, IntMat> blocks_from_json(const Json& j);

Json simplicial_map_to_json(const SimplicialMap& f);
SimplicialMap simplicial_map_from_json(const Json& j);

Json matrix_to_json(const IntMat& m);
IntMat matrix_from_json(const Json& j);

Json length_to_json(const Length& v);

Json subdivision_summary(const SubdivisionData& data);

}  // namespace chox
