#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "fillings/metrics.hpp"
#include "fillings/plmesh.hpp"
#include "fillings/rational.hpp"
#include "fillings/search.hpp"
#include "fillings/triangulation.hpp"

// Interchange formats. Keys come out alphabetically and numbers round-trip,
// so serializing the same value always yields the same bytes.

namespace fillings {

using Json = nlohmann::json;

// Rationals travel as [numerator, denominator].
Json to_json(const Rational& r);
Rational rational_from_json(const Json& j);

// {"boundary_n": n|null, "num_vertices": V, "triangles": [[a,b,c], ...]}
Json to_json(const AbstractTriangulation& K);
AbstractTriangulation triangulation_from_json(const Json& j);

// {"delta": [p,q], "isometric": bool, "witness": [x,y]}
Json to_json(const LipschitzReport& r);

// {"gluings": [[[t,s],[t,s]], ...], "triangles": [[l0,l1,l2], ...]}
Json to_json(const PLSurface& S);
PLSurface surface_from_json(const Json& j);

// The triangulation fields plus {"lengths": {"u-v": len}, "stats": {...}}.
Json to_json(const BalancedMesh& M);

Json to_json(const SearchResult& r);

// {"paths": [[...], ...], "separator": [...]}
Json paths_json(const std::vector<std::vector<VertexId>>& paths,
                const std::vector<VertexId>& separator);
// {"walk": [...]}
Json walk_json(const std::vector<VertexId>& walk);

// Two-space indent and a trailing newline.
std::string dump_json(const Json& j);

}  // namespace fillings
