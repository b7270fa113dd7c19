#include "fillings/json_io.hpp"

#include <stdexcept>

namespace fillings {

namespace {

Tri tri_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 3) {
    throw std::invalid_argument("a triangle must be an array of three vertices");
  }
  return make_tri(j[0].get<VertexId>(), j[1].get<VertexId>(), j[2].get<VertexId>());
}

}  // namespace

Json to_json(const Rational& r) { return Json::array({r.num(), r.den()}); }

Rational rational_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) {
    throw std::invalid_argument("a rational must be [numerator, denominator]");
  }
  return Rational(j[0].get<std::int64_t>(), j[1].get<std::int64_t>());
}

Json to_json(const AbstractTriangulation& K) {
  Json out;
  out["boundary_n"] = K.boundary_n ? Json(*K.boundary_n) : Json(nullptr);
  out["num_vertices"] = K.num_vertices;
  Json tris = Json::array();
  for (const Tri& t : K.triangles) tris.push_back(Json::array({t[0], t[1], t[2]}));
  out["triangles"] = std::move(tris);
  return out;
}

AbstractTriangulation triangulation_from_json(const Json& j) {
  if (!j.is_object()) throw std::invalid_argument("a triangulation must be an object");
  std::vector<Tri> tris;
  for (const Json& t : j.at("triangles")) tris.push_back(tri_from_json(t));
  std::optional<VertexId> boundary;
  if (const auto it = j.find("boundary_n"); it != j.end() && !it->is_null()) {
    boundary = it->get<VertexId>();
  }
  return AbstractTriangulation::from_triples(j.at("num_vertices").get<VertexId>(),
                                             std::move(tris), boundary);
}

Json to_json(const LipschitzReport& r) {
  Json out;
  out["delta"] = to_json(r.delta_achieved);
  out["isometric"] = r.is_isometric;
  out["witness"] = Json::array({r.witness_pair.first, r.witness_pair.second});
  return out;
}

Json to_json(const PLSurface& S) {
  Json out;
  Json gluings = Json::array();
  for (const Gluing& g : S.gluings) {
    gluings.push_back(Json::array({Json::array({g.a.tri, g.a.side}),
                                   Json::array({g.b.tri, g.b.side})}));
  }
  out["gluings"] = std::move(gluings);
  Json tris = Json::array();
  for (const PLTriangle& t : S.triangles) {
    tris.push_back(Json::array({t.side[0], t.side[1], t.side[2]}));
  }
  out["triangles"] = std::move(tris);
  return out;
}

PLSurface surface_from_json(const Json& j) {
  if (!j.is_object()) throw std::invalid_argument("a surface must be an object");
  PLSurface S;
  for (const Json& t : j.at("triangles")) {
    if (!t.is_array() || t.size() != 3) {
      throw std::invalid_argument("a surface triangle must be three side lengths");
    }
    S.triangles.push_back({{t[0].get<double>(), t[1].get<double>(), t[2].get<double>()}});
  }
  if (const auto it = j.find("gluings"); it != j.end()) {
    for (const Json& g : *it) {
      if (!g.is_array() || g.size() != 2 || !g[0].is_array() || g[0].size() != 2 ||
          !g[1].is_array() || g[1].size() != 2) {
        throw std::invalid_argument("a gluing must be a pair of [triangle, side] refs");
      }
      S.gluings.push_back({{g[0][0].get<int>(), g[0][1].get<int>()},
                           {g[1][0].get<int>(), g[1][1].get<int>()}});
    }
  }
  return S;
}

Json to_json(const BalancedMesh& M) {
  Json out = to_json(M.mesh);
  Json lengths = Json::object();
  for (const auto& [e, l] : M.lengths) {
    lengths[std::to_string(e.first) + "-" + std::to_string(e.second)] = l;
  }
  out["lengths"] = std::move(lengths);
  Json stats;
  stats["annulus_capacity"] = M.annulus_capacity;
  stats["annulus_triangles"] = M.annulus_triangles;
  stats["annulus_worst_ratio"] = M.annulus_worst_ratio;
  stats["deviation"] = M.plan.deviation;
  stats["epsilon"] = M.plan.epsilon;
  stats["equilateral_triangles"] = M.equilateral_triangles;
  stats["k"] = M.plan.k;
  stats["max_edge"] = M.max_edge;
  stats["min_edge"] = M.min_edge;
  stats["q"] = M.plan.q;
  stats["subdivisions"] = M.plan.subdivisions;
  stats["surface_area"] = M.surface_area;
  stats["vertex_ratio"] = M.vertex_ratio;
  out["stats"] = std::move(stats);
  return out;
}

Json to_json(const SearchResult& r) {
  Json out;
  out["budget_exhausted"] = r.budget_exhausted ? Json(*r.budget_exhausted) : Json(nullptr);
  out["d_value"] = r.d_value ? Json(*r.d_value) : Json(nullptr);
  out["epsilon"] = to_json(r.epsilon);
  out["levels_exhausted_below"] = r.levels_exhausted_below;
  out["n"] = r.n;
  out["nodes_explored"] = r.nodes_explored;
  out["proof_of_minimality"] = r.proof_of_minimality;
  out["witness"] = r.witness ? to_json(*r.witness) : Json(nullptr);
  return out;
}

Json paths_json(const std::vector<std::vector<VertexId>>& paths,
                const std::vector<VertexId>& separator) {
  Json out;
  Json ps = Json::array();
  for (const auto& p : paths) ps.push_back(p);
  out["paths"] = std::move(ps);
  out["separator"] = separator;
  return out;
}

Json walk_json(const std::vector<VertexId>& walk) {
  Json out;
  out["walk"] = walk;
  return out;
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace fillings
