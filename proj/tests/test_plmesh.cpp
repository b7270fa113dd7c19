#include "fillings/plmesh.hpp"

#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <stdexcept>

#include "fillings/metrics.hpp"

using namespace fillings;

namespace {

bool has_violation(const ValidationReport& r, const std::string& code) {
  return std::any_of(r.violations.begin(), r.violations.end(),
                     [&](const ValidationIssue& v) { return v.code == code; });
}

double dist(Vec2 a, Vec2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

}  // namespace

TEST_CASE("surface validation accepts the presets") {
  CHECK(validate_surface(hemisphere_surface()).ok());
  CHECK(validate_surface(disk_surface()).ok());
  CHECK(validate_surface(square_surface()).ok());
}

TEST_CASE("surface validation rejects each malformed input") {
  PLSurface S;
  SUBCASE("empty") { CHECK_FALSE(validate_surface(S).ok()); }
  SUBCASE("nonpositive side") {
    S.triangles = {{{1, -1, 1}}};
    CHECK(has_violation(validate_surface(S), "side-length"));
  }
  SUBCASE("triangle inequality violated") {
    S.triangles = {{{1, 1, 3}}};
    CHECK(has_violation(validate_surface(S), "triangle-inequality"));
  }
  SUBCASE("degenerate flat triangle") {
    S.triangles = {{{1, 1, 2}}};  // equality is already degenerate
    CHECK(has_violation(validate_surface(S), "triangle-inequality"));
  }
  SUBCASE("gluing out of range") {
    S.triangles = {{{1, 1, 1}}};
    S.gluings = {{{0, 0}, {3, 1}}};
    CHECK(has_violation(validate_surface(S), "gluing-range"));
  }
  SUBCASE("side glued twice") {
    S.triangles = {{{1, 1, 1}}, {{1, 1, 1}}, {{1, 1, 1}}};
    S.gluings = {{{0, 0}, {1, 0}}, {{0, 0}, {2, 0}}};
    CHECK(has_violation(validate_surface(S), "gluing-multiplicity"));
  }
  SUBCASE("triangle glued to itself") {
    S.triangles = {{{1, 1, 1}}};
    S.gluings = {{{0, 0}, {0, 1}}};
    CHECK(has_violation(validate_surface(S), "gluing-self"));
  }
  SUBCASE("glued sides of different length") {
    S.triangles = {{{1, 1, 1}}, {{2, 2, 2}}};
    S.gluings = {{{0, 0}, {1, 0}}};
    CHECK(has_violation(validate_surface(S), "gluing-length"));
  }
}

TEST_CASE("surface vertex map merges glued corners") {
  // Two unit triangles glued along one side form a rhombus: 4 vertices.
  PLSurface S;
  S.triangles = {{{1, 1, 1}}, {{1, 1, 1}}};
  S.gluings = {{{0, 1}, {1, 1}}};
  const auto svm = surface_vertex_map(S);
  CHECK(svm.count == 4);

  // The square pyramid cap: 4 base corners + 1 apex.
  CHECK(surface_vertex_map(hemisphere_surface()).count == 5);
  // The cone fan: 12 rim corners + 1 apex.
  CHECK(surface_vertex_map(disk_surface()).count == 13);
  CHECK(surface_vertex_map(square_surface()).count == 4);
}

TEST_CASE("chart triangle reproduces the side lengths") {
  std::mt19937 rng(31337);
  std::uniform_real_distribution<double> side(0.2, 3.0);
  int built = 0;
  while (built < 200) {
    const double a = side(rng), b = side(rng), c = side(rng);
    if (a + b <= c + 1e-6 || b + c <= a + 1e-6 || a + c <= b + 1e-6) continue;
    ++built;
    const PLTriangle t{{a, b, c}};
    const auto P = chart_triangle(t);
    CHECK(dist(P[0], P[1]) == doctest::Approx(a).epsilon(1e-12));
    CHECK(dist(P[1], P[2]) == doctest::Approx(b).epsilon(1e-12));
    CHECK(dist(P[2], P[0]) == doctest::Approx(c).epsilon(1e-12));
    CHECK(P[2].y > 0);
  }
}

TEST_CASE("heron area agrees with the shoelace of the chart") {
  std::mt19937 rng(31338);
  std::uniform_real_distribution<double> side(0.2, 3.0);
  int built = 0;
  while (built < 200) {
    const double a = side(rng), b = side(rng), c = side(rng);
    if (a + b <= c + 1e-6 || b + c <= a + 1e-6 || a + c <= b + 1e-6) continue;
    ++built;
    const auto P = chart_triangle(PLTriangle{{a, b, c}});
    const double shoelace =
        0.5 * std::abs((P[1].x - P[0].x) * (P[2].y - P[0].y) -
                       (P[2].x - P[0].x) * (P[1].y - P[0].y));
    CHECK(heron_area(a, b, c) == doctest::Approx(shoelace).epsilon(1e-9));
  }
  CHECK(heron_area(1, 1, 1) == doctest::Approx(std::sqrt(3.0) / 4.0).epsilon(1e-15));
  CHECK(heron_area(3, 4, 5) == doctest::Approx(6.0).epsilon(1e-12));
}

TEST_CASE("segment crossing against a brute-force parametric oracle") {
  // Sample parameters on both segments; proper crossing means the unique
  // line intersection is interior to both. The oracle solves the 2x2 system.
  const auto oracle = [](Vec2 p, Vec2 q, Vec2 r, Vec2 s) {
    const double dx1 = q.x - p.x, dy1 = q.y - p.y;
    const double dx2 = s.x - r.x, dy2 = s.y - r.y;
    const double det = dx1 * dy2 - dy1 * dx2;
    if (std::abs(det) < 1e-14) return false;  // parallel: never a proper cross
    const double t = ((r.x - p.x) * dy2 - (r.y - p.y) * dx2) / det;
    const double u = ((r.x - p.x) * dy1 - (r.y - p.y) * dx1) / det;
    const double lo = 1e-9, hi = 1.0 - 1e-9;
    return t > lo && t < hi && u > lo && u < hi;
  };
  std::mt19937 rng(31339);
  std::uniform_real_distribution<double> coord(-2.0, 2.0);
  int disagreements = 0;
  for (int trial = 0; trial < 5000; ++trial) {
    const Vec2 p{coord(rng), coord(rng)}, q{coord(rng), coord(rng)};
    const Vec2 r{coord(rng), coord(rng)}, s{coord(rng), coord(rng)};
    if (segments_properly_cross(p, q, r, s) != oracle(p, q, r, s)) ++disagreements;
  }
  CHECK(disagreements == 0);

  // Shared endpoints are not proper crossings.
  CHECK_FALSE(segments_properly_cross({0, 0}, {1, 0}, {1, 0}, {1, 1}));
  // T-junction: an endpoint interior to the other segment is not proper.
  CHECK_FALSE(segments_properly_cross({0, 0}, {2, 0}, {1, 0}, {1, 1}));
  CHECK(segments_properly_cross({0, 0}, {1, 1}, {0, 1}, {1, 0}));
}

TEST_CASE("dirichlet plan finds the square root of two convergents") {
  // The side multiset of the unit square surface is {1, 1, sqrt 2} twice;
  // the only irrational to approximate is sqrt 2, whose best denominators
  // q <= k are the Pell numbers 2, 5, 12, 29, 70, ...
  const auto S = square_surface();
  CHECK(dirichlet_plan(S, 20).q == 12);
  CHECK(dirichlet_plan(S, 50).q == 29);
  CHECK(dirichlet_plan(S, 120).q == 70);

  const auto plan = dirichlet_plan(S, 20);
  CHECK(plan.numerators.at(1.0) == 12);
  CHECK(plan.numerators.at(std::sqrt(2.0)) == 17);  // 17/12 ~ sqrt 2
  CHECK(plan.deviation == doctest::Approx(std::abs(std::sqrt(2.0) - 17.0 / 12.0)));
  CHECK(plan.epsilon == doctest::Approx(1.0 / (12 * plan.subdivisions)));
}

TEST_CASE("dirichlet plan guarantee holds for every k on the presets") {
  for (const auto& S : {hemisphere_surface(), disk_surface(), square_surface()}) {
    for (long long k : {2, 5, 10, 40, 90}) {
      const auto plan = dirichlet_plan(S, k);
      REQUIRE(plan.q >= 1);
      REQUIRE(plan.q <= k);
      const double bound =
          1.0 / (static_cast<double>(plan.q) *
                 std::pow(static_cast<double>(k), 1.0 / plan.distinct_lengths));
      CHECK(plan.deviation <= bound + 1e-9);
      // Every side is an exact multiple of epsilon in plan units.
      for (const auto& [len, p] : plan.numerators)
        CHECK(plan.intervals_for(len) == p * plan.subdivisions);
    }
  }
}

TEST_CASE("dirichlet plan rejects sides the grid cannot resolve") {
  PLSurface S;
  S.triangles = {{{1.0, 1.0, 0.01}}};
  CHECK_THROWS_AS(dirichlet_plan(S, 3), std::invalid_argument);  // 0.01 rounds to p = 0
}

TEST_CASE("partial barycentric splits to six minus protected children") {
  MeshBuild base;
  base.num_vertices = 3;
  base.triangles = {make_tri(0, 1, 2)};
  base.lengths[make_edge(0, 1)] = 1.0;
  base.lengths[make_edge(1, 2)] = 1.0;
  base.lengths[make_edge(0, 2)] = 1.0;

  SUBCASE("no protection: full six") {
    const auto out = partial_barycentric(base, {});
    CHECK(out.triangles.size() == 6);
    CHECK(out.num_vertices == 3 + 3 + 1);  // midpoints + centroid
  }
  SUBCASE("one protected edge: five children") {
    const auto out = partial_barycentric(base, {make_edge(0, 1)});
    CHECK(out.triangles.size() == 5);
    CHECK(out.num_vertices == 3 + 2 + 1);
  }
  SUBCASE("all protected: three fans") {
    const auto out = partial_barycentric(
        base, {make_edge(0, 1), make_edge(1, 2), make_edge(0, 2)});
    CHECK(out.triangles.size() == 3);
    CHECK(out.num_vertices == 4);
  }
}

TEST_CASE("partial barycentric is conformal across a shared edge") {
  // Two triangles over the shared edge 1-2; splitting must reuse a single
  // midpoint so the complex stays a simplicial surface.
  MeshBuild base;
  base.num_vertices = 4;
  base.triangles = {make_tri(0, 1, 2), make_tri(1, 2, 3)};
  for (const Tri& t : base.triangles) {
    base.lengths[make_edge(t[0], t[1])] = 1.0;
    base.lengths[make_edge(t[1], t[2])] = 1.0;
    base.lengths[make_edge(t[0], t[2])] = 1.0;
  }
  const auto out = partial_barycentric(base, {});
  CHECK(out.triangles.size() == 12);
  // 4 originals + 5 edge midpoints + 2 centroids.
  CHECK(out.num_vertices == 11);
  AbstractTriangulation K;
  K.num_vertices = out.num_vertices;
  K.triangles = out.triangles;
  std::sort(K.triangles.begin(), K.triangles.end());
  CHECK(validate(K).ok());
}

TEST_CASE("refinement drives every edge under the threshold") {
  MeshBuild base;
  base.num_vertices = 3;
  base.triangles = {make_tri(0, 1, 2)};
  base.lengths[make_edge(0, 1)] = 4.0;
  base.lengths[make_edge(1, 2)] = 3.0;
  base.lengths[make_edge(0, 2)] = 2.0;
  const auto out = refine_to_threshold(base, 1.0);
  for (const auto& [e, len] : out.lengths) CHECK(len <= 1.0 + 1e-12);
  CHECK(out.triangles.size() > base.triangles.size());
}

TEST_CASE("balanced mesh of the unit square conserves area and boundary") {
  const auto S = square_surface();
  const auto M = balanced_triangulation(S, 20);

  CHECK(M.surface_area == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(M.boundary_n == 96);  // 4 unit sides, 24 grid intervals each
  CHECK(*M.mesh.boundary_n == 96);
  CHECK(validate(M.mesh).ok());

  // Boundary edges sit within the plan deviation of epsilon.
  const double eps = M.plan.epsilon;
  for (int v = 0; v < M.boundary_n; ++v) {
    const auto it = M.lengths.find(make_edge(v, (v + 1) % M.boundary_n));
    REQUIRE(it != M.lengths.end());
    CHECK(std::abs(it->second - eps) <= M.plan.deviation + 1e-12);
  }

  // Equilateral-flagged triangles really are equilateral at exactly epsilon.
  std::size_t equilateral = 0;
  for (const Tri& t : M.mesh.triangles) {
    const double a = M.lengths.at(make_edge(t[0], t[1]));
    const double b = M.lengths.at(make_edge(t[1], t[2]));
    const double c = M.lengths.at(make_edge(t[0], t[2]));
    if (a == eps && b == eps && c == eps) ++equilateral;
  }
  CHECK(equilateral == M.equilateral_triangles);
  CHECK(M.equilateral_triangles > M.mesh.triangles.size() / 2);

  // Stitching stays within its capacity bound.
  CHECK(M.annulus_triangles <= M.annulus_capacity);
  CHECK(M.annulus_worst_ratio <= 1.0);

  // Edge length extremes are sane: nothing longer than the refinement
  // threshold, nothing vanishing.
  CHECK(M.max_edge <= eps * 1.25 + M.plan.deviation + 1e-12);
  CHECK(M.min_edge > 0);
}

TEST_CASE("balanced mesh boundary is exact on the equilateral surface") {
  PLSurface S;
  S.triangles = {{{1, 1, 1}}};
  const auto M = balanced_triangulation(S, 12);
  CHECK(M.surface_area == doctest::Approx(std::sqrt(3.0) / 4.0).epsilon(1e-12));
  // Rational sides: zero Dirichlet deviation, boundary edges exact up to the
  // rounding in the final leftover interval (1 - 4 * 0.2 in doubles).
  CHECK(M.plan.deviation == 0.0);
  for (int v = 0; v < M.boundary_n; ++v)
    CHECK(M.lengths.at(make_edge(v, (v + 1) % M.boundary_n)) ==
          doctest::Approx(M.plan.epsilon).epsilon(1e-12));
}

TEST_CASE("mesh lengths satisfy the triangle inequality everywhere") {
  const auto M = balanced_triangulation(square_surface(), 20);
  for (const Tri& t : M.mesh.triangles) {
    const double a = M.lengths.at(make_edge(t[0], t[1]));
    const double b = M.lengths.at(make_edge(t[1], t[2]));
    const double c = M.lengths.at(make_edge(t[0], t[2]));
    CHECK(a + b > c - 1e-12);
    CHECK(b + c > a - 1e-12);
    CHECK(a + c > b - 1e-12);
  }
}

TEST_CASE("hemisphere and disk meshes verify as fillings") {
  for (int target : {48, 96}) {
    const auto S = hemisphere_surface();
    const auto M = balanced_triangulation(S, choose_k(S, target));
    CHECK(validate(M.mesh).ok());
    CHECK(M.boundary_n >= target);
    const auto lr = lipschitz_constant(M.mesh);
    CHECK(lr.delta_achieved.to_double() > 0.8);
  }
  const auto S = disk_surface();
  const auto M = balanced_triangulation(S, choose_k(S, 96));
  CHECK(validate(M.mesh).ok());
  const auto lr = lipschitz_constant(M.mesh);
  CHECK(std::abs(lr.delta_achieved.to_double() - 2.0 / 3.141592653589793) < 0.1);
}

TEST_CASE("choose_k lands near the boundary target") {
  const auto S = square_surface();
  for (int target : {40, 96, 200}) {
    const long long k = choose_k(S, target);
    const auto M = balanced_triangulation(S, k);
    // Within a factor of two is enough: k moves the boundary in coarse jumps.
    CHECK(M.boundary_n >= target / 2);
    CHECK(M.boundary_n <= target * 2);
  }
}

TEST_CASE("to_off emits one vertex per mesh vertex and one face per triangle") {
  const auto M = balanced_triangulation(square_surface(), 20);
  const std::string off = to_off(M);
  CHECK(off.rfind("OFF\n", 0) == 0);
  std::size_t lines = std::count(off.begin(), off.end(), '\n');
  // Header + counts line contributes 2; the rest are vertices and faces.
  CHECK(lines == 2 + static_cast<std::size_t>(M.mesh.num_vertices) + M.mesh.triangles.size());
}
