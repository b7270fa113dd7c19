#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "fillings/triangulation.hpp"

namespace fillings {

// ---------------------------------------------------------------------------
// Piecewise-linear surfaces given by triangle side lengths and edge gluings.
// ---------------------------------------------------------------------------

// Side i joins corners i and (i+1) mod 3.
struct PLTriangle {
  std::array<double, 3> side{};
};

struct SideRef {
  int tri = 0;
  int side = 0;
  friend bool operator<(const SideRef& a, const SideRef& b) {
    return a.tri != b.tri ? a.tri < b.tri : a.side < b.side;
  }
  friend bool operator==(const SideRef& a, const SideRef& b) {
    return a.tri == b.tri && a.side == b.side;
  }
};

// Orientation-reversing identification of two sides: corner a.side maps to
// corner (b.side + 1) mod 3 and corner (a.side + 1) mod 3 to corner b.side,
// the way two faces of an oriented surface meet along an edge.
struct Gluing {
  SideRef a, b;
};

struct PLSurface {
  std::vector<PLTriangle> triangles;
  std::vector<Gluing> gluings;
};

// Checks: side indices in range, every side glued at most once and never to
// itself, glued sides equal in length (1e-9 relative), strict triangle
// inequality, and unglued sides forming disjoint closed curves.
ValidationReport validate_surface(const PLSurface& S);

// Corner (t, c) -> surface vertex id after gluing, ids dense and ordered by
// each class's smallest corner.
struct SurfaceVertexMap {
  int count = 0;
  std::vector<std::array<int, 3>> of_corner;  // [tri][corner]
};
SurfaceVertexMap surface_vertex_map(const PLSurface& S);

// ---------------------------------------------------------------------------
// Geometry helpers.
// ---------------------------------------------------------------------------

struct Vec2 {
  double x = 0;
  double y = 0;
};

// Corner coordinates of a triangle laid out from its side lengths: corner 0
// at the origin, corner 1 on the positive x axis, corner 2 above it.
std::array<Vec2, 3> chart_triangle(const PLTriangle& t);

// Numerically careful Heron form (operands sorted before differencing).
double heron_area(double a, double b, double c);

// True when the open segments pq and rs intersect in a single interior point.
bool segments_properly_cross(Vec2 p, Vec2 q, Vec2 r, Vec2 s);

// ---------------------------------------------------------------------------
// Simultaneous rational approximation of the side lengths.
// ---------------------------------------------------------------------------

struct DirichletPlan {
  long long k = 0;
  long long q = 0;            // common denominator, 1 <= q <= k
  long long subdivisions = 0; // L = ceil(k^(1/m) / ln k)
  double epsilon = 0;         // grid unit 1 / (q L)
  double deviation = 0;       // max over sides of |length - p/q|
  int distinct_lengths = 0;   // m, lengths deduplicated bitwise
  std::map<double, long long> numerators;  // distinct length -> p
  // Grid intervals per side of that length: L * p.
  long long intervals_for(double length) const;
};

// Scans q = 1..k for the denominator minimizing the worst distance of q *
// length to an integer (ties to the smaller q); the winner satisfies
// |length - p/q| <= 1/(q k^(1/m)). Throws when some side rounds to p = 0,
// i.e. is shorter than the grid can resolve at this k.
DirichletPlan dirichlet_plan(const PLSurface& S, long long k);

// The k >= 2 whose plan subdivides the surface boundary into a count closest
// to target_boundary (ties to the smaller k). Throws when no plan resolves
// the sides at any k in range.
long long choose_k(const PLSurface& S, int target_boundary);

// ---------------------------------------------------------------------------
// Meshes with edge lengths.
// ---------------------------------------------------------------------------

struct MeshBuild {
  VertexId num_vertices = 0;
  std::vector<Tri> triangles;
  std::map<Edge, double> lengths;
};

// Barycentric-style subdivision that leaves the listed edges whole: a
// triangle with p protected edges becomes 6 - p children (midpoints of the
// unprotected edges plus the centroid). Split edges shared by two triangles
// get one shared midpoint. New edges are never longer than the longer of the
// protected maximum and 2/3 of the longest side.
MeshBuild partial_barycentric(const MeshBuild& in, const std::set<Edge>& protected_edges);

// Repeats the subdivision, each round protecting every edge of length at most
// threshold and passing untouched triangles through, until every edge is
// protected. Conformal: an edge is split in both of its triangles or neither.
MeshBuild refine_to_threshold(const MeshBuild& in, double threshold, int max_rounds = 64);

// ---------------------------------------------------------------------------
// The discretization pipeline.
// ---------------------------------------------------------------------------

struct BalancedMesh {
  AbstractTriangulation mesh;  // boundary relabeled to the cycle 0..n-1
  std::map<Edge, double> lengths;
  DirichletPlan plan;

  int boundary_n = 0;
  std::size_t equilateral_triangles = 0;  // all three sides bitwise epsilon
  double min_edge = 0;
  double max_edge = 0;
  double surface_area = 0;  // Heron sum over mesh triangles
  double vertex_ratio = 0;  // num_vertices / boundary_n^2

  // Stitching layers between each face boundary and its interior grid patch:
  // total triangles produced and the bound 2(|face boundary| + |patch
  // boundary|) summed over faces, plus the worst per-face ratio.
  std::size_t annulus_triangles = 0;
  std::size_t annulus_capacity = 0;
  double annulus_worst_ratio = 0;
};

// Meshes the surface at the grid unit epsilon = 1/(qL) from dirichlet_plan:
// each face gets an equilateral interior grid, face boundaries are cut into
// grid-unit intervals (shared sides identically from both faces), the ring in
// between is stitched by closest-point matching, and oversize stitch edges
// are refined away. Requires a surface with exactly one boundary curve.
BalancedMesh balanced_triangulation(const PLSurface& S, long long k);

// ---------------------------------------------------------------------------
// Built-in surfaces.
// ---------------------------------------------------------------------------

// Cap of a square pyramid: four isosceles faces, lateral edges 2, base edges
// 3/2. A stand-in for a hemisphere cap with Lipschitz constant about 0.93.
PLSurface hemisphere_surface();

// Flat cone of twelve unit-radius sectors with outer chords 1/2; its filling
// ratio approaches the round disk's 2/pi.
PLSurface disk_surface();

// Unit square as two (1, 1, sqrt 2) halves glued along the diagonal.
PLSurface square_surface();

// ASCII OFF snapshot of the mesh, unfolded face by face into the plane
// (overlaps permitted; one coordinate per vertex, first placement wins).
std::string to_off(const BalancedMesh& M);

}  // namespace fillings
