#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace fillings {

using VertexId = std::int32_t;

// Unordered vertex triple, stored ascending.
using Tri = std::array<VertexId, 3>;
// Unordered vertex pair, stored ascending.
using Edge = std::pair<VertexId, VertexId>;

Tri make_tri(VertexId a, VertexId b, VertexId c);
Edge make_edge(VertexId a, VertexId b);

// A two-dimensional abstract simplicial complex given by its triangle list.
// Vertices are dense indices in [0, num_vertices). When boundary_n is set the
// complex claims boundary equal to the cycle 0-1-...-(n-1)-0; validate()
// checks the claim.
struct AbstractTriangulation {
  VertexId num_vertices = 0;
  std::vector<Tri> triangles;  // each triple ascending; list kept sorted
  std::optional<VertexId> boundary_n;

  // Sorts each triple and the list. Throws std::invalid_argument when a triple
  // repeats a vertex or leaves the vertex range; everything validate() merely
  // flags is still constructible.
  static AbstractTriangulation from_triples(VertexId num_vertices,
                                            std::vector<Tri> triples,
                                            std::optional<VertexId> boundary_n);
};

struct ValidationIssue {
  std::string code;     // stable machine-readable tag, e.g. "edge-multiplicity"
  std::string message;  // human-readable, includes the offending simplex
};

struct ValidationReport {
  std::vector<ValidationIssue> violations;
  std::vector<ValidationIssue> warnings;  // reported but not fatal
  bool ok() const { return violations.empty(); }
};

// Checks: triples have three distinct in-range vertices, no duplicate triples,
// every edge lies in one or two triangles, boundary edges decompose into
// disjoint cycles, every vertex is used, and (when boundary_n is set) the
// boundary is the single claimed cycle. A disconnected 1-skeleton is reported
// as a warning, not a violation.
ValidationReport validate(const AbstractTriangulation& K);

// Edge -> indices of incident triangles (sorted key order).
std::map<Edge, std::vector<int>> edge_uses(const AbstractTriangulation& K);

// Boundary cycles (edges in exactly one triangle), each rotated so the
// smallest vertex comes first followed by its smaller neighbour.
// Requires a complex whose boundary edges form disjoint cycles.
std::vector<std::vector<VertexId>> boundary_cycles(const AbstractTriangulation& K);

// 1-skeleton adjacency, lists sorted ascending.
struct SkeletonGraph {
  VertexId num_vertices = 0;
  std::vector<std::vector<VertexId>> adj;
};
SkeletonGraph skeleton(const AbstractTriangulation& K);

// Closes the unique boundary cycle with a fan of n-2 triangles. The apex is
// the first cycle vertex for which the closure keeps every edge in exactly
// two triangles; candidates are tried in canonical cycle order. For n = 3 the
// closure doubles the existing triangle. Throws std::invalid_argument when no
// apex works or the boundary is not a single cycle.
AbstractTriangulation close_boundary(const AbstractTriangulation& K);

// V - E + T with derived edges (triangle multiset counted as given).
int euler_characteristic(const AbstractTriangulation& K);

// Canonical byte string: minimum over the 2n dihedral relabelings of the
// boundary cycle, with interior vertices assigned labels in breadth-first
// discovery order (all tie orders explored). Equal strings iff the complexes
// are isomorphic through a boundary-respecting relabeling. Requires a valid
// complex with boundary_n set.
std::string canonical_form(const AbstractTriangulation& K);

}  // namespace fillings
