#pragma once

#include "fillings/triangulation.hpp"

#include <stdexcept>
#include <vector>

namespace fillings {

// The two boundary arcs strictly between a non-adjacent boundary pair x, y:
// left is the arc in increasing cycle direction from x to y, right the other.
struct CutInstance {
  VertexId x = 0;
  VertexId y = 0;
  std::vector<VertexId> left;
  std::vector<VertexId> right;
};

CutInstance make_cut_instance(const AbstractTriangulation& K, VertexId x, VertexId y);

// Vertex-disjoint left-right paths together with a minimum vertex separator
// of matching size (Menger duality); both live in skeleton(K) - x - y.
struct MengerCertificate {
  std::vector<std::vector<VertexId>> paths;  // each from a left to a right vertex
  std::vector<VertexId> separator;           // sorted ascending
};

// Unit-vertex-capacity max flow (vertex splitting) from the left arc to the
// right arc. The separator is read off the sink side of the final residual
// graph; path extraction follows flow arcs with lowest-index tie-breaking,
// so the certificate is deterministic.
MengerCertificate max_disjoint_paths(const AbstractTriangulation& K,
                                     const CutInstance& inst);

// Complex with its (single) boundary cycle tracked explicitly; produced by
// pad_boundary, whose relabeled boundary no longer matches a boundary tag.
struct PaddedComplex {
  AbstractTriangulation complex;
  std::vector<VertexId> boundary;  // cycle order
};

// For each boundary vertex l in S, attaches a fresh vertex l' onto the two
// boundary edges at l (two new triangles), so l leaves the boundary and l'
// replaces it in the cycle. Fresh vertices take indices from |V(K)| upward.
// After padding no separator vertex lies on the boundary.
PaddedComplex pad_boundary(const AbstractTriangulation& K,
                           const std::vector<VertexId>& S);

struct SpernerWalk {
  std::vector<VertexId> walk;  // x ... y, interior vertices all in S
};

// Thrown when S fails to separate; carries one offending left-right path.
class SeparationError : public std::invalid_argument {
 public:
  SeparationError(const std::string& msg, std::vector<VertexId> path)
      : std::invalid_argument(msg), witness_path(std::move(path)) {}
  std::vector<VertexId> witness_path;
};

// Three-coloring walk construction: blue = S + {x,y}, red = reachable from
// the right arc avoiding blue, green = the rest. In the auxiliary graph on
// triangles plus an exterior node (edges where a complex edge has one red and
// one blue endpoint) every triangle has degree 0 or 2 and the exterior has
// degree exactly 2, so the component through the exterior is a cycle; the
// blue endpoints of the crossed edges, consecutive duplicates removed, form
// a walk from x to y whose interior vertices all lie in S. Degree violations
// raise std::logic_error; a non-separating S raises SeparationError.
SpernerWalk sperner_walk(const AbstractTriangulation& K, VertexId x, VertexId y,
                         const std::vector<VertexId>& S);

// Removes loops, leaving a simple path with the same endpoints.
std::vector<VertexId> simplify_walk(const std::vector<VertexId>& walk);

}  // namespace fillings
