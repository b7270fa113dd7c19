#pragma once

#include "fillings/rational.hpp"
#include "fillings/triangulation.hpp"

#include <utility>
#include <vector>

namespace fillings {

// Sentinel distance for unreachable vertices.
inline constexpr int kUnreachable = -1;

// Graph distance along the cycle C_n between positions x and y.
int cycle_distance(int n, int x, int y);

// One BFS row per source over the 1-skeleton; dist[i][v] is the hop count
// from sources[i] to v, kUnreachable when v cannot be reached.
std::vector<std::vector<int>> skeleton_distances(const SkeletonGraph& g,
                                                 const std::vector<VertexId>& sources);

struct LipschitzReport {
  Rational delta_achieved{1};
  std::pair<VertexId, VertexId> witness_pair{0, 1};
  bool is_isometric = true;
};

// Largest delta with d_K(x,y) >= delta * d_C(x,y) over boundary pairs, i.e.
// the minimum of d_K/d_C; the witness attains it. Requires a valid complex
// whose boundary is a single cycle. For n = 3 every pair is adjacent and the
// report is delta = 1 with witness (0,1).
LipschitzReport lipschitz_constant(const AbstractTriangulation& K);

// Exact comparison lipschitz_constant(K).delta_achieved >= delta.
bool is_delta_filling(const AbstractTriangulation& K, const Rational& delta);

}  // namespace fillings
