#include "fillings/metrics.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

namespace fillings {

int cycle_distance(int n, int x, int y) {
  if (n < 3) throw std::invalid_argument("cycle_distance requires n >= 3");
  if (x < 0 || x >= n || y < 0 || y >= n) {
    throw std::invalid_argument("cycle_distance vertex out of range");
  }
  const int direct = std::abs(x - y);
  return std::min(direct, n - direct);
}

std::vector<std::vector<int>> skeleton_distances(const SkeletonGraph& g,
                                                 const std::vector<VertexId>& sources) {
  std::vector<std::vector<int>> all;
  all.reserve(sources.size());
  for (const VertexId s : sources) {
    if (s < 0 || s >= g.num_vertices) {
      throw std::invalid_argument("skeleton_distances source out of range");
    }
    std::vector<int> dist(g.num_vertices, kUnreachable);
    std::queue<VertexId> q;
    dist[s] = 0;
    q.push(s);
    while (!q.empty()) {
      const VertexId u = q.front();
      q.pop();
      for (const VertexId w : g.adj[u]) {
        if (dist[w] == kUnreachable) {
          dist[w] = dist[u] + 1;
          q.push(w);
        }
      }
    }
    all.push_back(std::move(dist));
  }
  return all;
}

LipschitzReport lipschitz_constant(const AbstractTriangulation& K) {
  const auto cycles = boundary_cycles(K);
  if (cycles.size() != 1) {
    throw std::invalid_argument("lipschitz_constant requires a single boundary cycle");
  }
  const auto& cycle = cycles.front();
  const int n = static_cast<int>(cycle.size());

  LipschitzReport rep;
  rep.witness_pair = {cycle[0], cycle[1]};
  if (n == 3) return rep;  // all pairs adjacent

  const SkeletonGraph g = skeleton(K);
  const auto dist = skeleton_distances(g, cycle);

  bool have = false;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const int dc = cycle_distance(n, i, j);
      if (dc < 2) continue;  // adjacent pairs always satisfy the bound
      const int dk = dist[i][cycle[j]];
      if (dk == kUnreachable) {
        throw std::invalid_argument("boundary vertices in separate components");
      }
      const Rational ratio(dk, dc);
      if (!have || ratio < rep.delta_achieved) {
        have = true;
        rep.delta_achieved = ratio;
        rep.witness_pair = {cycle[i], cycle[j]};
      }
    }
  }
  rep.is_isometric = rep.delta_achieved >= Rational(1);
  return rep;
}

bool is_delta_filling(const AbstractTriangulation& K, const Rational& delta) {
  return lipschitz_constant(K).delta_achieved >= delta;
}

}  // namespace fillings
