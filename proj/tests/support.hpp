#pragma once

// Shared fixtures and brute-force oracles for the test suite. Everything here
// is deliberately naive: the oracles re-derive answers by exhaustion so the
// optimized library code has something independent to disagree with.

#include "fillings/metrics.hpp"
#include "fillings/triangulation.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <random>
#include <set>
#include <vector>

namespace testsupport {

using fillings::AbstractTriangulation;
using fillings::Edge;
using fillings::Tri;
using fillings::VertexId;

// Random triangulated disk with |V| <= max_vertices, boundary relabeled to
// 0..n-1 in cycle order. Grown by two moves that keep the complex a disk:
// attach a new vertex over a boundary edge, or cut off a boundary ear.
inline AbstractTriangulation random_disk(std::mt19937& rng, int max_vertices) {
  std::vector<VertexId> boundary = {0, 1, 2};
  std::vector<Tri> tris = {fillings::make_tri(0, 1, 2)};
  VertexId next = 3;

  std::set<Edge> edges;
  auto add_tri = [&](VertexId a, VertexId b, VertexId c) {
    tris.push_back(fillings::make_tri(a, b, c));
    edges.insert(fillings::make_edge(a, b));
    edges.insert(fillings::make_edge(b, c));
    edges.insert(fillings::make_edge(a, c));
  };
  edges.insert(fillings::make_edge(0, 1));
  edges.insert(fillings::make_edge(1, 2));
  edges.insert(fillings::make_edge(0, 2));

  const int steps = std::uniform_int_distribution<int>(2, 18)(rng);
  for (int s = 0; s < steps; ++s) {
    const std::size_t b = boundary.size();
    const bool can_grow = next < max_vertices;
    const bool want_ear = b > 3 && std::uniform_int_distribution<int>(0, 2)(rng) == 0;
    if (want_ear || !can_grow) {
      // Ear: triangle over boundary corner i, dropping it from the cycle.
      // Valid only if the chord is brand new.
      std::vector<std::size_t> order(b);
      for (std::size_t i = 0; i < b; ++i) order[i] = i;
      std::shuffle(order.begin(), order.end(), rng);
      bool cut = false;
      for (std::size_t i : order) {
        if (boundary.size() <= 3) break;
        const VertexId prev = boundary[(i + boundary.size() - 1) % boundary.size()];
        const VertexId mid = boundary[i];
        const VertexId nxt = boundary[(i + 1) % boundary.size()];
        if (prev == nxt || edges.count(fillings::make_edge(prev, nxt))) continue;
        add_tri(prev, mid, nxt);
        boundary.erase(boundary.begin() + static_cast<long>(i));
        cut = true;
        break;
      }
      if (cut || !can_grow) continue;
    }
    // Grow: new vertex over a random boundary edge.
    const std::size_t i = std::uniform_int_distribution<std::size_t>(0, b - 1)(rng);
    const VertexId u = boundary[i];
    const VertexId v = boundary[(i + 1) % b];
    add_tri(u, v, next);
    boundary.insert(boundary.begin() + static_cast<long>(i) + 1, next);
    ++next;
  }

  // Relabel so the boundary cycle is 0..n-1 in order and interiors follow.
  const auto n = static_cast<VertexId>(boundary.size());
  std::vector<VertexId> relabel(static_cast<std::size_t>(next), -1);
  for (VertexId i = 0; i < n; ++i) relabel[static_cast<std::size_t>(boundary[i])] = i;
  VertexId id = n;
  for (VertexId v = 0; v < next; ++v)
    if (relabel[static_cast<std::size_t>(v)] < 0) relabel[static_cast<std::size_t>(v)] = id++;
  std::vector<Tri> out;
  out.reserve(tris.size());
  for (const Tri& t : tris)
    out.push_back(fillings::make_tri(relabel[static_cast<std::size_t>(t[0])],
                                     relabel[static_cast<std::size_t>(t[1])],
                                     relabel[static_cast<std::size_t>(t[2])]));
  return AbstractTriangulation::from_triples(next, std::move(out), n);
}

// Does removing `removed` disconnect every `from` vertex from every `to`
// vertex in the 1-skeleton? x and y are always removed as well.
inline bool separates(const fillings::SkeletonGraph& g, VertexId x, VertexId y,
                      const std::vector<VertexId>& from, const std::vector<VertexId>& to,
                      const std::vector<VertexId>& removed) {
  std::vector<char> blocked(static_cast<std::size_t>(g.num_vertices), 0);
  blocked[static_cast<std::size_t>(x)] = blocked[static_cast<std::size_t>(y)] = 1;
  for (VertexId v : removed) blocked[static_cast<std::size_t>(v)] = 1;
  std::vector<char> seen(static_cast<std::size_t>(g.num_vertices), 0);
  std::queue<VertexId> q;
  for (VertexId v : from)
    if (!blocked[static_cast<std::size_t>(v)]) {
      seen[static_cast<std::size_t>(v)] = 1;
      q.push(v);
    }
  while (!q.empty()) {
    const VertexId u = q.front();
    q.pop();
    for (VertexId w : g.adj[static_cast<std::size_t>(u)])
      if (!blocked[static_cast<std::size_t>(w)] && !seen[static_cast<std::size_t>(w)]) {
        seen[static_cast<std::size_t>(w)] = 1;
        q.push(w);
      }
  }
  for (VertexId v : to)
    if (seen[static_cast<std::size_t>(v)]) return false;
  return true;
}

// Smallest separator size found by exhausting all vertex subsets of size
// < limit; returns limit when none of them separates.
inline int min_separator_by_exhaustion(const fillings::SkeletonGraph& g, VertexId x,
                                       VertexId y, const std::vector<VertexId>& from,
                                       const std::vector<VertexId>& to, int limit) {
  std::vector<VertexId> pool;
  for (VertexId v = 0; v < g.num_vertices; ++v)
    if (v != x && v != y) pool.push_back(v);
  for (int size = 0; size < limit; ++size) {
    std::vector<int> idx(static_cast<std::size_t>(size));
    for (int i = 0; i < size; ++i) idx[static_cast<std::size_t>(i)] = i;
    while (true) {
      std::vector<VertexId> subset;
      for (int i : idx) subset.push_back(pool[static_cast<std::size_t>(i)]);
      if (separates(g, x, y, from, to, subset)) return size;
      int j = size - 1;
      while (j >= 0 && idx[static_cast<std::size_t>(j)] ==
                           static_cast<int>(pool.size()) - size + j)
        --j;
      if (j < 0) break;
      ++idx[static_cast<std::size_t>(j)];
      for (int i = j + 1; i < size; ++i)
        idx[static_cast<std::size_t>(i)] = idx[static_cast<std::size_t>(i - 1)] + 1;
    }
  }
  return limit;
}

// All non-adjacent boundary pairs of an n-cycle.
inline std::vector<std::pair<VertexId, VertexId>> nonadjacent_pairs(int n) {
  std::vector<std::pair<VertexId, VertexId>> out;
  for (VertexId x = 0; x < n; ++x)
    for (VertexId y = x + 1; y < n; ++y)
      if (fillings::cycle_distance(n, x, y) >= 2) out.emplace_back(x, y);
  return out;
}

}  // namespace testsupport
