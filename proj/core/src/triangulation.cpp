#include "fillings/triangulation.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <stdexcept>

namespace fillings {

Tri make_tri(VertexId a, VertexId b, VertexId c) {
  Tri t{a, b, c};
  std::sort(t.begin(), t.end());
  return t;
}

Edge make_edge(VertexId a, VertexId b) {
  return a < b ? Edge{a, b} : Edge{b, a};
}

AbstractTriangulation AbstractTriangulation::from_triples(
    VertexId num_vertices, std::vector<Tri> triples, std::optional<VertexId> boundary_n) {
  AbstractTriangulation K;
  K.num_vertices = num_vertices;
  for (auto& t : triples) {
    std::sort(t.begin(), t.end());
    // Semantic problems (edge multiplicity, boundary shape, ...) are validate()'s
    // job, but a triple that is not even a triangle is rejected at construction.
    if (t[0] == t[1] || t[1] == t[2]) {
      throw std::invalid_argument("triple {" + std::to_string(t[0]) + "," +
                                  std::to_string(t[1]) + "," + std::to_string(t[2]) +
                                  "} repeats a vertex");
    }
    if (t[0] < 0 || t[2] >= num_vertices) {
      throw std::invalid_argument("triple {" + std::to_string(t[0]) + "," +
                                  std::to_string(t[1]) + "," + std::to_string(t[2]) +
                                  "} lies outside the vertex range");
    }
  }
  std::sort(triples.begin(), triples.end());
  K.triangles = std::move(triples);
  K.boundary_n = boundary_n;
  return K;
}

std::map<Edge, std::vector<int>> edge_uses(const AbstractTriangulation& K) {
  std::map<Edge, std::vector<int>> uses;
  for (int i = 0; i < static_cast<int>(K.triangles.size()); ++i) {
    const Tri& t = K.triangles[i];
    uses[make_edge(t[0], t[1])].push_back(i);
    uses[make_edge(t[0], t[2])].push_back(i);
    uses[make_edge(t[1], t[2])].push_back(i);
  }
  return uses;
}

namespace {

std::string tri_str(const Tri& t) {
  return "{" + std::to_string(t[0]) + "," + std::to_string(t[1]) + "," +
         std::to_string(t[2]) + "}";
}

std::string edge_str(const Edge& e) {
  return "{" + std::to_string(e.first) + "," + std::to_string(e.second) + "}";
}

// Boundary edges chained into cycles; returns nullopt when some vertex of the
// boundary subgraph does not have degree exactly two.
std::optional<std::vector<std::vector<VertexId>>> chain_boundary(
    const AbstractTriangulation& K) {
  std::map<VertexId, std::vector<VertexId>> bnd_adj;
  for (const auto& [e, tris] : edge_uses(K)) {
    if (tris.size() == 1) {
      bnd_adj[e.first].push_back(e.second);
      bnd_adj[e.second].push_back(e.first);
    }
  }
  for (auto& [v, nb] : bnd_adj) {
    if (nb.size() != 2) return std::nullopt;
    std::sort(nb.begin(), nb.end());
  }
  std::vector<std::vector<VertexId>> cycles;
  std::set<VertexId> seen;
  for (const auto& [start, nb] : bnd_adj) {
    if (seen.count(start)) continue;
    std::vector<VertexId> cycle{start};
    seen.insert(start);
    VertexId prev = start;
    VertexId cur = nb[0];  // smaller neighbour second: canonical rotation
    while (cur != start) {
      cycle.push_back(cur);
      seen.insert(cur);
      const auto& two = bnd_adj.at(cur);
      const VertexId next = two[0] == prev ? two[1] : two[0];
      prev = cur;
      cur = next;
    }
    cycles.push_back(std::move(cycle));
  }
  return cycles;
}

}  // namespace

ValidationReport validate(const AbstractTriangulation& K) {
  ValidationReport rep;
  const auto violation = [&rep](std::string code, std::string msg) {
    rep.violations.push_back({std::move(code), std::move(msg)});
  };

  if (K.boundary_n && *K.boundary_n < 3) {
    violation("boundary-tag-range",
              "boundary_n = " + std::to_string(*K.boundary_n) + " is below 3");
    return rep;
  }

  bool triples_ok = true;
  for (const Tri& t : K.triangles) {
    if (t[0] == t[1] || t[1] == t[2]) {
      violation("degenerate-triple", "repeated vertex in " + tri_str(t));
      triples_ok = false;
    }
    if (t[0] < 0 || t[2] >= K.num_vertices) {
      violation("vertex-range", "out-of-range vertex in " + tri_str(t));
      triples_ok = false;
    }
  }
  for (size_t i = 0; i + 1 < K.triangles.size(); ++i) {
    if (K.triangles[i] == K.triangles[i + 1]) {
      violation("duplicate-triple", "triple " + tri_str(K.triangles[i]) + " repeated");
      triples_ok = false;
    }
  }
  if (!triples_ok) return rep;  // derived data below assumes sane triples

  std::vector<bool> used(K.num_vertices, false);
  for (const Tri& t : K.triangles)
    for (VertexId v : t) used[v] = true;
  for (VertexId v = 0; v < K.num_vertices; ++v) {
    if (!used[v]) violation("isolated-vertex", "vertex " + std::to_string(v) + " unused");
  }

  bool mult_ok = true;
  for (const auto& [e, tris] : edge_uses(K)) {
    if (tris.size() > 2) {
      violation("edge-multiplicity", "edge " + edge_str(e) + " lies in " +
                                         std::to_string(tris.size()) + " triangles");
      mult_ok = false;
    }
  }

  if (mult_ok) {
    const auto cycles = chain_boundary(K);
    if (!cycles) {
      violation("boundary-shape", "boundary edges do not decompose into disjoint cycles");
    } else if (K.boundary_n) {
      const VertexId n = *K.boundary_n;
      bool tag_ok = cycles->size() == 1 && static_cast<VertexId>(cycles->front().size()) == n;
      if (tag_ok) {
        // Canonical rotation of the claimed cycle 0,1,...,n-1 is itself.
        const auto& c = cycles->front();
        for (VertexId i = 0; i < n && tag_ok; ++i) tag_ok = c[i] == i;
      }
      if (!tag_ok) {
        violation("boundary-tag",
                  "boundary is not the single cycle 0.." + std::to_string(n - 1));
      }
    }
  }

  // Connectivity of the 1-skeleton: reported, not rejected.
  if (K.num_vertices > 0 && !K.triangles.empty()) {
    const SkeletonGraph g = skeleton(K);
    std::vector<bool> reach(K.num_vertices, false);
    std::queue<VertexId> q;
    q.push(K.triangles.front()[0]);
    reach[K.triangles.front()[0]] = true;
    while (!q.empty()) {
      const VertexId u = q.front();
      q.pop();
      for (VertexId w : g.adj[u])
        if (!reach[w]) {
          reach[w] = true;
          q.push(w);
        }
    }
    for (VertexId v = 0; v < K.num_vertices; ++v) {
      if (used[v] && !reach[v]) {
        rep.warnings.push_back({"disconnected", "1-skeleton is disconnected"});
        break;
      }
    }
  }
  return rep;
}

std::vector<std::vector<VertexId>> boundary_cycles(const AbstractTriangulation& K) {
  auto cycles = chain_boundary(K);
  if (!cycles) throw std::invalid_argument("boundary edges do not form disjoint cycles");
  std::sort(cycles->begin(), cycles->end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return *cycles;
}

SkeletonGraph skeleton(const AbstractTriangulation& K) {
  SkeletonGraph g;
  g.num_vertices = K.num_vertices;
  g.adj.assign(K.num_vertices, {});
  std::set<Edge> edges;
  for (const Tri& t : K.triangles) {
    edges.insert(make_edge(t[0], t[1]));
    edges.insert(make_edge(t[0], t[2]));
    edges.insert(make_edge(t[1], t[2]));
  }
  for (const auto& [a, b] : edges) {
    g.adj[a].push_back(b);
    g.adj[b].push_back(a);
  }
  for (auto& nb : g.adj) std::sort(nb.begin(), nb.end());
  return g;
}

AbstractTriangulation close_boundary(const AbstractTriangulation& K) {
  const auto cycles = boundary_cycles(K);
  if (cycles.size() != 1) {
    throw std::invalid_argument("close_boundary requires a single boundary cycle");
  }
  const auto& cycle = cycles.front();
  const int n = static_cast<int>(cycle.size());

  for (int offset = 0; offset < n; ++offset) {
    const VertexId apex = cycle[offset];
    std::vector<Tri> fan;
    for (int i = 1; i + 1 < n; ++i) {
      fan.push_back(make_tri(apex, cycle[(offset + i) % n], cycle[(offset + i + 1) % n]));
    }
    std::vector<Tri> all = K.triangles;
    all.insert(all.end(), fan.begin(), fan.end());
    AbstractTriangulation closed =
        AbstractTriangulation::from_triples(K.num_vertices, std::move(all), std::nullopt);
    bool ok = true;
    for (const auto& [e, tris] : edge_uses(closed)) {
      if (tris.size() != 2) {
        ok = false;
        break;
      }
    }
    if (ok) return closed;
  }
  throw std::invalid_argument("no fan closure keeps every edge in two triangles");
}

int euler_characteristic(const AbstractTriangulation& K) {
  std::set<Edge> edges;
  for (const Tri& t : K.triangles) {
    edges.insert(make_edge(t[0], t[1]));
    edges.insert(make_edge(t[0], t[2]));
    edges.insert(make_edge(t[1], t[2]));
  }
  return static_cast<int>(K.num_vertices) - static_cast<int>(edges.size()) +
         static_cast<int>(K.triangles.size());
}

namespace {

// Explores every breadth-first labeling consistent with fixed boundary labels
// and keeps the lexicographically smallest relabeled triangle list.
class CanonicalSearch {
 public:
  CanonicalSearch(const AbstractTriangulation& K, const SkeletonGraph& g)
      : K_(K), g_(g), V_(K.num_vertices) {}

  void run(const std::vector<VertexId>& boundary_labels, std::vector<Tri>& best,
           bool& have_best) {
    label_.assign(V_, -1);
    old_of_.assign(V_, -1);
    const VertexId n = static_cast<VertexId>(boundary_labels.size());
    for (VertexId b = 0; b < n; ++b) {
      label_[b] = boundary_labels[b];
      old_of_[boundary_labels[b]] = b;
    }
    next_ = n;
    best_ = &best;
    have_best_ = &have_best;
    expand(0);
  }

 private:
  void expand(VertexId i) {
    if (i == V_) {
      finalize();
      return;
    }
    if (i >= next_) {
      // Not reachable from the boundary: branch over every leftover vertex.
      for (VertexId w = 0; w < V_; ++w) {
        if (label_[w] != -1) continue;
        assign(w);
        expand(i);
        unassign(w);
      }
      return;
    }
    const VertexId u = old_of_[i];
    std::vector<VertexId> fresh;
    for (VertexId w : g_.adj[u])
      if (label_[w] == -1) fresh.push_back(w);
    if (fresh.empty()) {
      expand(i + 1);
      return;
    }
    std::sort(fresh.begin(), fresh.end());
    do {
      for (VertexId w : fresh) assign(w);
      expand(i + 1);
      for (VertexId w : fresh) unassign(w);
    } while (std::next_permutation(fresh.begin(), fresh.end()));
  }

  void assign(VertexId w) {
    label_[w] = next_;
    old_of_[next_] = w;
    ++next_;
  }

  void unassign(VertexId w) {
    --next_;
    old_of_[next_] = -1;
    label_[w] = -1;
  }

  void finalize() {
    std::vector<Tri> relabeled;
    relabeled.reserve(K_.triangles.size());
    for (const Tri& t : K_.triangles)
      relabeled.push_back(make_tri(label_[t[0]], label_[t[1]], label_[t[2]]));
    std::sort(relabeled.begin(), relabeled.end());
    if (!*have_best_ || relabeled < *best_) {
      *best_ = std::move(relabeled);
      *have_best_ = true;
    }
  }

  const AbstractTriangulation& K_;
  const SkeletonGraph& g_;
  VertexId V_;
  std::vector<VertexId> label_;   // old -> new, -1 unassigned
  std::vector<VertexId> old_of_;  // new -> old
  VertexId next_ = 0;
  std::vector<Tri>* best_ = nullptr;
  bool* have_best_ = nullptr;
};

}  // namespace

std::string canonical_form(const AbstractTriangulation& K) {
  if (!K.boundary_n) throw std::invalid_argument("canonical_form requires boundary_n");
  const VertexId n = *K.boundary_n;
  const SkeletonGraph g = skeleton(K);

  std::vector<Tri> best;
  bool have_best = false;
  CanonicalSearch search(K, g);
  std::vector<VertexId> labels(n);
  for (VertexId r = 0; r < n; ++r) {
    for (int sign : {1, -1}) {
      for (VertexId b = 0; b < n; ++b) {
        labels[b] = ((r + sign * b) % n + n) % n;
      }
      search.run(labels, best, have_best);
    }
  }

  std::string code = std::to_string(n) + "|" + std::to_string(K.num_vertices) + "|";
  for (const Tri& t : best) {
    code += std::to_string(t[0]) + "," + std::to_string(t[1]) + "," +
            std::to_string(t[2]) + ";";
  }
  return code;
}

}  // namespace fillings
