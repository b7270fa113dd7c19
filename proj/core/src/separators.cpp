#include "fillings/separators.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <queue>
#include <set>

namespace fillings {

namespace {

std::vector<VertexId> single_boundary_cycle(const AbstractTriangulation& K) {
  auto cycles = boundary_cycles(K);
  if (cycles.size() != 1) {
    throw std::invalid_argument("cut instances need a single boundary cycle");
  }
  return std::move(cycles.front());
}

int cycle_position(const std::vector<VertexId>& cycle, VertexId v) {
  const auto it = std::find(cycle.begin(), cycle.end(), v);
  if (it == cycle.end()) throw std::invalid_argument("vertex not on the boundary cycle");
  return static_cast<int>(it - cycle.begin());
}

// Dinic on unit-capacity split vertices. Node 2v is v_in, 2v+1 is v_out;
// the last two nodes are source and sink.
class UnitVertexFlow {
 public:
  explicit UnitVertexFlow(int num_vertices)
      : node_count_(2 * num_vertices + 2),
        source_(2 * num_vertices),
        sink_(2 * num_vertices + 1),
        head_(node_count_) {}

  int source() const { return source_; }
  int sink() const { return sink_; }
  static int in_node(VertexId v) { return 2 * v; }
  static int out_node(VertexId v) { return 2 * v + 1; }

  void add_arc(int from, int to, int cap) {
    head_[from].push_back(static_cast<int>(arcs_.size()));
    arcs_.push_back({to, cap});
    head_[to].push_back(static_cast<int>(arcs_.size()));
    arcs_.push_back({from, 0});
  }

  int max_flow() {
    int total = 0;
    while (bfs_levels()) {
      iter_.assign(node_count_, 0);
      while (int pushed = dfs_push(source_, std::numeric_limits<int>::max())) {
        total += pushed;
      }
    }
    return total;
  }

  // After max_flow: flow on a forward arc (head_ lists also hold the odd
  // reverse stubs, so callers must test is_forward first).
  static bool is_forward(int a) { return (a & 1) == 0; }
  int flow_on(int a) const { return arcs_[a ^ 1].cap; }
  int arc_to(int a) const { return arcs_[a].to; }
  const std::vector<int>& out_arcs(int node) const { return head_[node]; }

  // Nodes that reach the sink in the residual graph.
  std::vector<bool> sink_side() const {
    // Reverse residual search: arc (u -> v, residual > 0) lets u reach v, so
    // walk backwards from the sink over such arcs.
    std::vector<std::vector<int>> rev(node_count_);
    for (int a = 0; a < static_cast<int>(arcs_.size()); ++a) {
      if (arcs_[a].cap > 0) rev[arcs_[a].to].push_back(a);
    }
    std::vector<bool> seen(node_count_, false);
    std::queue<int> q;
    seen[sink_] = true;
    q.push(sink_);
    while (!q.empty()) {
      const int v = q.front();
      q.pop();
      for (const int a : rev[v]) {
        const int u = arcs_[a ^ 1].to;  // tail of arc a
        if (!seen[u]) {
          seen[u] = true;
          q.push(u);
        }
      }
    }
    return seen;
  }

 private:
  struct Arc {
    int to;
    int cap;
  };

  bool bfs_levels() {
    level_.assign(node_count_, -1);
    std::queue<int> q;
    level_[source_] = 0;
    q.push(source_);
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (const int a : head_[u]) {
        if (arcs_[a].cap > 0 && level_[arcs_[a].to] == -1) {
          level_[arcs_[a].to] = level_[u] + 1;
          q.push(arcs_[a].to);
        }
      }
    }
    return level_[sink_] != -1;
  }

  int dfs_push(int u, int limit) {
    if (u == sink_) return limit;
    for (int& i = iter_[u]; i < static_cast<int>(head_[u].size()); ++i) {
      const int a = head_[u][i];
      const Arc& arc = arcs_[a];
      if (arc.cap > 0 && level_[arc.to] == level_[u] + 1) {
        const int pushed = dfs_push(arc.to, std::min(limit, arc.cap));
        if (pushed > 0) {
          arcs_[a].cap -= pushed;
          arcs_[a ^ 1].cap += pushed;
          return pushed;
        }
      }
    }
    return 0;
  }

  int node_count_;
  int source_;
  int sink_;
  std::vector<Arc> arcs_;
  std::vector<std::vector<int>> head_;
  std::vector<int> level_;
  std::vector<int> iter_;
};

constexpr int kInf = std::numeric_limits<int>::max() / 4;

}  // namespace

CutInstance make_cut_instance(const AbstractTriangulation& K, VertexId x, VertexId y) {
  const auto cycle = single_boundary_cycle(K);
  const int n = static_cast<int>(cycle.size());
  const int px = cycle_position(cycle, x);
  const int py = cycle_position(cycle, y);
  const int gap = std::abs(px - py);
  if (gap == 0 || gap == 1 || gap == n - 1) {
    throw std::invalid_argument("x and y must be non-adjacent on the boundary cycle");
  }
  CutInstance inst;
  inst.x = x;
  inst.y = y;
  for (int p = (px + 1) % n; p != py; p = (p + 1) % n) inst.left.push_back(cycle[p]);
  for (int p = (py + 1) % n; p != px; p = (p + 1) % n) inst.right.push_back(cycle[p]);
  return inst;
}

MengerCertificate max_disjoint_paths(const AbstractTriangulation& K,
                                     const CutInstance& inst) {
  const SkeletonGraph g = skeleton(K);
  const VertexId V = K.num_vertices;
  UnitVertexFlow net(V);

  std::vector<bool> removed(V, false);
  removed[inst.x] = removed[inst.y] = true;

  for (VertexId v = 0; v < V; ++v) {
    if (!removed[v]) net.add_arc(UnitVertexFlow::in_node(v), UnitVertexFlow::out_node(v), 1);
  }
  for (VertexId u = 0; u < V; ++u) {
    if (removed[u]) continue;
    for (const VertexId w : g.adj[u]) {
      if (w == u || removed[w]) continue;
      net.add_arc(UnitVertexFlow::out_node(u), UnitVertexFlow::in_node(w), kInf);
    }
  }
  for (const VertexId l : inst.left) net.add_arc(net.source(), UnitVertexFlow::in_node(l), kInf);
  for (const VertexId r : inst.right) net.add_arc(UnitVertexFlow::out_node(r), net.sink(), kInf);

  const int flow = net.max_flow();

  MengerCertificate cert;

  // Paths: walk saturated arcs from each used left vertex; unit vertex
  // capacity makes the continuation unique.
  std::set<VertexId> right_set(inst.right.begin(), inst.right.end());
  std::vector<VertexId> lefts = inst.left;
  std::sort(lefts.begin(), lefts.end());
  for (const VertexId l : lefts) {
    bool used = false;
    for (const int a : net.out_arcs(UnitVertexFlow::in_node(l))) {
      if (!UnitVertexFlow::is_forward(a)) continue;
      if (net.arc_to(a) == UnitVertexFlow::out_node(l) && net.flow_on(a) > 0) used = true;
    }
    // Skip left vertices whose unit was injected but routed from elsewhere:
    // source arcs identify the true path starts.
    bool started = false;
    for (const int a : net.out_arcs(net.source())) {
      if (!UnitVertexFlow::is_forward(a)) continue;
      if (net.arc_to(a) == UnitVertexFlow::in_node(l) && net.flow_on(a) > 0) started = true;
    }
    if (!used || !started) continue;

    std::vector<VertexId> path{l};
    VertexId cur = l;
    while (!right_set.count(cur) || [&] {
      // A right vertex ends the path only when its unit exits to the sink.
      for (const int a : net.out_arcs(UnitVertexFlow::out_node(cur))) {
        if (!UnitVertexFlow::is_forward(a)) continue;
        if (net.arc_to(a) == net.sink() && net.flow_on(a) > 0) return false;
      }
      return true;
    }()) {
      VertexId next = -1;
      for (const int a : net.out_arcs(UnitVertexFlow::out_node(cur))) {
        if (!UnitVertexFlow::is_forward(a)) continue;
        const int to = net.arc_to(a);
        if (to != net.sink() && net.flow_on(a) > 0) {
          const VertexId w = static_cast<VertexId>(to / 2);
          if (next == -1 || w < next) next = w;
        }
      }
      if (next == -1) throw std::logic_error("flow decomposition lost a path");
      path.push_back(next);
      cur = next;
    }
    cert.paths.push_back(std::move(path));
  }

  const auto sink_side = net.sink_side();
  for (VertexId v = 0; v < V; ++v) {
    if (removed[v]) continue;
    if (sink_side[UnitVertexFlow::out_node(v)] && !sink_side[UnitVertexFlow::in_node(v)]) {
      cert.separator.push_back(v);
    }
  }

  if (static_cast<int>(cert.paths.size()) != flow ||
      static_cast<int>(cert.separator.size()) != flow) {
    throw std::logic_error("Menger certificate sizes disagree with the max flow");
  }
  return cert;
}

PaddedComplex pad_boundary(const AbstractTriangulation& K, const std::vector<VertexId>& S) {
  PaddedComplex out;
  out.boundary = single_boundary_cycle(K);
  std::vector<Tri> tris = K.triangles;
  VertexId next = K.num_vertices;
  const std::set<VertexId> in_S(S.begin(), S.end());

  for (size_t i = 0; i < out.boundary.size(); ++i) {
    const VertexId l = out.boundary[i];
    if (!in_S.count(l)) continue;
    const size_t m = out.boundary.size();
    const VertexId a = out.boundary[(i + m - 1) % m];
    const VertexId b = out.boundary[(i + 1) % m];
    const VertexId fresh = next++;
    tris.push_back(make_tri(fresh, a, l));
    tris.push_back(make_tri(fresh, l, b));
    out.boundary[i] = fresh;  // l leaves the boundary, l' replaces it
  }
  out.complex = AbstractTriangulation::from_triples(next, std::move(tris), std::nullopt);
  return out;
}

SpernerWalk sperner_walk(const AbstractTriangulation& K, VertexId x, VertexId y,
                         const std::vector<VertexId>& S) {
  const CutInstance inst = make_cut_instance(K, x, y);
  const std::set<VertexId> sep(S.begin(), S.end());
  if (sep.count(x) || sep.count(y)) {
    throw std::invalid_argument("separator may not contain x or y");
  }

  // Separation check with witness extraction.
  {
    const SkeletonGraph g = skeleton(K);
    std::vector<VertexId> parent(K.num_vertices, -2);
    std::queue<VertexId> q;
    for (const VertexId r : inst.right) {
      if (!sep.count(r)) {
        parent[r] = -1;
        q.push(r);
      }
    }
    while (!q.empty()) {
      const VertexId u = q.front();
      q.pop();
      for (const VertexId w : g.adj[u]) {
        if (w == x || w == y || sep.count(w) || parent[w] != -2) continue;
        parent[w] = u;
        q.push(w);
      }
    }
    for (const VertexId l : inst.left) {
      if (parent[l] == -2 || sep.count(l)) continue;
      std::vector<VertexId> path;
      for (VertexId v = l; v != -1; v = parent[v]) path.push_back(v);
      throw SeparationError("S does not separate the boundary arcs", std::move(path));
    }
  }

  const PaddedComplex padded = pad_boundary(K, S);
  const AbstractTriangulation& P = padded.complex;
  const SkeletonGraph g = skeleton(P);

  // Right arc of the padded boundary: original right vertices, padded ones
  // replaced in place, so recompute membership through cycle positions.
  const auto& cycle = padded.boundary;
  const int n = static_cast<int>(cycle.size());
  const int px = cycle_position(cycle, x);
  const int py = cycle_position(cycle, y);
  std::vector<VertexId> right_arc;
  for (int p = (py + 1) % n; p != px; p = (p + 1) % n) right_arc.push_back(cycle[p]);

  enum Color : unsigned char { kGreen, kRed, kBlue };
  std::vector<Color> color(P.num_vertices, kGreen);
  for (const VertexId s : S) color[s] = kBlue;
  color[x] = color[y] = kBlue;
  {
    std::queue<VertexId> q;
    for (const VertexId r : right_arc) {
      if (color[r] == kGreen) {
        color[r] = kRed;
        q.push(r);
      }
    }
    while (!q.empty()) {
      const VertexId u = q.front();
      q.pop();
      for (const VertexId w : g.adj[u]) {
        if (color[w] == kGreen) {
          color[w] = kRed;
          q.push(w);
        }
      }
    }
  }

  // Auxiliary graph: triangles plus exterior node, connected across red-blue
  // edges. aux[t] collects (crossed edge, neighbour node).
  const int exterior = static_cast<int>(P.triangles.size());
  std::vector<std::vector<std::pair<Edge, int>>> aux(P.triangles.size() + 1);
  for (const auto& [e, tris] : edge_uses(P)) {
    const bool red_blue = (color[e.first] == kRed && color[e.second] == kBlue) ||
                          (color[e.first] == kBlue && color[e.second] == kRed);
    if (!red_blue) continue;
    if (tris.size() == 2) {
      aux[tris[0]].push_back({e, tris[1]});
      aux[tris[1]].push_back({e, tris[0]});
    } else {
      aux[tris[0]].push_back({e, exterior});
      aux[exterior].push_back({e, tris[0]});
    }
  }
  for (size_t t = 0; t < P.triangles.size(); ++t) {
    if (aux[t].size() != 0 && aux[t].size() != 2) {
      throw std::logic_error("Sperner auxiliary graph: triangle degree not in {0,2}");
    }
  }
  if (aux[exterior].size() != 2) {
    throw std::logic_error("Sperner auxiliary graph: exterior degree != 2");
  }

  const auto blue_end = [&](const Edge& e) {
    return color[e.first] == kBlue ? e.first : e.second;
  };

  // Start with the exterior crossing whose blue endpoint is x.
  auto first = aux[exterior][0];
  auto second = aux[exterior][1];
  if (blue_end(first.first) != x) std::swap(first, second);
  if (blue_end(first.first) != x || blue_end(second.first) != y) {
    throw std::logic_error("exterior crossings are not anchored at x and y");
  }

  std::vector<Edge> crossed{first.first};
  int node = first.second;
  Edge entry = first.first;
  while (node != exterior) {
    const auto& two = aux[node];
    const auto& next = two[0].first == entry ? two[1] : two[0];
    crossed.push_back(next.first);
    entry = next.first;
    node = next.second;
  }

  std::vector<VertexId> walk;
  for (const Edge& e : crossed) {
    const VertexId b = blue_end(e);
    if (walk.empty() || walk.back() != b) walk.push_back(b);
  }
  // Clip stray revisits of the endpoints so interior vertices stay inside S.
  const auto last_x = std::find(walk.rbegin(), walk.rend(), x);
  walk.erase(walk.begin(), walk.begin() + (walk.rend() - last_x - 1));
  const auto first_y = std::find(walk.begin(), walk.end(), y);
  walk.erase(first_y + 1, walk.end());

  return SpernerWalk{std::move(walk)};
}

std::vector<VertexId> simplify_walk(const std::vector<VertexId>& walk) {
  std::vector<VertexId> path;
  for (const VertexId v : walk) {
    const auto it = std::find(path.begin(), path.end(), v);
    if (it != path.end()) {
      path.erase(it + 1, path.end());
    } else {
      path.push_back(v);
    }
  }
  return path;
}

}  // namespace fillings
