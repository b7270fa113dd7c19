#include "fillings/plmesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <limits>
#include <numeric>
#include <optional>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace fillings {

namespace {

constexpr double kGlueTol = 1e-9;   // relative mismatch allowed across a gluing
constexpr double kLineTie = 1e-12;  // grid point too close to a side to classify
constexpr double kLenTol = 1e-9;    // agreement required when a length is recomputed
constexpr double kRefineSlack = 0.25;

struct DSU {
  std::vector<int> p;
  explicit DSU(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  }
  // Union by smaller root, so each class's root is its smallest member.
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) p[std::max(a, b)] = std::min(a, b);
  }
};

double dist(Vec2 a, Vec2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

double cross3(Vec2 o, Vec2 a, Vec2 b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

double polygon_area(const std::vector<int>& f, const std::vector<Vec2>& pos) {
  double s = 0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const Vec2& p = pos[f[i]];
    const Vec2& q = pos[f[(i + 1) % f.size()]];
    s += p.x * q.y - q.x * p.y;
  }
  return 0.5 * s;
}

// L = ceil(k^(1/m) / ln k), the number of grid intervals per 1/q of length.
long long interval_multiplier(long long k, int m) {
  const long long L = static_cast<long long>(
      std::ceil(std::pow(static_cast<double>(k), 1.0 / m) /
                std::log(static_cast<double>(k))));
  return L < 1 ? 1 : L;
}

// Faces of a crossing-free straight-line graph. Walking always turns to the
// neighbor just clockwise of the arrival direction, which traces every
// bounded face counterclockwise and the unbounded face clockwise.
std::vector<std::vector<int>> planar_faces(
    const std::vector<Vec2>& pos, const std::vector<std::pair<int, int>>& edges) {
  const int n = static_cast<int>(pos.size());
  std::vector<std::vector<int>> nbr(n);
  for (const auto& [a, b] : edges) {
    nbr[a].push_back(b);
    nbr[b].push_back(a);
  }
  std::vector<std::map<int, int>> index_of(n);
  for (int v = 0; v < n; ++v) {
    auto& list = nbr[v];
    std::sort(list.begin(), list.end(), [&](int p, int q) {
      const double ap = std::atan2(pos[p].y - pos[v].y, pos[p].x - pos[v].x);
      const double aq = std::atan2(pos[q].y - pos[v].y, pos[q].x - pos[v].x);
      if (ap != aq) return ap < aq;
      return p < q;
    });
    for (int i = 0; i < static_cast<int>(list.size()); ++i) index_of[v][list[i]] = i;
  }
  std::set<std::pair<int, int>> seen;
  std::vector<std::vector<int>> faces;
  std::vector<std::pair<int, int>> darts;
  darts.reserve(2 * edges.size());
  for (const auto& [a, b] : edges) {
    darts.push_back({a, b});
    darts.push_back({b, a});
  }
  for (const auto& d0 : darts) {
    if (seen.count(d0)) continue;
    std::vector<int> face;
    auto d = d0;
    do {
      seen.insert(d);
      face.push_back(d.first);
      const int u = d.first, v = d.second;
      const auto& list = nbr[v];
      const int i = index_of[v].at(u);
      const int deg = static_cast<int>(list.size());
      d = {v, list[(i - 1 + deg) % deg]};
    } while (d != d0);
    faces.push_back(std::move(face));
  }
  return faces;
}

// Equilateral-grid points strictly inside the chart triangle, the grid cells
// whose three corners all landed inside, and the patch's boundary cycle.
struct Patch {
  std::vector<Vec2> pts;
  std::vector<std::array<int, 3>> tris;
  std::vector<int> boundary_cycle;
};

Patch grid_fill(const std::array<Vec2, 3>& tri, double eps) {
  constexpr double kOffX = 0.41421356237309515;  // frac(sqrt 2)
  constexpr double kOffY = 0.73205080756887719;  // frac(sqrt 3)
  const double row_h = eps * std::sqrt(3.0) / 2.0;
  double ox = eps * kOffX / 100.0;
  double oy = eps * kOffY / 100.0;
  double minx = tri[0].x, maxx = tri[0].x, miny = tri[0].y, maxy = tri[0].y;
  for (const Vec2& c : tri) {
    minx = std::min(minx, c.x);
    maxx = std::max(maxx, c.x);
    miny = std::min(miny, c.y);
    maxy = std::max(maxy, c.y);
  }
  for (int attempt = 0; attempt < 50; ++attempt) {
    bool tie = false;
    std::vector<std::pair<long long, long long>> kept;
    const long long j0 = static_cast<long long>(std::floor((miny - oy) / row_h)) - 2;
    const long long j1 = static_cast<long long>(std::ceil((maxy - oy) / row_h)) + 2;
    for (long long j = j0; j <= j1 && !tie; ++j) {
      const double y = oy + row_h * static_cast<double>(j);
      const long long i0 =
          static_cast<long long>(std::floor((minx - ox) / eps - 0.5 * j)) - 2;
      const long long i1 =
          static_cast<long long>(std::ceil((maxx - ox) / eps - 0.5 * j)) + 2;
      for (long long i = i0; i <= i1; ++i) {
        const Vec2 p{ox + eps * (static_cast<double>(i) + 0.5 * j), y};
        bool inside = true;
        for (int s = 0; s < 3; ++s) {
          const Vec2 a = tri[s], b = tri[(s + 1) % 3];
          const double c = cross3(a, b, p);
          if (std::abs(c) <= kLineTie * dist(a, b)) {
            tie = true;  // too close to a side to classify; nudge the grid
            break;
          }
          if (c < 0) inside = false;
        }
        if (tie) break;
        if (inside) kept.push_back({i, j});
      }
    }
    if (tie) {
      ox *= 2;
      oy *= 2;
      continue;
    }

    const std::set<std::pair<long long, long long>> in(kept.begin(), kept.end());
    using Key = std::pair<long long, long long>;
    std::vector<std::array<Key, 3>> cells;
    // Each upward cell is anchored at its bottom-left corner, each downward
    // cell at its bottom corner, so every cell is visited exactly once.
    for (const auto& [i, j] : kept) {
      if (in.count({i + 1, j}) && in.count({i, j + 1})) {
        cells.push_back({Key{i, j}, Key{i + 1, j}, Key{i, j + 1}});
      }
      if (in.count({i, j + 1}) && in.count({i - 1, j + 1})) {
        cells.push_back({Key{i, j}, Key{i, j + 1}, Key{i - 1, j + 1}});
      }
    }

    // The cell region can pinch at a vertex or fall into pieces near the
    // triangle's corners. Erode: keep the largest edge-connected component
    // and drop every cell at a vertex where the region touches itself, until
    // the patch boundary is one clean cycle.
    for (;;) {
      if (cells.empty()) break;
      std::map<std::pair<Key, Key>, std::vector<int>> e2c;
      for (int c = 0; c < static_cast<int>(cells.size()); ++c) {
        for (int a = 0; a < 3; ++a) {
          const Key u = cells[c][a], v = cells[c][(a + 1) % 3];
          e2c[{std::min(u, v), std::max(u, v)}].push_back(c);
        }
      }
      DSU comp(static_cast<int>(cells.size()));
      for (const auto& [e, cs] : e2c) {
        for (std::size_t a = 1; a < cs.size(); ++a) comp.unite(cs[0], cs[a]);
      }
      std::map<int, int> size_of;
      for (int c = 0; c < static_cast<int>(cells.size()); ++c) size_of[comp.find(c)]++;
      int best_root = comp.find(0);
      for (const auto& [root, sz] : size_of) {
        if (sz > size_of.at(best_root)) best_root = root;  // tie: first-built root
      }
      if (size_of.at(best_root) != static_cast<int>(cells.size())) {
        std::vector<std::array<Key, 3>> kept_cells;
        for (int c = 0; c < static_cast<int>(cells.size()); ++c) {
          if (comp.find(c) == best_root) kept_cells.push_back(cells[c]);
        }
        cells = std::move(kept_cells);
        continue;
      }
      std::map<Key, int> bdeg;
      for (const auto& [e, cs] : e2c) {
        if (cs.size() == 1) {
          bdeg[e.first]++;
          bdeg[e.second]++;
        }
      }
      std::set<Key> pinched;
      for (const auto& [v, d] : bdeg) {
        if (d > 2) pinched.insert(v);
      }
      if (pinched.empty()) break;
      std::vector<std::array<Key, 3>> survivors;
      for (const auto& cell : cells) {
        const bool hit = pinched.count(cell[0]) || pinched.count(cell[1]) ||
                         pinched.count(cell[2]);
        if (!hit) survivors.push_back(cell);
      }
      cells = std::move(survivors);
    }

    Patch patch;
    std::map<Key, int> idx;
    auto ensure = [&](const Key& key) {
      auto it = idx.find(key);
      if (it != idx.end()) return it->second;
      const int id = static_cast<int>(patch.pts.size());
      idx.emplace(key, id);
      patch.pts.push_back({ox + eps * (static_cast<double>(key.first) + 0.5 * key.second),
                           oy + row_h * static_cast<double>(key.second)});
      return id;
    };
    for (const auto& cell : cells) {
      patch.tris.push_back({ensure(cell[0]), ensure(cell[1]), ensure(cell[2])});
    }
    if (!patch.tris.empty()) {
      std::map<std::pair<int, int>, int> uses;
      for (const auto& t : patch.tris) {
        for (int a = 0; a < 3; ++a) {
          const int u = t[a], v = t[(a + 1) % 3];
          uses[{std::min(u, v), std::max(u, v)}]++;
        }
      }
      std::vector<std::vector<int>> badj(patch.pts.size());
      for (const auto& [e, c] : uses) {
        if (c == 1) {
          badj[e.first].push_back(e.second);
          badj[e.second].push_back(e.first);
        }
      }
      int start = -1, bverts = 0;
      for (int v = 0; v < static_cast<int>(patch.pts.size()); ++v) {
        if (badj[v].empty()) continue;
        if (badj[v].size() != 2) throw std::logic_error("patch erosion left a pinch");
        ++bverts;
        if (start < 0) start = v;
      }
      if (start < 0) throw std::logic_error("patch has cells but no boundary");
      std::vector<int> cycle{start};
      int prev = start;
      int cur = std::min(badj[start][0], badj[start][1]);
      while (cur != start) {
        cycle.push_back(cur);
        const auto& nb = badj[cur];
        const int nxt = (nb[0] == prev) ? nb[1] : nb[0];
        prev = cur;
        cur = nxt;
      }
      if (static_cast<int>(cycle.size()) != bverts) {
        throw std::logic_error("patch erosion left a hole");
      }
      patch.boundary_cycle = std::move(cycle);
    }
    return patch;
  }
  throw std::runtime_error("grid offset kept landing on the triangle boundary");
}

struct FaceStats {
  std::size_t annulus = 0;
  std::size_t cap = 0;
};

// Meshes one face: the interior grid patch, then the ring between the face's
// subdivided boundary polygon and the patch boundary, stitched by matching
// every vertex of either curve to its nearest visible vertex on the other.
FaceStats mesh_face(const std::array<Vec2, 3>& chart,
                    const std::vector<VertexId>& poly_gid,
                    const std::vector<Vec2>& poly_pos, double eps,
                    VertexId* next_id, std::vector<Tri>* out_tris,
                    const std::function<void(VertexId, VertexId, double)>& put_len) {
  const int No = static_cast<int>(poly_gid.size());
  Patch patch = grid_fill(chart, eps);
  FaceStats st;

  if (patch.tris.empty()) {
    // Face too small for any grid cell: fan it out from its first vertex.
    for (int i = 1; i + 1 < No; ++i) {
      out_tris->push_back(make_tri(poly_gid[0], poly_gid[i], poly_gid[i + 1]));
      put_len(poly_gid[0], poly_gid[i], dist(poly_pos[0], poly_pos[i]));
      put_len(poly_gid[0], poly_gid[i + 1], dist(poly_pos[0], poly_pos[i + 1]));
    }
    st.annulus = static_cast<std::size_t>(No - 2);
    st.cap = static_cast<std::size_t>(2 * No);
    return st;
  }

  std::vector<VertexId> pgid(patch.pts.size());
  for (std::size_t i = 0; i < patch.pts.size(); ++i) pgid[i] = (*next_id)++;
  for (const auto& t : patch.tris) {
    out_tris->push_back(make_tri(pgid[t[0]], pgid[t[1]], pgid[t[2]]));
    put_len(pgid[t[0]], pgid[t[1]], eps);
    put_len(pgid[t[0]], pgid[t[2]], eps);
    put_len(pgid[t[1]], pgid[t[2]], eps);
  }

  const auto& cyc = patch.boundary_cycle;
  const int Ni = static_cast<int>(cyc.size());
  std::vector<Vec2> pos(No + Ni);
  std::vector<VertexId> gid(No + Ni);
  for (int i = 0; i < No; ++i) {
    pos[i] = poly_pos[i];
    gid[i] = poly_gid[i];
  }
  for (int i = 0; i < Ni; ++i) {
    pos[No + i] = patch.pts[cyc[i]];
    gid[No + i] = pgid[cyc[i]];
  }

  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < No; ++i) edges.push_back({i, (i + 1) % No});
  for (int i = 0; i < Ni; ++i) edges.push_back({No + i, No + (i + 1) % Ni});
  const std::size_t poly_edges = edges.size();

  auto blocked = [&](int u, int w) {
    for (std::size_t e = 0; e < poly_edges; ++e) {
      const auto [a, b] = edges[e];
      if (a == u || a == w || b == u || b == w) continue;
      if (segments_properly_cross(pos[u], pos[w], pos[a], pos[b])) return true;
    }
    return false;
  };
  auto nearest = [&](int from, int lo, int hi) {
    std::vector<std::pair<double, int>> cand;
    cand.reserve(hi - lo);
    for (int v = lo; v < hi; ++v) {
      const double dx = pos[v].x - pos[from].x, dy = pos[v].y - pos[from].y;
      cand.push_back({dx * dx + dy * dy, v});
    }
    std::sort(cand.begin(), cand.end());
    for (const auto& [d2, v] : cand) {
      if (!blocked(from, v)) return v;
    }
    throw std::runtime_error("no visible stitching partner; use a finer grid");
  };

  std::set<std::pair<int, int>> chords;
  for (int o = 0; o < No; ++o) chords.insert({o, nearest(o, No, No + Ni)});
  for (int i = No; i < No + Ni; ++i) chords.insert({nearest(i, 0, No), i});

  const std::vector<std::pair<int, int>> cvec(chords.begin(), chords.end());
  for (std::size_t a = 0; a < cvec.size(); ++a) {
    for (std::size_t b = a + 1; b < cvec.size(); ++b) {
      const auto [p, q] = cvec[a];
      const auto [r, s] = cvec[b];
      if (p == r || p == s || q == r || q == s) continue;
      if (segments_properly_cross(pos[p], pos[q], pos[r], pos[s])) {
        throw std::runtime_error("stitching chords cross; use a finer grid");
      }
    }
  }
  for (const auto& c : cvec) edges.push_back(c);

  std::size_t count = 0;
  for (const auto& f : planar_faces(pos, edges)) {
    if (polygon_area(f, pos) < 0) continue;  // unbounded face
    bool all_inner = true;
    for (const int v : f) all_inner = all_inner && v >= No;
    if (all_inner) continue;  // the patch interior, already meshed by the grid
    auto emit = [&](int a, int b, int c) {
      out_tris->push_back(make_tri(gid[a], gid[b], gid[c]));
      put_len(gid[a], gid[b], dist(pos[a], pos[b]));
      put_len(gid[a], gid[c], dist(pos[a], pos[c]));
      put_len(gid[b], gid[c], dist(pos[b], pos[c]));
      ++count;
    };
    if (f.size() == 3) {
      emit(f[0], f[1], f[2]);
    } else if (f.size() == 4) {
      const double d02 = dist(pos[f[0]], pos[f[2]]);
      const double d13 = dist(pos[f[1]], pos[f[3]]);
      bool use02;
      if (d02 != d13) {
        use02 = d02 < d13;
      } else {
        use02 = std::min(gid[f[0]], gid[f[2]]) < std::min(gid[f[1]], gid[f[3]]);
      }
      if (use02) {
        emit(f[0], f[1], f[2]);
        emit(f[0], f[2], f[3]);
      } else {
        emit(f[1], f[2], f[3]);
        emit(f[1], f[3], f[0]);
      }
    } else {
      throw std::logic_error("stitching produced a face with more than four sides");
    }
  }
  st.annulus = count;
  st.cap = static_cast<std::size_t>(2 * (No + Ni));
  return st;
}

// Children of one triangle under the centroid subdivision, midpoints shared
// through mids. Lengths of the new edges come from the parent's chart.
void subdivide_one(const Tri& tr, const std::set<Edge>& prot,
                   std::map<Edge, VertexId>& mids, MeshBuild& out,
                   const std::map<Edge, double>& parent_len, VertexId* next_id) {
  auto plen = [&](VertexId a, VertexId b) {
    const auto it = parent_len.find(make_edge(a, b));
    if (it == parent_len.end()) throw std::invalid_argument("triangle edge has no length");
    return it->second;
  };
  const PLTriangle shape{{plen(tr[0], tr[1]), plen(tr[1], tr[2]), plen(tr[2], tr[0])}};
  const auto ch = chart_triangle(shape);
  const Vec2 G{(ch[0].x + ch[1].x + ch[2].x) / 3.0, (ch[0].y + ch[1].y + ch[2].y) / 3.0};
  auto corner_pos = [&](VertexId v) { return v == tr[0] ? ch[0] : v == tr[1] ? ch[1] : ch[2]; };
  auto put = [&](VertexId a, VertexId b, double v) {
    const auto [it, ins] = out.lengths.try_emplace(make_edge(a, b), v);
    if (!ins && std::abs(it->second - v) > kLenTol) {
      throw std::logic_error("inconsistent edge length during subdivision");
    }
  };

  // Allocate this triangle's new midpoints in edge order, then its centroid.
  const std::array<Edge, 3> es = {make_edge(tr[0], tr[1]), make_edge(tr[0], tr[2]),
                                  make_edge(tr[1], tr[2])};
  for (const Edge& e : es) {
    if (!prot.count(e) && !mids.count(e)) mids.emplace(e, (*next_id)++);
  }
  const VertexId g = (*next_id)++;

  for (const Edge& e : es) {
    const VertexId u = e.first, v = e.second;
    const Vec2 U = corner_pos(u), V = corner_pos(v);
    put(u, g, dist(U, G));
    put(v, g, dist(V, G));
    if (prot.count(e)) {
      out.triangles.push_back(make_tri(u, v, g));
      put(u, v, plen(u, v));
    } else {
      const VertexId m = mids.at(e);
      const Vec2 M{(U.x + V.x) / 2.0, (U.y + V.y) / 2.0};
      out.triangles.push_back(make_tri(u, m, g));
      out.triangles.push_back(make_tri(m, v, g));
      const double half = plen(u, v) / 2.0;
      put(u, m, half);
      put(m, v, half);
      put(m, g, dist(M, G));
    }
  }
}

double side_length(const PLSurface& S, const SideRef& r) {
  return S.triangles[r.tri].side[r.side];
}

}  // namespace

std::array<Vec2, 3> chart_triangle(const PLTriangle& t) {
  const double a = t.side[0], b = t.side[1], c = t.side[2];
  const double x = (a * a + c * c - b * b) / (2.0 * a);
  const double y2 = c * c - x * x;
  return {Vec2{0.0, 0.0}, Vec2{a, 0.0}, Vec2{x, y2 > 0 ? std::sqrt(y2) : 0.0}};
}

double heron_area(double a, double b, double c) {
  // Sort so a >= b >= c, then use the difference-safe factorization.
  if (a < b) std::swap(a, b);
  if (b < c) std::swap(b, c);
  if (a < b) std::swap(a, b);
  const double p = (a + (b + c)) * (c - (a - b)) * (c + (a - b)) * (a + (b - c));
  return p > 0 ? 0.25 * std::sqrt(p) : 0.0;
}

bool segments_properly_cross(Vec2 p, Vec2 q, Vec2 r, Vec2 s) {
  const double d1 = cross3(r, s, p);
  const double d2 = cross3(r, s, q);
  const double d3 = cross3(p, q, r);
  const double d4 = cross3(p, q, s);
  return ((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
         ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0));
}

ValidationReport validate_surface(const PLSurface& S) {
  ValidationReport rep;
  const int T = static_cast<int>(S.triangles.size());
  if (T == 0) {
    rep.violations.push_back({"empty", "surface has no triangles"});
    return rep;
  }
  for (int t = 0; t < T; ++t) {
    const auto& s = S.triangles[t].side;
    for (int i = 0; i < 3; ++i) {
      if (!std::isfinite(s[i]) || s[i] <= 0) {
        rep.violations.push_back(
            {"side-length", "triangle " + std::to_string(t) + " has a non-positive side"});
        return rep;
      }
    }
    for (int i = 0; i < 3; ++i) {
      if (s[i] + s[(i + 1) % 3] <= s[(i + 2) % 3]) {
        rep.violations.push_back({"triangle-inequality",
                                  "triangle " + std::to_string(t) +
                                      " violates the strict triangle inequality"});
        break;
      }
    }
  }

  bool refs_ok = true;
  std::map<std::pair<int, int>, int> glue_count;
  for (std::size_t gi = 0; gi < S.gluings.size(); ++gi) {
    const Gluing& g = S.gluings[gi];
    bool in_range = true;
    for (const SideRef& r : {g.a, g.b}) {
      if (r.tri < 0 || r.tri >= T || r.side < 0 || r.side >= 3) {
        rep.violations.push_back(
            {"gluing-range", "gluing " + std::to_string(gi) + " references a missing side"});
        in_range = false;
        refs_ok = false;
      }
    }
    if (!in_range) continue;
    if (g.a.tri == g.b.tri) {
      rep.violations.push_back(
          {"gluing-self", "gluing " + std::to_string(gi) + " glues a triangle to itself"});
      refs_ok = false;
      continue;
    }
    glue_count[{g.a.tri, g.a.side}]++;
    glue_count[{g.b.tri, g.b.side}]++;
    const double la = side_length(S, g.a), lb = side_length(S, g.b);
    if (std::abs(la - lb) > kGlueTol * std::max({1.0, std::abs(la), std::abs(lb)})) {
      rep.violations.push_back(
          {"gluing-length", "gluing " + std::to_string(gi) + " joins sides of different length"});
    }
  }
  for (const auto& [side, c] : glue_count) {
    if (c > 1) {
      rep.violations.push_back({"gluing-multiplicity",
                                "side (" + std::to_string(side.first) + "," +
                                    std::to_string(side.second) + ") is glued more than once"});
      refs_ok = false;
    }
  }

  if (refs_ok && rep.ok()) {
    const SurfaceVertexMap svm = surface_vertex_map(S);
    std::vector<int> degree(svm.count, 0);
    std::set<std::pair<int, int>> glued;
    for (const Gluing& g : S.gluings) {
      glued.insert({g.a.tri, g.a.side});
      glued.insert({g.b.tri, g.b.side});
    }
    for (int t = 0; t < T; ++t) {
      for (int s = 0; s < 3; ++s) {
        if (glued.count({t, s})) continue;
        degree[svm.of_corner[t][s]]++;
        degree[svm.of_corner[t][(s + 1) % 3]]++;
      }
    }
    for (int v = 0; v < svm.count; ++v) {
      if (degree[v] != 0 && degree[v] != 2) {
        rep.violations.push_back(
            {"boundary-shape", "unglued sides do not form closed curves at vertex " +
                                   std::to_string(v)});
        break;
      }
    }
  }
  return rep;
}

SurfaceVertexMap surface_vertex_map(const PLSurface& S) {
  const int T = static_cast<int>(S.triangles.size());
  DSU dsu(3 * T);
  for (const Gluing& g : S.gluings) {
    dsu.unite(3 * g.a.tri + g.a.side, 3 * g.b.tri + (g.b.side + 1) % 3);
    dsu.unite(3 * g.a.tri + (g.a.side + 1) % 3, 3 * g.b.tri + g.b.side);
  }
  std::map<int, int> id_of_root;
  for (int c = 0; c < 3 * T; ++c) id_of_root.emplace(dsu.find(c), 0);
  int next = 0;
  for (auto& [root, id] : id_of_root) id = next++;  // roots ascend: smallest corner first
  SurfaceVertexMap out;
  out.count = next;
  out.of_corner.resize(T);
  for (int t = 0; t < T; ++t) {
    for (int c = 0; c < 3; ++c) out.of_corner[t][c] = id_of_root.at(dsu.find(3 * t + c));
  }
  return out;
}

long long DirichletPlan::intervals_for(double length) const {
  const auto it = numerators.find(length);
  if (it == numerators.end()) {
    throw std::invalid_argument("length not covered by the approximation plan");
  }
  return subdivisions * it->second;
}

DirichletPlan dirichlet_plan(const PLSurface& S, long long k) {
  if (k < 2) throw std::invalid_argument("k must be at least 2");
  if (S.triangles.empty()) throw std::invalid_argument("surface has no triangles");
  std::set<double> lens;
  for (const PLTriangle& t : S.triangles) {
    for (const double l : t.side) {
      if (!std::isfinite(l) || l <= 0) {
        throw std::invalid_argument("side lengths must be positive and finite");
      }
      lens.insert(l);
    }
  }
  const int m = static_cast<int>(lens.size());

  long long best_q = 1;
  double best = std::numeric_limits<double>::infinity();
  for (long long q = 1; q <= k; ++q) {
    double worst = 0;
    for (const double l : lens) {
      const double x = static_cast<double>(q) * l;
      worst = std::max(worst, std::abs(x - std::nearbyint(x)));
      if (worst >= best) break;
    }
    if (worst < best) {
      best = worst;
      best_q = q;
    }
  }
  // Dirichlet's simultaneous approximation guarantee for some q <= k.
  if (best > std::pow(static_cast<double>(k), -1.0 / m) + 1e-9) {
    throw std::logic_error("approximation guarantee missed");
  }

  DirichletPlan plan;
  plan.k = k;
  plan.q = best_q;
  plan.distinct_lengths = m;
  plan.subdivisions = interval_multiplier(k, m);
  plan.epsilon = 1.0 / (static_cast<double>(best_q) * static_cast<double>(plan.subdivisions));
  double dev = 0;
  for (const double l : lens) {
    const long long p = std::llround(static_cast<double>(best_q) * l);
    if (p < 1) {
      throw std::invalid_argument("a side is too short for this k; increase k");
    }
    plan.numerators[l] = p;
    dev = std::max(dev, std::abs(l - static_cast<double>(p) / static_cast<double>(best_q)));
  }
  plan.deviation = dev;
  return plan;
}

long long choose_k(const PLSurface& S, int target_boundary) {
  const auto rep = validate_surface(S);
  if (!rep.ok()) {
    throw std::invalid_argument("invalid surface: " + rep.violations[0].message);
  }
  if (target_boundary < 3) throw std::invalid_argument("target boundary too small");

  std::set<double> lens_set;
  for (const PLTriangle& t : S.triangles) {
    for (const double l : t.side) {
      if (!std::isfinite(l) || l <= 0) {
        throw std::invalid_argument("side lengths must be positive and finite");
      }
      lens_set.insert(l);
    }
  }
  const std::vector<double> lens(lens_set.begin(), lens_set.end());
  const int m = static_cast<int>(lens.size());

  std::set<std::pair<int, int>> glued;
  for (const Gluing& g : S.gluings) {
    glued.insert({g.a.tri, g.a.side});
    glued.insert({g.b.tri, g.b.side});
  }
  std::vector<double> boundary_sides;
  for (int t = 0; t < static_cast<int>(S.triangles.size()); ++t) {
    for (int s = 0; s < 3; ++s) {
      if (!glued.count({t, s})) boundary_sides.push_back(S.triangles[t].side[s]);
    }
  }
  if (boundary_sides.empty()) throw std::invalid_argument("surface has no boundary to mesh");

  // The boundary count at k is L(k) times the sum of the plan's numerators over
  // the unglued sides, and the numerators depend on the q the plan picks at k.
  // Sizing that from a fixed probe plan undercounts badly whenever better q's
  // keep appearing (side ratio sqrt(2): q runs through the Pell denominators),
  // and the resulting mesh can be orders of magnitude larger than asked for.
  // So track the plan's q incrementally -- at step k the only new candidate is
  // q = k -- predict the true count, and keep the k that lands closest.
  long long cand_q = 0;
  double cand_dev = std::numeric_limits<double>::infinity();
  long long best_k = -1;
  long long best_err = std::numeric_limits<long long>::max();
  // k^(1/m)/ln k grows monotonically past e^m, so L(k)*|sides| is eventually a
  // rising floor on the count; once it clears target + best_err, stop.
  const long long monotone_from =
      static_cast<long long>(std::ceil(std::exp(static_cast<double>(m))));
  constexpr long long kScanLimit = 2000000;
  for (long long k = 1; k <= kScanLimit; ++k) {
    double worst = 0;
    for (const double l : lens) {
      const double x = static_cast<double>(k) * l;
      worst = std::max(worst, std::abs(x - std::nearbyint(x)));
    }
    if (worst < cand_dev) {
      cand_dev = worst;
      cand_q = k;
    }
    if (k < 2) continue;
    const long long L = interval_multiplier(k, m);
    bool valid = true;
    long long boundary = 0;
    for (const double l : lens) {
      if (std::llround(static_cast<double>(cand_q) * l) < 1) {
        valid = false;
        break;
      }
    }
    if (valid) {
      for (const double l : boundary_sides) {
        boundary += L * std::llround(static_cast<double>(cand_q) * l);
      }
      const long long err = std::llabs(boundary - target_boundary);
      if (err == 0) return k;
      if (err < best_err) {
        best_err = err;
        best_k = k;
      }
    }
    if (best_k > 0 && k > monotone_from &&
        L * static_cast<long long>(boundary_sides.size()) > target_boundary + best_err) {
      break;
    }
  }
  if (best_k < 0) throw std::invalid_argument("no k reaches the requested boundary size");
  return best_k;
}

MeshBuild partial_barycentric(const MeshBuild& in, const std::set<Edge>& protected_edges) {
  MeshBuild out;
  VertexId next_id = in.num_vertices;
  std::map<Edge, VertexId> mids;
  for (const Tri& tr : in.triangles) {
    subdivide_one(tr, protected_edges, mids, out, in.lengths, &next_id);
  }
  out.num_vertices = next_id;
  std::sort(out.triangles.begin(), out.triangles.end());
  return out;
}

MeshBuild refine_to_threshold(const MeshBuild& in, double threshold, int max_rounds) {
  MeshBuild cur = in;
  for (int round = 0; round < max_rounds; ++round) {
    std::set<Edge> prot;
    bool any_long = false;
    for (const Tri& tr : cur.triangles) {
      for (const Edge& e : {make_edge(tr[0], tr[1]), make_edge(tr[0], tr[2]),
                            make_edge(tr[1], tr[2])}) {
        const auto it = cur.lengths.find(e);
        if (it == cur.lengths.end()) throw std::invalid_argument("triangle edge has no length");
        if (it->second <= threshold) {
          prot.insert(e);
        } else {
          any_long = true;
        }
      }
    }
    if (!any_long) return cur;

    MeshBuild next;
    VertexId next_id = cur.num_vertices;
    std::map<Edge, VertexId> mids;
    for (const Tri& tr : cur.triangles) {
      const std::array<Edge, 3> es = {make_edge(tr[0], tr[1]), make_edge(tr[0], tr[2]),
                                      make_edge(tr[1], tr[2])};
      const bool split = !prot.count(es[0]) || !prot.count(es[1]) || !prot.count(es[2]);
      if (!split) {
        next.triangles.push_back(tr);
        for (const Edge& e : es) next.lengths.try_emplace(e, cur.lengths.at(e));
      } else {
        subdivide_one(tr, prot, mids, next, cur.lengths, &next_id);
      }
    }
    next.num_vertices = next_id;
    std::sort(next.triangles.begin(), next.triangles.end());
    cur = std::move(next);
  }
  throw std::runtime_error("refinement did not converge");
}

BalancedMesh balanced_triangulation(const PLSurface& S0, long long k) {
  {
    const auto rep = validate_surface(S0);
    if (!rep.ok()) {
      throw std::invalid_argument("invalid surface: " + rep.violations[0].message);
    }
  }
  // Glued sides may differ within the validation tolerance; force both copies
  // to one canonical length so the bitwise-keyed plan treats them identically.
  PLSurface S = S0;
  for (const Gluing& g : S.gluings) {
    const SideRef c = std::min(g.a, g.b);
    const double canon = side_length(S, c);
    S.triangles[g.a.tri].side[g.a.side] = canon;
    S.triangles[g.b.tri].side[g.b.side] = canon;
  }

  const DirichletPlan plan = dirichlet_plan(S, k);
  const double eps = plan.epsilon;
  const SurfaceVertexMap svm = surface_vertex_map(S);
  const int T = static_cast<int>(S.triangles.size());

  std::vector<std::array<std::optional<SideRef>, 3>> partner(T);
  for (const Gluing& g : S.gluings) {
    partner[g.a.tri][g.a.side] = g.b;
    partner[g.b.tri][g.b.side] = g.a;
  }
  auto rep_of = [&](const SideRef& r) {
    const auto& p = partner[r.tri][r.side];
    return (p && *p < r) ? *p : r;
  };

  // One vertex chain per side class. Interior points sit at multiples of eps
  // measured from the endpoint with the larger surface-vertex id, so the one
  // analytic leftover interval touches the smaller; both copies of a glued
  // side derive the identical chain.
  VertexId next_id = svm.count;
  std::map<SideRef, std::vector<VertexId>> side_pts;
  std::map<SideRef, double> side_leftover;
  for (int t = 0; t < T; ++t) {
    for (int s = 0; s < 3; ++s) {
      const SideRef self{t, s};
      if (!(rep_of(self) == self)) continue;
      const double len = S.triangles[t].side[s];
      const long long segs = plan.intervals_for(len);
      auto& pts = side_pts[self];
      for (long long j = 1; j < segs; ++j) pts.push_back(next_id++);
      const double leftover = len - static_cast<double>(segs - 1) * eps;
      if (!(leftover > 0)) throw std::runtime_error("grid unit too coarse for a side");
      side_leftover[self] = leftover;
    }
  }

  struct Chain {
    std::vector<VertexId> ids;
    std::vector<double> lens;
  };
  auto side_chain = [&](int t, int s) {
    const SideRef self{t, s};
    const SideRef r = rep_of(self);
    const auto& pts = side_pts.at(r);
    const double leftover = side_leftover.at(r);
    const int sv0 = svm.of_corner[t][s];
    const int sv1 = svm.of_corner[t][(s + 1) % 3];
    bool start_first;  // measuring starts at corner s?
    if (r == self) {
      start_first = sv0 >= sv1;  // tie: the class representative starts at its corner s
    } else {
      start_first = (sv0 == sv1) ? false : sv0 > sv1;
    }
    Chain c;
    c.ids.push_back(sv0);
    if (start_first) {
      c.ids.insert(c.ids.end(), pts.begin(), pts.end());
    } else {
      c.ids.insert(c.ids.end(), pts.rbegin(), pts.rend());
    }
    c.ids.push_back(sv1);
    if (start_first) {
      c.lens.assign(pts.size(), eps);
      c.lens.push_back(leftover);
    } else {
      c.lens.assign(1, leftover);
      c.lens.insert(c.lens.end(), pts.size(), eps);
    }
    return c;
  };

  std::vector<Tri> mesh_tris;
  std::map<Edge, double> lengths;
  auto put_len = [&](VertexId a, VertexId b, double v) {
    const auto [it, ins] = lengths.try_emplace(make_edge(a, b), v);
    if (!ins && std::abs(it->second - v) > kLenTol) {
      throw std::logic_error("inconsistent edge length in mesh assembly");
    }
  };

  std::size_t ann_tris = 0, ann_cap = 0;
  double ann_worst = 0;
  for (int t = 0; t < T; ++t) {
    const auto chart = chart_triangle(S.triangles[t]);
    std::vector<VertexId> poly_gid;
    std::vector<Vec2> poly_pos;
    for (int s = 0; s < 3; ++s) {
      const Chain c = side_chain(t, s);
      const Vec2 A = chart[s], B = chart[(s + 1) % 3];
      const double len = S.triangles[t].side[s];
      double cum = 0;
      for (std::size_t i = 0; i + 1 < c.ids.size(); ++i) {
        const double frac = cum / len;
        poly_gid.push_back(c.ids[i]);
        poly_pos.push_back({A.x + frac * (B.x - A.x), A.y + frac * (B.y - A.y)});
        put_len(c.ids[i], c.ids[i + 1], c.lens[i]);
        cum += c.lens[i];
      }
    }
    const FaceStats st =
        mesh_face(chart, poly_gid, poly_pos, eps, &next_id, &mesh_tris, put_len);
    ann_tris += st.annulus;
    ann_cap += st.cap;
    if (st.cap > 0) {
      ann_worst = std::max(ann_worst, static_cast<double>(st.annulus) /
                                          static_cast<double>(st.cap));
    }
  }

  MeshBuild built{next_id, std::move(mesh_tris), std::move(lengths)};
  std::sort(built.triangles.begin(), built.triangles.end());
  const double threshold = eps * (1.0 + kRefineSlack) + plan.deviation;
  const MeshBuild fine = refine_to_threshold(built, threshold);

  // Boundary of the refined mesh: edges in exactly one triangle.
  std::map<Edge, int> uses;
  for (const Tri& tr : fine.triangles) {
    uses[make_edge(tr[0], tr[1])]++;
    uses[make_edge(tr[0], tr[2])]++;
    uses[make_edge(tr[1], tr[2])]++;
  }
  std::vector<std::vector<VertexId>> badj(fine.num_vertices);
  for (const auto& [e, c] : uses) {
    if (c == 1) {
      badj[e.first].push_back(e.second);
      badj[e.second].push_back(e.first);
    } else if (c != 2) {
      throw std::logic_error("mesh edge lies in more than two triangles");
    }
  }
  VertexId start = -1;
  int bcount = 0;
  for (VertexId v = 0; v < fine.num_vertices; ++v) {
    if (badj[v].empty()) continue;
    if (badj[v].size() != 2) throw std::logic_error("mesh boundary is not a curve");
    ++bcount;
    if (start < 0) start = v;
  }
  if (start < 0 || bcount < 3) throw std::logic_error("mesh has no boundary curve");
  std::vector<VertexId> cycle{start};
  VertexId prev = start;
  VertexId cur = std::min(badj[start][0], badj[start][1]);
  while (cur != start) {
    cycle.push_back(cur);
    const auto& nb = badj[cur];
    const VertexId nxt = (nb[0] == prev) ? nb[1] : nb[0];
    prev = cur;
    cur = nxt;
  }
  if (static_cast<int>(cycle.size()) != bcount) {
    throw std::invalid_argument("surface must have exactly one boundary curve");
  }
  const int n = static_cast<int>(cycle.size());

  // Boundary vertices become 0..n-1 in cycle order, the rest keep their
  // relative order after them.
  std::vector<VertexId> relabel(fine.num_vertices, -1);
  for (int i = 0; i < n; ++i) relabel[cycle[i]] = i;
  VertexId next_label = n;
  for (VertexId v = 0; v < fine.num_vertices; ++v) {
    if (relabel[v] < 0) relabel[v] = next_label++;
  }
  std::vector<Tri> final_tris;
  final_tris.reserve(fine.triangles.size());
  for (const Tri& tr : fine.triangles) {
    final_tris.push_back(make_tri(relabel[tr[0]], relabel[tr[1]], relabel[tr[2]]));
  }
  std::sort(final_tris.begin(), final_tris.end());
  std::map<Edge, double> final_lengths;
  for (const auto& [e, l] : fine.lengths) {
    final_lengths.emplace(make_edge(relabel[e.first], relabel[e.second]), l);
  }

  BalancedMesh M;
  M.mesh = AbstractTriangulation::from_triples(fine.num_vertices, std::move(final_tris), n);
  M.lengths = std::move(final_lengths);
  M.plan = plan;
  M.boundary_n = n;
  M.annulus_triangles = ann_tris;
  M.annulus_capacity = ann_cap;
  M.annulus_worst_ratio = ann_worst;

  M.min_edge = std::numeric_limits<double>::infinity();
  M.max_edge = 0;
  for (const auto& [e, l] : M.lengths) {
    M.min_edge = std::min(M.min_edge, l);
    M.max_edge = std::max(M.max_edge, l);
  }
  double sum = 0, comp = 0;
  for (const Tri& tr : M.mesh.triangles) {
    const double a = M.lengths.at(make_edge(tr[0], tr[1]));
    const double b = M.lengths.at(make_edge(tr[0], tr[2]));
    const double c = M.lengths.at(make_edge(tr[1], tr[2]));
    if (a == eps && b == eps && c == eps) ++M.equilateral_triangles;
    const double y = heron_area(a, b, c) - comp;
    const double s = sum + y;
    comp = (s - sum) - y;
    sum = s;
  }
  M.surface_area = sum;
  M.vertex_ratio = static_cast<double>(M.mesh.num_vertices) /
                   (static_cast<double>(n) * static_cast<double>(n));

  const auto rep = validate(M.mesh);
  if (!rep.ok()) {
    throw std::logic_error("mesh failed validation: " + rep.violations[0].message);
  }
  return M;
}

PLSurface hemisphere_surface() {
  PLSurface S;
  for (int i = 0; i < 4; ++i) S.triangles.push_back({{1.5, 2.0, 2.0}});
  for (int i = 0; i < 4; ++i) S.gluings.push_back({{i, 1}, {(i + 1) % 4, 2}});
  return S;
}

PLSurface disk_surface() {
  PLSurface S;
  for (int i = 0; i < 12; ++i) S.triangles.push_back({{0.5, 1.0, 1.0}});
  for (int i = 0; i < 12; ++i) S.gluings.push_back({{i, 1}, {(i + 1) % 12, 2}});
  return S;
}

PLSurface square_surface() {
  const double d = std::sqrt(2.0);
  PLSurface S;
  S.triangles.push_back({{1.0, d, 1.0}});
  S.triangles.push_back({{1.0, d, 1.0}});
  S.gluings.push_back({{0, 1}, {1, 1}});
  return S;
}

std::string to_off(const BalancedMesh& M) {
  const AbstractTriangulation& K = M.mesh;
  const int F = static_cast<int>(K.triangles.size());
  auto len = [&](VertexId a, VertexId b) { return M.lengths.at(make_edge(a, b)); };

  std::map<Edge, std::vector<int>> etris;
  for (int i = 0; i < F; ++i) {
    const Tri& tr = K.triangles[i];
    etris[make_edge(tr[0], tr[1])].push_back(i);
    etris[make_edge(tr[0], tr[2])].push_back(i);
    etris[make_edge(tr[1], tr[2])].push_back(i);
  }

  std::vector<std::optional<Vec2>> pos(K.num_vertices);
  std::vector<char> vis(F, 0);
  for (int root = 0; root < F; ++root) {
    if (vis[root]) continue;
    const Tri& tr = K.triangles[root];
    const PLTriangle shape{{len(tr[0], tr[1]), len(tr[1], tr[2]), len(tr[2], tr[0])}};
    const auto ch = chart_triangle(shape);
    for (int c = 0; c < 3; ++c) {
      if (!pos[tr[c]]) pos[tr[c]] = ch[c];
    }
    vis[root] = 1;
    std::queue<int> q;
    q.push(root);
    while (!q.empty()) {
      const int f = q.front();
      q.pop();
      const Tri& ft = K.triangles[f];
      for (int a = 0; a < 3; ++a) {
        for (int b = a + 1; b < 3; ++b) {
          const VertexId u = ft[a], v = ft[b];
          const VertexId z = ft[3 - a - b];
          for (const int g : etris.at(make_edge(u, v))) {
            if (vis[g]) continue;
            const Tri& gt = K.triangles[g];
            VertexId w = -1;
            for (const VertexId x : gt) {
              if (x != u && x != v) w = x;
            }
            if (w >= 0 && !pos[w]) {
              const Vec2 U = *pos[u], V = *pos[v], Z = *pos[z];
              const double d = dist(U, V);
              const double lu = len(u, w), lv = len(v, w);
              const double x = (d * d + lu * lu - lv * lv) / (2.0 * d);
              const double h2 = lu * lu - x * x;
              const double h = h2 > 0 ? std::sqrt(h2) : 0.0;
              const Vec2 dir{(V.x - U.x) / d, (V.y - U.y) / d};
              const Vec2 perp{-dir.y, dir.x};
              const double sgn = cross3(U, V, Z) > 0 ? -1.0 : 1.0;
              pos[w] = Vec2{U.x + x * dir.x + sgn * h * perp.x,
                            U.y + x * dir.y + sgn * h * perp.y};
            }
            vis[g] = 1;
            q.push(g);
          }
        }
      }
    }
  }

  std::ostringstream os;
  os << std::setprecision(17);
  os << "OFF\n" << K.num_vertices << ' ' << F << " 0\n";
  for (VertexId v = 0; v < K.num_vertices; ++v) {
    const Vec2 p = pos[v].value_or(Vec2{0.0, 0.0});
    os << p.x << ' ' << p.y << " 0\n";
  }
  for (const Tri& tr : K.triangles) {
    os << "3 " << tr[0] << ' ' << tr[1] << ' ' << tr[2] << '\n';
  }
  return os.str();
}

}  // namespace fillings
