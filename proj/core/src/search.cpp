#include "fillings/search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <map>
#include <queue>
#include <set>
#include <stdexcept>
#include <thread>
#include <utility>

#include "fillings/bounds.hpp"
#include "fillings/metrics.hpp"

namespace fillings {

namespace {

bool is_cycle_edge(const Edge& e, int n) {
  return (e.second == e.first + 1 && e.second <= n - 1) ||
         (e.first == 0 && e.second == n - 1);
}

// Shared node budget. admit() charges one node and returns false once a limit
// trips; the first trip wins the reason slot.
struct Budget {
  std::atomic<long long>* counter = nullptr;
  long long cap = 0;
  std::atomic<int>* stop = nullptr;  // 0 running, 1 nodes, 2 seconds
  std::chrono::steady_clock::time_point deadline{};
  bool has_deadline = false;

  bool admit() {
    if (stop->load(std::memory_order_relaxed) != 0) return false;
    const long long id = counter->fetch_add(1, std::memory_order_relaxed);
    if (id >= cap) {
      int expected = 0;
      stop->compare_exchange_strong(expected, 1);
      return false;
    }
    if (has_deadline && (id & 1023) == 0 &&
        std::chrono::steady_clock::now() >= deadline) {
      int expected = 0;
      stop->compare_exchange_strong(expected, 2);
      return false;
    }
    return true;
  }

  int reason() const { return stop->load(); }
};

// Partial filling grown one triangle at a time. The mult map holds the n
// cycle edges (multiplicities 0 or 1) plus every edge of the triangles added
// so far; a state is complete when no edge is deficient.
class Grower {
 public:
  Grower(int n, int vmax) : n_(n), vmax_(vmax), verts_(n) {
    for (int i = 0; i < n; ++i) mult_[make_edge(i, (i + 1) % n)] = 0;
  }

  int verts() const { return verts_; }
  std::vector<Tri> triangles() const { return tris_; }

  // Lexicographically smallest edge still missing a triangle: a cycle edge in
  // no triangle yet, or an interior edge in only one.
  std::optional<Edge> smallest_deficient() const {
    for (const auto& [e, m] : mult_) {
      const bool cyc = is_cycle_edge(e, n_);
      if ((cyc && m == 0) || (!cyc && m == 1)) return e;
    }
    return std::nullopt;
  }

  // Third vertices w for which {e, w} keeps every edge inside its
  // multiplicity cap and repeats no triple. Existing vertices come in index
  // order; one fresh vertex (index verts()) is last when room remains.
  std::vector<VertexId> candidates(const Edge& e) const {
    std::vector<VertexId> out;
    const VertexId limit = verts_ + (verts_ < vmax_ ? 1 : 0);
    for (VertexId w = 0; w < limit; ++w) {
      if (w == e.first || w == e.second) continue;
      if (w < verts_) {
        if (tri_set_.count(make_tri(e.first, e.second, w))) continue;
        if (!room(make_edge(e.first, w)) || !room(make_edge(e.second, w))) continue;
      }
      out.push_back(w);
    }
    return out;
  }

  void apply(const Edge& e, VertexId w) {
    tris_.push_back(make_tri(e.first, e.second, w));
    tri_set_.insert(tris_.back());
    bump(e, +1);
    bump(make_edge(e.first, w), +1);
    bump(make_edge(e.second, w), +1);
    if (w == verts_) ++verts_;
  }

  void undo(const Edge& e, VertexId w, bool fresh) {
    tri_set_.erase(tris_.back());
    tris_.pop_back();
    bump(e, -1);
    bump(make_edge(e.first, w), -1);
    bump(make_edge(e.second, w), -1);
    if (fresh) --verts_;
  }

  // True when some boundary pair is already closer than delta demands;
  // further growth only shrinks distances, so the state is dead.
  bool violates(const Rational& delta) {
    adj_.assign(verts_, {});
    for (const auto& [e, m] : mult_) {
      if (m <= 0) continue;
      adj_[e.first].push_back(e.second);
      adj_[e.second].push_back(e.first);
    }
    for (VertexId s = 0; s + 1 < n_; ++s) {
      bfs_from(s);
      for (VertexId t = s + 1; t < n_; ++t) {
        if (dist_[t] == kUnreachable) continue;
        const int dc = cycle_distance(n_, s, t);
        if (dc < 2) continue;  // d_K >= 1 always covers these pairs
        if (Rational(dist_[t]) < delta * Rational(dc)) return true;
      }
    }
    return false;
  }

 private:
  bool room(const Edge& e) const {
    const auto it = mult_.find(e);
    const int m = (it == mult_.end()) ? 0 : it->second;
    return m < (is_cycle_edge(e, n_) ? 1 : 2);
  }

  void bump(const Edge& e, int d) {
    auto it = mult_.try_emplace(e, 0).first;
    it->second += d;
    if (it->second == 0 && !is_cycle_edge(e, n_)) mult_.erase(it);
  }

  void bfs_from(VertexId s) {
    dist_.assign(verts_, kUnreachable);
    dist_[s] = 0;
    queue_.clear();
    queue_.push_back(s);
    for (std::size_t head = 0; head < queue_.size(); ++head) {
      const VertexId u = queue_[head];
      for (const VertexId v : adj_[u]) {
        if (dist_[v] == kUnreachable) {
          dist_[v] = dist_[u] + 1;
          queue_.push_back(v);
        }
      }
    }
  }

  int n_;
  int vmax_;
  int verts_;
  std::vector<Tri> tris_;
  std::set<Tri> tri_set_;
  std::map<Edge, int> mult_;
  // Scratch for violates(); one Grower per thread, so no sharing.
  std::vector<std::vector<VertexId>> adj_;
  std::vector<int> dist_;
  std::vector<VertexId> queue_;
};

AbstractTriangulation snapshot(const Grower& g, int n) {
  std::vector<Tri> tris = g.triangles();
  std::sort(tris.begin(), tris.end());
  return AbstractTriangulation::from_triples(g.verts(), std::move(tris), n);
}

// DFS under the delta prune; reports the first exact-V completion of the
// branch and stops the branch there.
bool explore(Grower& g, int V, const Rational& delta, Budget& budget,
             std::vector<Tri>* witness) {
  if (!budget.admit()) return false;
  if (g.violates(delta)) return false;
  const auto e = g.smallest_deficient();
  if (!e) {
    if (g.verts() < V) {
      // Complete fillings this small were ruled out at an earlier level or by
      // the vertex lower bound, so the prune must have rejected them already.
      throw std::logic_error("search invariant broken: feasible filling below level");
    }
    *witness = g.triangles();
    return true;
  }
  for (const VertexId w : g.candidates(*e)) {
    const bool fresh = (w == g.verts());
    g.apply(*e, w);
    const bool found = explore(g, V, delta, budget, witness);
    g.undo(*e, w, fresh);
    if (found) return true;
  }
  return false;
}

struct LevelResult {
  bool found = false;
  std::vector<Tri> witness;
};

// Enumerates the whole level; the root's branches are dealt round-robin to
// threads and reduced in branch order, so the outcome and the node count do
// not depend on the thread count.
LevelResult run_level(int n, int V, const Rational& delta, Budget& budget,
                      int threads) {
  if (!budget.admit()) return {};
  Grower root(n, V);
  const Edge e0 = *root.smallest_deficient();
  const std::vector<VertexId> branch_ws = root.candidates(e0);
  const int branches = static_cast<int>(branch_ws.size());

  std::vector<LevelResult> per(branches);
  std::vector<std::exception_ptr> errors(threads);
  auto work = [&](int t) {
    try {
      Grower g(n, V);
      for (int i = t; i < branches; i += threads) {
        const VertexId w = branch_ws[i];
        const bool fresh = (w == g.verts());
        g.apply(e0, w);
        std::vector<Tri> wit;
        if (explore(g, V, delta, budget, &wit)) {
          per[i].found = true;
          per[i].witness = std::move(wit);
        }
        g.undo(e0, w, fresh);
      }
    } catch (...) {
      errors[t] = std::current_exception();
    }
  };
  if (threads <= 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads - 1);
    for (int t = 1; t < threads; ++t) pool.emplace_back(work, t);
    work(0);
    for (auto& th : pool) th.join();
  }
  for (const auto& err : errors) {
    if (err) std::rethrow_exception(err);
  }

  if (budget.reason() != 0) return {};
  for (auto& r : per) {
    if (r.found) return std::move(r);
  }
  return {};
}

void enumerate_rec(Grower& g, int n, Budget& budget,
                   std::set<std::string>& seen,
                   std::vector<AbstractTriangulation>& out) {
  if (!budget.admit()) return;
  const auto e = g.smallest_deficient();
  if (!e) {
    AbstractTriangulation K = snapshot(g, n);
    if (seen.insert(canonical_form(K)).second) out.push_back(std::move(K));
    return;
  }
  for (const VertexId w : g.candidates(*e)) {
    const bool fresh = (w == g.verts());
    g.apply(*e, w);
    enumerate_rec(g, n, budget, seen, out);
    g.undo(*e, w, fresh);
  }
}

}  // namespace

AbstractTriangulation wheel(int n) {
  if (n < 3) throw std::invalid_argument("wheel: n must be at least 3");
  std::vector<Tri> tris;
  tris.reserve(n);
  for (int i = 0; i < n; ++i) tris.push_back(make_tri(i, (i + 1) % n, n));
  std::sort(tris.begin(), tris.end());
  return AbstractTriangulation::from_triples(n + 1, std::move(tris), n);
}

EnumerationResult enumerate_fillings(int n, int max_vertices,
                                     long long budget_nodes) {
  if (n < 3) throw std::invalid_argument("enumerate_fillings: n must be at least 3");
  if (max_vertices < n) {
    throw std::invalid_argument("enumerate_fillings: max_vertices must be at least n");
  }
  if (budget_nodes < 1) throw std::invalid_argument("enumerate_fillings: empty budget");

  std::atomic<long long> counter{0};
  std::atomic<int> stop{0};
  Budget budget{&counter, budget_nodes, &stop, {}, false};

  Grower g(n, max_vertices);
  std::set<std::string> seen;
  EnumerationResult res;
  enumerate_rec(g, n, budget, seen, res.classes);
  res.budget_exhausted = stop.load() != 0;
  res.nodes_explored = res.budget_exhausted ? budget_nodes : counter.load();
  return res;
}

SearchResult compute_D(int n, const Rational& epsilon, const SearchOptions& opts) {
  if (n < 3) throw std::invalid_argument("compute_D: n must be at least 3");
  if (epsilon < Rational(0) || Rational(1) <= epsilon) {
    throw std::invalid_argument("compute_D: epsilon must lie in [0, 1)");
  }
  if (opts.threads < 1) throw std::invalid_argument("compute_D: threads must be positive");
  if (opts.budget_nodes < 1) throw std::invalid_argument("compute_D: empty node budget");

  const Rational delta = Rational(1) - epsilon;
  SearchResult res;
  res.n = n;
  res.epsilon = epsilon;

  // Levels below the vertex lower bound need no search.
  const long long start =
      std::max<long long>(n, ceil_of(vertex_lower_bound(n, delta)));

  std::atomic<long long> counter{0};
  std::atomic<int> stop{0};
  Budget budget{&counter, opts.budget_nodes, &stop, {}, false};
  if (opts.budget_seconds) {
    budget.has_deadline = true;
    budget.deadline =
        std::chrono::steady_clock::now() +
        std::chrono::duration_cast<std::chrono::steady_clock::duration>(
            std::chrono::duration<double>(*opts.budget_seconds));
  }

  long long nodes_at_checkpoint = 0;
  for (long long V = start;; ++V) {
    const LevelResult lvl =
        run_level(n, static_cast<int>(V), delta, budget, opts.threads);
    if (budget.reason() == 1) {
      res.nodes_explored = opts.budget_nodes;
      res.levels_exhausted_below = static_cast<int>(V);
      res.budget_exhausted = "nodes";
      return res;
    }
    if (budget.reason() == 2) {
      res.nodes_explored = nodes_at_checkpoint;
      res.levels_exhausted_below = static_cast<int>(V);
      res.budget_exhausted = "seconds";
      return res;
    }
    nodes_at_checkpoint = counter.load();
    if (lvl.found) {
      std::vector<Tri> tris = lvl.witness;
      std::sort(tris.begin(), tris.end());
      res.d_value = static_cast<int>(V);
      res.witness = AbstractTriangulation::from_triples(static_cast<VertexId>(V),
                                                        std::move(tris), n);
      res.nodes_explored = nodes_at_checkpoint;
      res.proof_of_minimality = true;
      res.levels_exhausted_below = static_cast<int>(V);
      return res;
    }
  }
}

}  // namespace fillings
