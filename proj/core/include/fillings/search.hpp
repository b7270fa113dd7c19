#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fillings/rational.hpp"
#include "fillings/triangulation.hpp"

namespace fillings {

// Wheel filling of C_n: one hub vertex (index n) joined to every boundary
// vertex. Its Lipschitz constant is 2/d where d is the cycle diameter.
AbstractTriangulation wheel(int n);

struct EnumerationResult {
  // One representative per isomorphism class, in generation order.
  std::vector<AbstractTriangulation> classes;
  long long nodes_explored = 0;
  bool budget_exhausted = false;  // when set, classes is a prefix of the stream
};

// Every filling of C_n with at most max_vertices vertices, up to
// boundary-respecting isomorphism. Fillings are built by repeatedly attaching
// a triangle to the lexicographically smallest deficient edge, which yields
// each triangle set exactly once; canonical_form collapses relabelings.
EnumerationResult enumerate_fillings(int n, int max_vertices,
                                     long long budget_nodes = 10'000'000);

struct SearchOptions {
  long long budget_nodes = 10'000'000;
  std::optional<double> budget_seconds;
  int threads = 1;
};

struct SearchResult {
  int n = 0;
  Rational epsilon{0};
  // Minimal vertex count of a (1 - epsilon)-Lipschitz filling, unset when the
  // budget ran out first.
  std::optional<int> d_value;
  std::optional<AbstractTriangulation> witness;
  long long nodes_explored = 0;
  bool proof_of_minimality = false;
  // Every vertex count below this is ruled out, by the vertex lower bound or
  // by exhaustive search.
  int levels_exhausted_below = 0;
  std::optional<std::string> budget_exhausted;  // "nodes" or "seconds"
};

// Exhaustive level search over the vertex count: level V enumerates all
// fillings with at most V vertices, keeps exact-V completions, and prunes
// branches whose current boundary distances already violate delta = 1 -
// epsilon (adding triangles only shrinks distances, so the violation is
// permanent). Results are byte-identical for any thread count: the root
// branches are partitioned over threads, every level runs to completion, and
// the per-branch outcomes are reduced in branch order. When the node budget
// trips, the partial level is discarded and nodes_explored reports the cap; a
// seconds trip instead reports the count at the last completed level.
SearchResult compute_D(int n, const Rational& epsilon, const SearchOptions& opts = {});

}  // namespace fillings
