#include "fillings/search.hpp"

#include "doctest.h"

#include <algorithm>
#include <set>
#include <string>

#include "fillings/bounds.hpp"
#include "fillings/metrics.hpp"
#include "fillings/triangulation.hpp"

using namespace fillings;

namespace {

// Brute force D(n; 0): try every set of triangles over a fixed vertex count,
// keep valid isometric fillings, and take the smallest vertex count that
// admits one. Exponential in C(V,3); fine for V <= 6.
bool exists_isometric_filling_brute(int n, int V) {
  std::vector<Tri> all;
  for (VertexId a = 0; a < V; ++a)
    for (VertexId b = a + 1; b < V; ++b)
      for (VertexId c = b + 1; c < V; ++c) all.push_back(make_tri(a, b, c));
  const std::size_t m = all.size();

  // Masks missing a boundary edge can be rejected without building anything.
  std::vector<std::size_t> covers(static_cast<std::size_t>(n), 0);
  for (std::size_t i = 0; i < m; ++i)
    for (int v = 0; v < n; ++v) {
      const Edge be = make_edge(v, (v + 1) % n);
      const Tri& t = all[i];
      const bool has = (make_edge(t[0], t[1]) == be || make_edge(t[1], t[2]) == be ||
                        make_edge(t[0], t[2]) == be);
      if (has) covers[static_cast<std::size_t>(v)] |= std::size_t{1} << i;
    }

  for (std::size_t mask = 1; mask < (std::size_t{1} << m); ++mask) {
    bool covered = true;
    for (int v = 0; v < n && covered; ++v)
      covered = (mask & covers[static_cast<std::size_t>(v)]) != 0;
    if (!covered) continue;
    std::vector<Tri> tris;
    for (std::size_t i = 0; i < m; ++i)
      if (mask >> i & 1) tris.push_back(all[i]);
    AbstractTriangulation K;
    K.num_vertices = V;
    K.triangles = tris;  // already sorted by construction order
    K.boundary_n = n;
    if (!validate(K).ok()) continue;
    if (is_delta_filling(K, Rational(1))) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("wheel is a valid filling with a hub") {
  for (int n = 3; n <= 9; ++n) {
    const auto W = wheel(n);
    CHECK(validate(W).ok());
    CHECK(W.num_vertices == n + 1);
    CHECK(static_cast<int>(W.triangles.size()) == n);
    CHECK(*W.boundary_n == n);
  }
}

TEST_CASE("enumeration matches hand counts on tiny instances") {
  const auto only3 = enumerate_fillings(3, 3);
  REQUIRE(only3.classes.size() == 1);
  CHECK(only3.classes[0].triangles == std::vector<Tri>{make_tri(0, 1, 2)});

  // The two diagonal splits of the quad collapse to one class.
  const auto quads = enumerate_fillings(4, 4);
  CHECK(quads.classes.size() == 1);

  // With one extra vertex the wheel appears.
  const auto with5 = enumerate_fillings(4, 5);
  const auto wheel_form = canonical_form(wheel(4));
  CHECK(std::any_of(with5.classes.begin(), with5.classes.end(),
                    [&](const AbstractTriangulation& K) {
                      return canonical_form(K) == wheel_form;
                    }));
}

TEST_CASE("enumeration emits each canonical form once and all valid") {
  for (const auto& [n, cap] : std::vector<std::pair<int, int>>{{4, 6}, {5, 7}, {6, 7}}) {
    const auto er = enumerate_fillings(n, cap);
    REQUIRE_FALSE(er.budget_exhausted);
    std::set<std::string> forms;
    for (const auto& K : er.classes) {
      CHECK(validate(K).ok());
      CHECK(*K.boundary_n == n);
      CHECK(K.num_vertices <= cap);
      CHECK(forms.insert(canonical_form(K)).second);
    }
  }
}

TEST_CASE("enumeration budget yields a prefix, not garbage") {
  const auto full = enumerate_fillings(5, 7);
  REQUIRE_FALSE(full.budget_exhausted);
  const auto cut = enumerate_fillings(5, 7, full.nodes_explored / 3);
  CHECK(cut.budget_exhausted);
  CHECK(cut.classes.size() <= full.classes.size());
  for (std::size_t i = 0; i < cut.classes.size(); ++i)
    CHECK(canonical_form(cut.classes[i]) == canonical_form(full.classes[i]));
}

TEST_CASE("minimum filling sizes against set-exhaustion brute force") {
  // D(4;0): no isometric filling on 4 vertices, one on 5.
  CHECK_FALSE(exists_isometric_filling_brute(4, 4));
  CHECK(exists_isometric_filling_brute(4, 5));
  // D(5;0): none on 5, one on 6.
  CHECK_FALSE(exists_isometric_filling_brute(5, 5));
  CHECK(exists_isometric_filling_brute(5, 6));
}

TEST_CASE("compute_D on the base cases") {
  const auto r3 = compute_D(3, Rational(0));
  CHECK(r3.d_value == 3);
  CHECK(r3.proof_of_minimality);

  const auto r4 = compute_D(4, Rational(0));
  CHECK(r4.d_value == 5);
  CHECK(r4.proof_of_minimality);
  REQUIRE(r4.witness.has_value());
  CHECK(canonical_form(*r4.witness) == canonical_form(wheel(4)));

  const auto r5 = compute_D(5, Rational(0));
  CHECK(r5.d_value == 6);
  CHECK(r5.proof_of_minimality);
}

TEST_CASE("compute_D respects the vertex lower bound and its witness verifies") {
  for (int n = 3; n <= 6; ++n) {
    const auto r = compute_D(n, Rational(0));
    REQUIRE(r.d_value.has_value());
    CHECK(*r.d_value >= ceil_of(vertex_lower_bound(n, Rational(1))));
    REQUIRE(r.witness.has_value());
    CHECK(validate(*r.witness).ok());
    CHECK(is_delta_filling(*r.witness, Rational(1)));
    CHECK(r.witness->num_vertices == *r.d_value);
    CHECK(r.levels_exhausted_below == *r.d_value);
  }
}

TEST_CASE("relaxed search can use fewer vertices") {
  // At delta = 1/2 the zigzag hexagon (short chords only, no new vertices)
  // already qualifies, so the relaxed minimum drops to the boundary itself.
  const auto strict = compute_D(6, Rational(0));
  const auto relaxed = compute_D(6, Rational(1, 2));
  REQUIRE(strict.d_value.has_value());
  REQUIRE(relaxed.d_value.has_value());
  CHECK(*relaxed.d_value == 6);
  CHECK(*relaxed.d_value < *strict.d_value);
  CHECK(is_delta_filling(*relaxed.witness, Rational(1, 2)));
}

TEST_CASE("search results are byte-identical across thread counts") {
  SearchOptions one, four;
  one.threads = 1;
  four.threads = 4;
  for (int n : {4, 5, 6}) {
    const auto a = compute_D(n, Rational(0), one);
    const auto b = compute_D(n, Rational(0), four);
    CHECK(a.d_value == b.d_value);
    CHECK(a.nodes_explored == b.nodes_explored);
    CHECK(a.proof_of_minimality == b.proof_of_minimality);
    REQUIRE(a.witness.has_value());
    REQUIRE(b.witness.has_value());
    CHECK(a.witness->triangles == b.witness->triangles);
  }
}

TEST_CASE("node budget trips exactly at the cap") {
  SearchOptions opts;
  opts.budget_nodes = 7;
  const auto r = compute_D(6, Rational(0), opts);
  CHECK(r.budget_exhausted == std::optional<std::string>{"nodes"});
  CHECK(r.nodes_explored == 7);
  CHECK_FALSE(r.d_value.has_value());
  CHECK_FALSE(r.proof_of_minimality);
}
