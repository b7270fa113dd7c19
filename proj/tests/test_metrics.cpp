#include "fillings/metrics.hpp"

#include "doctest.h"
#include "support.hpp"

#include <random>

#include "fillings/search.hpp"
#include "fillings/triangulation.hpp"

using namespace fillings;

TEST_CASE("cycle distance wraps and is symmetric") {
  CHECK(cycle_distance(6, 0, 3) == 3);
  CHECK(cycle_distance(6, 1, 5) == 2);
  CHECK(cycle_distance(6, 5, 1) == 2);
  CHECK(cycle_distance(7, 0, 3) == 3);
  CHECK(cycle_distance(7, 0, 4) == 3);
  CHECK(cycle_distance(5, 2, 2) == 0);
  for (int n = 3; n <= 12; ++n)
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) {
        const int d = cycle_distance(n, x, y);
        CHECK(d == cycle_distance(n, y, x));
        CHECK(d <= n / 2);
        const int walk = (y - x + n) % n;
        CHECK(d == std::min(walk, n - walk));
      }
}

TEST_CASE("skeleton distances agree with a hand-computed wheel") {
  const auto W = wheel(8);
  const auto g = skeleton(W);
  const auto dist = skeleton_distances(g, {0});
  REQUIRE(dist.size() == 1);
  CHECK(dist[0][0] == 0);
  CHECK(dist[0][1] == 1);
  CHECK(dist[0][8] == 1);   // hub
  CHECK(dist[0][4] == 2);   // opposite rim vertex, via the hub
  CHECK(dist[0][3] == 2);
}

TEST_CASE("unreachable vertices report the sentinel") {
  // Two disjoint triangles; no boundary tag, distances only.
  const auto K = AbstractTriangulation::from_triples(
      6, {make_tri(0, 1, 2), make_tri(3, 4, 5)}, std::nullopt);
  const auto dist = skeleton_distances(skeleton(K), {0});
  CHECK(dist[0][4] == kUnreachable);
  CHECK(dist[0][2] == 1);
}

TEST_CASE("the single triangle is isometric") {
  const auto K = AbstractTriangulation::from_triples(3, {make_tri(0, 1, 2)}, 3);
  const auto lr = lipschitz_constant(K);
  CHECK(lr.delta_achieved == Rational(1));
  CHECK(lr.is_isometric);
}

TEST_CASE("wheel constant is 2 over the cycle diameter") {
  for (int n = 4; n <= 11; ++n) {
    const auto lr = lipschitz_constant(wheel(n));
    CHECK(lr.delta_achieved == Rational(2, n / 2));
    CHECK(lr.is_isometric == (n <= 5));  // diameter 2 keeps the hub shortcut harmless
  }
}

TEST_CASE("wheel witness attains the minimum ratio") {
  const auto W = wheel(10);
  const auto lr = lipschitz_constant(W);
  const auto [x, y] = lr.witness_pair;
  const auto d = skeleton_distances(skeleton(W), {x});
  CHECK(Rational(d[0][static_cast<std::size_t>(y)], cycle_distance(10, x, y)) ==
        lr.delta_achieved);
}

TEST_CASE("delta threshold is exact, not floating point") {
  const auto W = wheel(6);  // delta = 2/3
  CHECK(is_delta_filling(W, Rational(2, 3)));
  CHECK(is_delta_filling(W, Rational(1, 2)));
  CHECK_FALSE(is_delta_filling(W, Rational(200000000001, 300000000000)));
}

TEST_CASE("lipschitz report against brute force on random disks") {
  std::mt19937 rng(9001);
  for (int trial = 0; trial < 150; ++trial) {
    const auto K = testsupport::random_disk(rng, 12);
    const int n = *K.boundary_n;
    const auto lr = lipschitz_constant(K);

    std::vector<VertexId> sources(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) sources[static_cast<std::size_t>(v)] = v;
    const auto dist = skeleton_distances(skeleton(K), sources);

    Rational best(1);
    for (int x = 0; x < n; ++x)
      for (int y = x + 1; y < n; ++y) {
        const int dc = cycle_distance(n, x, y);
        if (dc == 0) continue;
        const Rational ratio(dist[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)], dc);
        if (ratio < best) best = ratio;
      }
    CHECK(lr.delta_achieved == best);
    CHECK(lr.is_isometric == (best == Rational(1)));

    // The reported witness pair must actually attain the constant.
    const auto [wx, wy] = lr.witness_pair;
    const int dc = cycle_distance(n, wx, wy);
    REQUIRE(dc > 0);
    CHECK(Rational(dist[static_cast<std::size_t>(wx)][static_cast<std::size_t>(wy)], dc) ==
          lr.delta_achieved);
  }
}
