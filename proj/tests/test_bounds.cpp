#include "fillings/bounds.hpp"

#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "fillings/metrics.hpp"

using namespace fillings;

TEST_CASE("vertex lower bound formula spot values") {
  // delta^3 (n-1)^2 / 8 + (n-1)/2
  CHECK(vertex_lower_bound(9, Rational(1)) == Rational(12));
  CHECK(vertex_lower_bound(3, Rational(1)) == Rational(3, 2));
  CHECK(vertex_lower_bound(9, Rational(1, 2)) == Rational(5));  // (1/8)(64/8) + 4
}

TEST_CASE("vertex lower bound recomputed from scratch") {
  for (int n = 3; n <= 40; ++n)
    for (const Rational delta : {Rational(1), Rational(1, 2), Rational(2, 3)}) {
      const Rational d3 = delta * delta * delta;
      const Rational expect =
          d3 * Rational((n - 1) * (n - 1), 8) + Rational(n - 1, 2);
      CHECK(vertex_lower_bound(n, delta) == expect);
    }
}

TEST_CASE("triangle lower bound uses the closed-complex characteristic") {
  // delta^3 (n-1)^2 / 4 + 1 - 2 chi
  CHECK(triangle_lower_bound(9, Rational(1), 2) == Rational(13));
  CHECK(triangle_lower_bound(9, Rational(1), 1) == Rational(15));
  for (int n = 3; n <= 30; ++n) {
    const Rational expect = Rational((n - 1) * (n - 1), 4) + Rational(1 - 2 * 2);
    CHECK(triangle_lower_bound(n, Rational(1), 2) == expect);
  }
}

TEST_CASE("path sum bound is k(k+2)/2") {
  CHECK(path_sum_bound(0) == Rational(0));
  CHECK(path_sum_bound(1) == Rational(3, 2));
  CHECK(path_sum_bound(2) == Rational(4));
  CHECK(path_sum_bound(3) == Rational(15, 2));
  CHECK(path_sum_bound(4) == Rational(12));
}

TEST_CASE("continuous area bound closed form") {
  // (sqrt(3)/16) delta^3 ell^2; at delta 1, ell 2pi this is (sqrt(3)/4) pi^2.
  const double pi = 3.14159265358979323846;
  CHECK(continuous_area_bound(Rational(1), 2 * pi) ==
        doctest::Approx(std::sqrt(3.0) / 4.0 * pi * pi).epsilon(1e-12));
  CHECK(continuous_area_bound(Rational(1, 2), 4.0) ==
        doctest::Approx(std::sqrt(3.0) / 16.0 * 0.125 * 16.0).epsilon(1e-12));
}

TEST_CASE("dstar ratio and window constants") {
  CHECK(dstar_ratio(200, 40) == doctest::Approx(0.125));
  CHECK(kDstarLower == doctest::Approx(1.0 / 8.0));
  CHECK(kDstarUpper == doctest::Approx(1.0 / (3.14159265358979323846 * std::sqrt(3.0)))
                           .epsilon(1e-9));
  CHECK(kDstarLower < kDstarUpper);
}

// The inequality behind path_sum_bound, exhausted over small cycles: for any
// non-adjacent boundary pair and any k distinct vertices per side, every
// pairing of chosen endpoints has distance sum at least k(k+2)/2. This is the
// independent oracle the bound evaluator is checked against.
namespace {

struct PathSumExhaustion {
  long long checked = 0;
  long long violations = 0;
  Rational worst_margin{1000000};  // min over instances of sum - bound

  void run(int max_n, int max_k) {
    for (int n = 4; n <= max_n; ++n)
      for (int x = 0; x < n; ++x)
        for (int y = x + 1; y < n; ++y) {
          if (cycle_distance(n, x, y) < 2) continue;
          std::vector<int> left, right;
          for (int v = (x + 1) % n; v != y; v = (v + 1) % n) left.push_back(v);
          for (int v = (y + 1) % n; v != x; v = (v + 1) % n) right.push_back(v);
          const int kcap = std::min({max_k, static_cast<int>(left.size()),
                                     static_cast<int>(right.size())});
          for (int k = 1; k <= kcap; ++k) check_selections(n, left, right, k);
        }
  }

 private:
  // Chosen left endpoints are a combination; right endpoints run over all
  // ordered arrangements, which enumerates every pairing exactly once.
  void check_selections(int n, const std::vector<int>& left,
                        const std::vector<int>& right, int k) {
    std::vector<int> lsel(static_cast<std::size_t>(k));
    combos(n, left, right, k, 0, 0, lsel);
  }

  void combos(int n, const std::vector<int>& left, const std::vector<int>& right, int k,
              int depth, int start, std::vector<int>& lsel) {
    if (depth == k) {
      std::vector<int> rsel;
      std::vector<char> used(right.size(), 0);
      arrange(n, right, k, 0, lsel, rsel, used);
      return;
    }
    for (int i = start; i < static_cast<int>(left.size()); ++i) {
      lsel[static_cast<std::size_t>(depth)] = left[static_cast<std::size_t>(i)];
      combos(n, left, right, k, depth + 1, i + 1, lsel);
    }
  }

  void arrange(int n, const std::vector<int>& right, int k, int depth,
               const std::vector<int>& lsel, std::vector<int>& rsel,
               std::vector<char>& used) {
    if (depth == k) {
      Rational sum(0);
      for (int i = 0; i < k; ++i)
        sum = sum + Rational(cycle_distance(n, lsel[static_cast<std::size_t>(i)],
                                            rsel[static_cast<std::size_t>(i)]));
      ++checked;
      const Rational margin = sum - path_sum_bound(k);
      if (margin < Rational(0)) ++violations;
      if (margin < worst_margin) worst_margin = margin;
      return;
    }
    for (std::size_t i = 0; i < right.size(); ++i) {
      if (used[i]) continue;
      used[i] = 1;
      rsel.push_back(right[i]);
      arrange(n, right, k, depth + 1, lsel, rsel, used);
      rsel.pop_back();
      used[i] = 0;
    }
  }
};

}  // namespace

TEST_CASE("path sum inequality holds for every selection on cycles up to 10") {
  PathSumExhaustion ex;
  ex.run(10, 4);
  // Sum over n of C(a,k)*P(b,k) across gaps: 2+10+36+112+332+972+2880.
  CHECK(ex.checked == 4344);
  CHECK(ex.violations == 0);
  // Tightness: some selection meets the bound with slack below one hop.
  CHECK(ex.worst_margin < Rational(1));
  CHECK(ex.worst_margin >= Rational(0));
}
