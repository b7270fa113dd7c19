#pragma once

#include "fillings/rational.hpp"

namespace fillings {

// Limit constants for the normalized vertex count |V|/n^2 of isometric
// fillings: every filling needs at least dstar_lower * n^2 * (1 - o(1))
// vertices, and hemisphere discretizations achieve dstar_upper * n^2 * (1 + o(1)).
inline constexpr double kDstarLower = 0.125;          // 1/8
inline constexpr double kDstarUpper = 0.18377629847;  // 1/(pi*sqrt(3))

// delta^3 (n-1)^2 / 8 + (n-1)/2, exact. Requires n >= 3 and delta in (0, 1].
Rational vertex_lower_bound(int n, const Rational& delta);

// delta^3 (n-1)^2 / 4 + 1 - 2*chi, exact. chi is the Euler characteristic of
// the closed complex obtained by closing the boundary cycle.
Rational triangle_lower_bound(int n, const Rational& delta, int chi);

// Lower bound k(k+2)/2 for the sum of cycle distances d_C(l_i, r_i) over any
// k vertex-disjoint paths joining the two sides of a diametral pair. k >= 0.
Rational path_sum_bound(int k);

// (sqrt(3)/16) * delta^3 * ell^2: continuous filling area lower bound for a
// delta-Lipschitz filling of a circle of length ell.
double continuous_area_bound(const Rational& delta, double ell);

// |V| / n^2 for comparing discretizations against the D* window.
double dstar_ratio(std::int64_t num_vertices, int n);

}  // namespace fillings
