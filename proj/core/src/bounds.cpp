#include "fillings/bounds.hpp"

#include <cmath>
#include <stdexcept>

namespace fillings {

namespace {

void check_delta(const Rational& delta) {
  if (delta <= Rational(0) || delta > Rational(1)) {
    throw std::invalid_argument("delta must lie in (0, 1]");
  }
}

}  // namespace

Rational vertex_lower_bound(int n, const Rational& delta) {
  if (n < 3) throw std::invalid_argument("vertex_lower_bound requires n >= 3");
  check_delta(delta);
  const Rational m(n - 1);
  return delta * delta * delta * m * m / Rational(8) + m / Rational(2);
}

Rational triangle_lower_bound(int n, const Rational& delta, int chi) {
  if (n < 3) throw std::invalid_argument("triangle_lower_bound requires n >= 3");
  check_delta(delta);
  const Rational m(n - 1);
  return delta * delta * delta * m * m / Rational(4) + Rational(1) - Rational(2 * chi);
}

Rational path_sum_bound(int k) {
  if (k < 0) throw std::invalid_argument("path_sum_bound requires k >= 0");
  return Rational(static_cast<std::int64_t>(k) * (k + 2), 2);
}

double continuous_area_bound(const Rational& delta, double ell) {
  check_delta(delta);
  if (!(ell > 0)) throw std::invalid_argument("ell must be positive");
  const double d = delta.to_double();
  return std::sqrt(3.0) / 16.0 * d * d * d * ell * ell;
}

double dstar_ratio(std::int64_t num_vertices, int n) {
  if (n < 3) throw std::invalid_argument("dstar_ratio requires n >= 3");
  return static_cast<double>(num_vertices) / (static_cast<double>(n) * n);
}

}  // namespace fillings
