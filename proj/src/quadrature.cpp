#include "limitfrac/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace limitfrac {

std::vector<QuadPoint1D> gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("Gauss-Legendre rule needs at least one point");
  std::vector<QuadPoint1D> rule(n);
  // Legendre polynomial P_n and its derivative by the three-term recurrence.
  auto legendre = [n](double x, double& dp) {
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = pk;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    return p1;
  };
  for (int i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      const double dx = legendre(x, dp) / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    legendre(x, dp);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule[i] = {0.5 * (1.0 - x), 0.5 * w};
  }
  return rule;
}

std::vector<TriangleQuadPoint> collapsed_gauss_rule(int n) {
  const auto gl = gauss_legendre(n);
  std::vector<TriangleQuadPoint> rule;
  rule.reserve(static_cast<std::size_t>(n) * n);
  for (const auto& a : gl) {
    for (const auto& b : gl) {
      const double xi = a.x;
      const double eta = b.x * (1.0 - a.x);
      // Reference triangle has area 1/2; normalize so weights sum to 1.
      rule.push_back({{1.0 - xi - eta, xi, eta}, 2.0 * a.w * b.w * (1.0 - a.x)});
    }
  }
  return rule;
}

const std::vector<TriangleQuadPoint>& three_point_rule() {
  static const std::vector<TriangleQuadPoint> rule = {
      {{2.0 / 3.0, 1.0 / 6.0, 1.0 / 6.0}, 1.0 / 3.0},
      {{1.0 / 6.0, 2.0 / 3.0, 1.0 / 6.0}, 1.0 / 3.0},
      {{1.0 / 6.0, 1.0 / 6.0, 2.0 / 3.0}, 1.0 / 3.0},
  };
  return rule;
}

}  // namespace limitfrac
