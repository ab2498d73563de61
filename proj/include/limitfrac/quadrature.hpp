#pragma once

#include <array>
#include <vector>

namespace limitfrac {

struct QuadPoint1D {
  double x;  // in [0, 1]
  double w;
};

/// Gauss-Legendre rule with n points mapped to [0, 1].
std::vector<QuadPoint1D> gauss_legendre(int n);

struct TriangleQuadPoint {
  std::array<double, 3> bary;
  double w;  // weights sum to 1 (multiply by the element area)
};

/// Collapsed (Duffy) tensor Gauss rule with n*n positive-weight points.
std::vector<TriangleQuadPoint> collapsed_gauss_rule(int n);

/// Symmetric 3-point rule, exact for quadratics.
const std::vector<TriangleQuadPoint>& three_point_rule();

}  // namespace limitfrac
