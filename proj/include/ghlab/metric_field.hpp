#pragma once

#include <array>
#include <functional>
#include <vector>

#include "ghlab/geometry.hpp"

namespace ghlab {

// Convex compact planar region: a round disk or a convex polygon, both
// centered wherever the caller put them. Boundary is parameterized by
// Euclidean arc length, counterclockwise.
class ConvexDomain {
 public:
  static ConvexDomain disk(double radius);
  // Vertices in counterclockwise order; must form a strictly convex polygon.
  static ConvexDomain polygon(std::vector<Vec2> vertices);

  bool is_disk() const { return is_disk_; }
  double area() const;
  double diameter() const;
  double boundary_length() const;
  // Signed distance to the boundary, positive inside.
  double inset(Vec2 p) const;
  bool contains(Vec2 p, double tol = 0.0) const { return inset(p) >= -tol; }
  Vec2 boundary_point(double s) const;
  Vec2 inward_normal(double s) const;

  // Deterministic square-grid sample of the region at the given spacing.
  std::vector<Vec2> interior_grid(double spacing) const;
  // Evenly spaced boundary samples at most `spacing` apart.
  std::vector<Vec2> boundary_grid(double spacing) const;

 private:
  ConvexDomain() = default;
  bool is_disk_ = true;
  double radius_ = 1.0;
  Vec2 center_{0.0, 0.0};
  std::vector<Vec2> poly_;
  std::vector<double> cumlen_;  // cumulative edge lengths, poly only
};

// Riemannian metric on a convex planar region. The primary form is
// conformal, g = e^{2u} * (Euclidean); an optional SPD tensor field
// (g11, g12, g22) overrides it for length integration only.
struct MetricField {
  ConvexDomain domain = ConvexDomain::disk(1.0);
  std::function<double(Vec2)> u;
  std::function<Vec2(Vec2)> grad_u;
  std::function<std::array<double, 3>(Vec2)> tensor;  // null unless general

  bool has_tensor() const { return static_cast<bool>(tensor); }
  double scale(Vec2 p) const { return std::exp(u(p)); }

  // Length of the straight segment [a, b] in the field metric, 3-point
  // Gauss-Legendre quadrature.
  double segment_length(Vec2 a, Vec2 b) const;

  static MetricField euclidean(ConvexDomain d);
  static MetricField constant(ConvexDomain d, double u0);
  // u(p) = amplitude * exp(-|p - center|^2 / (2 width^2)).
  static MetricField gaussian_bump(ConvexDomain d, double amplitude,
                                   double width, Vec2 center = {0.0, 0.0});
};

}  // namespace ghlab
