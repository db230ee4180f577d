#pragma once

#include <limits>
#include <span>
#include <vector>

#include "ghlab/mesh.hpp"
#include "ghlab/metric_field.hpp"

namespace ghlab {

// Exact shortest-path distances on the weighted mesh graph from a source
// set. Unreached vertices (radius-limited runs) hold +infinity.
struct DistanceField {
  std::vector<double> values;
  std::vector<int> pred;  // -1 on sources and unreached vertices
  std::vector<int> sources;

  double operator[](int v) const { return values[v]; }
};

DistanceField distance_field(
    const IntrinsicMesh& mesh, std::span<const int> sources,
    double max_radius = std::numeric_limits<double>::infinity());

// Distance to the boundary loop.
DistanceField boundary_proximity(const IntrinsicMesh& mesh);

// Shortest path from the field's source set to target, listed source-first.
std::vector<int> extract_path(const DistanceField& field, int target);

struct InitialDirection {
  Vec2 dir;            // unit vector in reference coordinates
  bool unique = true;  // false when a competing shortest path leaves at > 30 degrees
};

// Direction at x of the extracted shortest path toward y, estimated by the
// longest straight secant of the path prefix (robust against lattice
// zig-zag). Requires reference coordinates at x.
InitialDirection initial_direction(const IntrinsicMesh& mesh, int x, int y);
// Same, reusing a distance field already computed from source y.
InitialDirection initial_direction(const IntrinsicMesh& mesh,
                                   const DistanceField& from_y, int x);

struct GeodesicSample {
  double t = 0.0;  // metric arc length from the entry point
  Vec2 p;
};

struct GeodesicPath {
  std::vector<GeodesicSample> samples;
  double length = 0.0;
  Vec2 entry_point, entry_dir;  // entry_dir is metric-unit
  double entry_angle = 0.0;     // vs the inward normal, radians
  Vec2 exit_point;
  bool trapped = false;
};

// Integrates the geodesic of the conformal metric e^{2u}(dx^2+dy^2) from a
// boundary point with an inward initial direction, by RK4 in metric arc
// length; stops on the boundary (bisection-refined) or flags the ray as
// trapped after length 100 * diam(domain).
GeodesicPath trace_geodesic(const MetricField& field, Vec2 p, Vec2 v, double step);

}  // namespace ghlab
