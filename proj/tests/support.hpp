#pragma once

#include <cmath>
#include <random>

#include "ghlab/geodesic.hpp"
#include "ghlab/mesh.hpp"

namespace ghlab::test {

inline int nearest_vertex(const IntrinsicMesh& mesh, Vec2 p) {
  int best = -1;
  double best_d = std::numeric_limits<double>::infinity();
  for (int v = 0; v < mesh.vertex_count(); ++v) {
    if (!mesh.has_coord(v)) continue;
    double d = norm2(mesh.coord(v) - p);
    if (d < best_d) {
      best_d = d;
      best = v;
    }
  }
  return best;
}

inline int nearest_boundary_vertex(const IntrinsicMesh& mesh, Vec2 p) {
  int best = -1;
  double best_d = std::numeric_limits<double>::infinity();
  for (int v : mesh.boundary_loop()) {
    double d = norm2(mesh.coord(v) - p);
    if (d < best_d) {
      best_d = d;
      best = v;
    }
  }
  return best;
}

// Shared meshes for the heavier tests; built once per binary.
inline const IntrinsicMesh& unit_disk_002() {
  static IntrinsicMesh mesh = build_disk_mesh(1.0, 0.02);
  return mesh;
}

inline const IntrinsicMesh& unit_disk_005() {
  static IntrinsicMesh mesh = build_disk_mesh(1.0, 0.05);
  return mesh;
}

}  // namespace ghlab::test
