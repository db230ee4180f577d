#pragma once

#include <span>
#include <string>
#include <vector>

#include "ghlab/boundary.hpp"
#include "ghlab/geometry.hpp"
#include "ghlab/mesh.hpp"
#include "ghlab/metric_field.hpp"

namespace ghlab {

// One distance-like coordinate: the pointwise minimum over boundary samples
// of (distance to the sample) + (target coordinate of the sample along v).
struct DirectionalField {
  Vec2 v{1.0, 0.0};
  std::vector<double> values;  // per mesh vertex
  std::vector<int> foot;       // boundary sample index achieving the minimum
};

DirectionalField phi_direction(const BoundaryFieldSet& fields,
                               const BoundaryCorrespondence& target, Vec2 v);

// The planar coordinate map assembled from the two axis directions.
struct EmbeddingMap {
  DirectionalField phi1, phi2;
  std::vector<Vec2> coords;  // (phi1, phi2) per vertex
};

EmbeddingMap build_embedding(const BoundaryFieldSet& fields,
                             const BoundaryCorrespondence& target);

// Max over vertices of |phi_v(x) - phi_v(foot(x)) - d(x, foot(x))|; bounded
// by the worst boundary-value defect of the field.
double verify_foot_identity(const DirectionalField& field, const BoundaryFieldSet& fields);

// Probe the coordinate map along extra directions: a distance-like map that
// matches its own directional components lies near the diagonal copy of the
// plane inside the probe space.
struct LiftDiagnostics {
  std::vector<Vec2> directions;      // 16 probes, equally spaced, offset from the axes
  std::vector<double> defects;       // per probe: max_x |phi_v(x) - <phi(x), v>|
  double max_defect = 0.0;
  int argmax_vertex = -1;
  double lift_distance = 0.0;  // max over x of the orthogonal-pair aggregation
};

LiftDiagnostics lift_diagnostics(const BoundaryFieldSet& fields,
                                 const BoundaryCorrespondence& target,
                                 const EmbeddingMap& map);

// Max over edges of |value difference| - k * edge length (<= 0 when the
// field/map is k-Lipschitz). Fields are 1-Lipschitz by construction.
double lipschitz_defect(const DirectionalField& field, const IntrinsicMesh& mesh,
                        double k = 1.0);
double lipschitz_defect(const EmbeddingMap& map, const IntrinsicMesh& mesh, double k);

// Hausdorff distances (interior, boundary) between the image of the map and
// a reference region discretized at the given spacing.
struct ImageHausdorff {
  double interior = 0.0;
  double boundary = 0.0;
};

ImageHausdorff image_hausdorff(const EmbeddingMap& map, const IntrinsicMesh& mesh,
                               const ConvexDomain& region, double spacing);

// Max excess of the per-triangle affine Jacobian over 1; the map should not
// expand areas beyond discretization error.
double jacobian_defect(const EmbeddingMap& map, const IntrinsicMesh& mesh);

// Compare the area of a sublevel region (boundary proximity >= delta, with
// the fractional straddle rule) against the area of its image triangles.
struct ImageAreaCheck {
  double domain_area = 0.0;
  double image_area = 0.0;
};

ImageAreaCheck image_area_check(const EmbeddingMap& map, const IntrinsicMesh& mesh,
                                double delta, std::span<const double> boundary_prox);

// CSV rows: vertex, phi1, phi2, foot1, foot2.
void write_embedding_csv(const EmbeddingMap& map, const std::string& path);

}  // namespace ghlab
