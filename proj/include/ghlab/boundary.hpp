#pragma once

#include <string>
#include <vector>

#include "ghlab/geodesic.hpp"
#include "ghlab/mesh.hpp"
#include "ghlab/metric_field.hpp"

namespace ghlab {

// The m boundary vertices nearest to equispaced arc-length targets, with
// their loop parameters. Vertices are distinct and in cyclic order.
struct BoundarySampling {
  std::vector<int> vertices;
  std::vector<double> params;
  double boundary_length = 0.0;

  int size() const { return static_cast<int>(vertices.size()); }
  // Cyclic arc distance between samples i and j.
  double separation(int i, int j) const;
  // Mean arc spacing between consecutive samples.
  double mean_spacing() const { return boundary_length / size(); }
};

BoundarySampling make_boundary_sampling(const IntrinsicMesh& mesh, int m);

// Travel-time data: the intrinsic distance restricted to boundary samples.
struct BoundaryDistanceData {
  BoundarySampling sampling;
  std::vector<double> matrix;  // m x m, row-major, symmetrized
  std::string mesh_id;

  int size() const { return sampling.size(); }
  double at(int i, int j) const {
    return matrix[static_cast<size_t>(i) * size() + j];
  }
};

// Full distance fields from every boundary sample; the matrix and the
// coordinate map are both reductions of this one sweep.
struct BoundaryFieldSet {
  BoundarySampling sampling;
  std::vector<DistanceField> fields;  // one per sample, indexed like vertices
  std::string mesh_id;

  int size() const { return static_cast<int>(fields.size()); }
};

BoundaryFieldSet boundary_field_set(const IntrinsicMesh& mesh, int m, int threads = 1);

// Distance matrix read off a field set, symmetrized with the transpose.
BoundaryDistanceData boundary_distance_matrix(const BoundaryFieldSet& fields);

// Convenience: sweep and reduce in one call. Requires m <= number of
// boundary vertices.
BoundaryDistanceData boundary_distance_matrix(const IntrinsicMesh& mesh, int m,
                                              int threads = 1);

// Arc-length-proportional identification of the sample loop with the
// boundary of a reference domain; preserves cyclic order (degree one).
struct BoundaryCorrespondence {
  std::vector<Vec2> points;  // image of each sample on the target boundary
  bool monotone = true;
};

BoundaryCorrespondence arc_length_correspondence(const BoundarySampling& sampling,
                                                 const ConvexDomain& target);

// Max absolute entrywise difference. Rejects mismatched samplings
// (different counts, or parameters off by more than 0.5% of the loop).
double c0_deviation(const BoundaryDistanceData& a, const BoundaryDistanceData& b);

// Off-diagonal C^1 deviation: max over sample pairs with separation >= eta
// of |A-B| and of the tangential central-difference derivatives of A-B in
// each argument. Requires eta > 2 * mean sample spacing.
double c1_deviation(const BoundaryDistanceData& a, const BoundaryDistanceData& b,
                    double eta);

// First-variation check at a sample pair: the tangential derivative of the
// boundary distance must equal minus the cosine between the boundary
// tangent and the outgoing shortest-path direction.
struct GradientCheck {
  double defect = 0.0;
  double derivative = 0.0;  // tangential derivative of bd(., y) at x
  double cosine = 0.0;      // <tangent(x), direction x -> y>
  bool skipped = false;     // non-unique direction at x
};

// from_y, when given, must be the distance field with source y = sample j.
GradientCheck boundary_gradient_check(const IntrinsicMesh& mesh,
                                      const BoundaryDistanceData& bd, int i, int j,
                                      double eta = 0.1,
                                      const DistanceField* from_y = nullptr);

// Local metric speed of the boundary parameterization, per sample:
// one-sided difference quotients bd(p, p +- k steps) / (arc distance),
// averaged over the two sides and Richardson-extrapolated over k in {1,2,4}.
std::vector<double> recover_boundary_metric(const BoundaryDistanceData& bd);

// CSV export: first row the arc-length parameters, then the m x m block.
void write_boundary_matrix_csv(const BoundaryDistanceData& bd,
                               const std::string& path);

}  // namespace ghlab
