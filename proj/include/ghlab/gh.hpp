#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ghlab/geometry.hpp"
#include "ghlab/mesh.hpp"

namespace ghlab {

// Uniform bucket grid over a planar point set for nearest-point queries.
class PointGrid {
 public:
  explicit PointGrid(std::span<const Vec2> points);

  int nearest_index(Vec2 q) const;
  double nearest_distance(Vec2 q) const;
  int size() const { return static_cast<int>(points_.size()); }

 private:
  int cell_of(Vec2 p) const;

  std::vector<Vec2> points_;
  std::vector<int> order_;
  std::vector<int> offsets_;
  Vec2 origin_{0.0, 0.0};
  double cell_ = 1.0;
  int nx_ = 1, ny_ = 1;
};

// Symmetric Hausdorff distance between finite planar point sets.
double hausdorff_distance(std::span<const Vec2> p, std::span<const Vec2> q);

struct ApproximationCertificate {
  double eps_distortion = 0.0;  // max over sampled pairs of ||f(x)-f(x')| - d(x,x')|
  double eps_net = 0.0;         // covering radius of the image inside the target net
  double net_slack = 0.0;       // half the target net spacing, reported alongside
  double gh_upper = 0.0;        // always 2 * max(eps_distortion, eps_net)
  long long pair_count = 0;
  std::uint64_t seed = 0;
  bool all_pairs = false;
};

// Certify a map from the graph metric of `x` into the plane against a dense
// net of the target region. All vertex pairs are used when the space is
// small; otherwise a seeded sample of 10^6 pairs grouped by source keeps the
// distance-field count at 1000.
ApproximationCertificate certify_approximation(const IntrinsicMesh& x,
                                               std::span<const Vec2> images,
                                               std::span<const Vec2> y_net,
                                               double net_slack,
                                               std::uint64_t seed = 42,
                                               int threads = 1);

// Small-space variant taking an explicit row-major distance matrix.
ApproximationCertificate certify_approximation(std::span<const double> d_x,
                                               std::span<const Vec2> images,
                                               std::span<const Vec2> y_net,
                                               double net_slack);

// Lower bound on the graph diameter by repeated farthest-point sweeps.
double graph_diameter_estimate(const IntrinsicMesh& mesh, int sweeps = 2);

// |diam X - diam Y| / 2, valid for any pair of compact spaces.
double gh_lower_bound_diameter(double diam_x, double diam_y);

void write_certificate_json(const ApproximationCertificate& cert, const std::string& path);

}  // namespace ghlab
