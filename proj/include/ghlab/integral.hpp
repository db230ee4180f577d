#pragma once

#include <span>
#include <string>
#include <vector>

#include "ghlab/mesh.hpp"
#include "ghlab/metric_field.hpp"

namespace ghlab {

// Area recovered from boundary geodesic lengths: the average of
// length * cos(entry angle) over boundary points and entry angles, scaled by
// the unit-circle volume.
struct SantaloEstimate {
  double volume = 0.0;
  int boundary_count = 0;
  int angle_count = 0;
  long long trapped = 0;
  double trapped_fraction = 0.0;
  bool lower_bound_only = false;  // set when trapped rays were excluded
};

SantaloEstimate santalo_volume(const MetricField& field, int m_boundary, int m_angle,
                               double step, int threads = 1);

// Optional per-ray dump written alongside the estimate:
// columns arclen, theta, length, trapped.
SantaloEstimate santalo_volume_dump(const MetricField& field, int m_boundary, int m_angle,
                                    double step, const std::string& csv_path,
                                    int threads = 1);

// Area of the open metric ball around a vertex, by fractional triangle
// counting (the collar straddle rule).
double ball_area(const IntrinsicMesh& mesh, int center, double r);

// Scan for balls whose area undercuts lambda * r^2. Centers follow a
// deterministic stride plus the deepest vertex; radii double from delta and
// stay clear of the boundary.
struct IsoembolicViolation {
  int vertex = -1;
  double r = 0.0;
  double area = 0.0;
  double required = 0.0;
};

struct IsoembolicReport {
  double lambda = 0.0;
  double delta = 0.0;
  int centers_checked = 0;
  int balls_checked = 0;
  std::vector<IsoembolicViolation> violations;

  bool pass() const { return violations.empty(); }
};

IsoembolicReport isoembolic_audit(const IntrinsicMesh& mesh, double lambda, double delta,
                                  int threads = 1);

}  // namespace ghlab
