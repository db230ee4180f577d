#include "ghlab/integral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "ghlab/geodesic.hpp"
#include "ghlab/geometry.hpp"
#include "ghlab/io.hpp"
#include "ghlab/parallel.hpp"

namespace ghlab {

namespace {

struct RayRecord {
  double arclen = 0.0;
  double theta = 0.0;
  double length = 0.0;
  bool trapped = false;
};

// Per-boundary-point partial result, merged sequentially so the estimate is
// independent of the thread count.
struct NodePartial {
  double weighted_sum = 0.0;
  long long trapped = 0;
  std::vector<RayRecord> rays;
};

SantaloEstimate santalo_core(const MetricField& field, int m_boundary, int m_angle,
                             double step, int threads, CsvWriter* dump) {
  if (m_boundary < 16 || m_angle < 16)
    throw std::invalid_argument("santalo quadrature needs at least 16 nodes per axis");
  if (step <= 0.0) throw std::invalid_argument("integration step must be positive");
  if (field.has_tensor())
    throw std::invalid_argument("santalo integration needs a conformal field");

  const double boundary_len = field.domain.boundary_length();
  const double ds = boundary_len / m_boundary;
  const double dtheta = kPi / m_angle;

  std::vector<NodePartial> partials(m_boundary);
  parallel_for(m_boundary, threads, [&](int i) {
    NodePartial& out = partials[i];
    // Midpoint offset keeps polygon nodes away from corners, where the
    // normal is undefined.
    const double s = (i + 0.5) * ds;
    const Vec2 p = field.domain.boundary_point(s);
    const Vec2 normal = field.domain.inward_normal(s);
    const Vec2 tangent{-normal.y, normal.x};
    const double metric_ds = field.scale(p) * ds;
    if (dump) out.rays.reserve(m_angle - 1);
    for (int j = 1; j < m_angle; ++j) {
      // Interior trapezoid nodes; the endpoint terms vanish with cos(theta).
      const double theta = -kPi / 2.0 + j * dtheta;
      const Vec2 v = normal * std::cos(theta) + tangent * std::sin(theta);
      GeodesicPath path = trace_geodesic(field, p, v, step);
      if (path.trapped)
        ++out.trapped;
      else
        out.weighted_sum += metric_ds * dtheta * path.length * std::cos(theta);
      if (dump) out.rays.push_back({s, theta, path.length, path.trapped});
    }
  });

  SantaloEstimate est;
  est.boundary_count = m_boundary;
  est.angle_count = m_angle - 1;
  double sum = 0.0;
  for (const NodePartial& part : partials) {
    sum += part.weighted_sum;
    est.trapped += part.trapped;
    if (dump) {
      for (const RayRecord& ray : part.rays) {
        dump->cell(ray.arclen);
        dump->cell(ray.theta);
        dump->cell(ray.length);
        dump->cell(ray.trapped ? "1" : "0");
        dump->end_row();
      }
    }
  }
  est.volume = sum / (2.0 * kPi);
  est.trapped_fraction =
      static_cast<double>(est.trapped) /
      (static_cast<double>(m_boundary) * static_cast<double>(est.angle_count));
  est.lower_bound_only = est.trapped > 0;
  return est;
}

}  // namespace

SantaloEstimate santalo_volume(const MetricField& field, int m_boundary, int m_angle,
                               double step, int threads) {
  return santalo_core(field, m_boundary, m_angle, step, threads, nullptr);
}

SantaloEstimate santalo_volume_dump(const MetricField& field, int m_boundary, int m_angle,
                                    double step, const std::string& csv_path,
                                    int threads) {
  CsvWriter csv(csv_path);
  csv.cell("arclen");
  csv.cell("theta");
  csv.cell("length");
  csv.cell("trapped");
  csv.end_row();
  return santalo_core(field, m_boundary, m_angle, step, threads, &csv);
}

double ball_area(const IntrinsicMesh& mesh, int center, double r) {
  if (center < 0 || center >= mesh.vertex_count())
    throw std::invalid_argument("ball center out of range");
  if (r <= 0.0) throw std::invalid_argument("ball radius must be positive");
  const std::vector<int> sources{center};
  DistanceField field = distance_field(mesh, sources, r);
  std::vector<char> selected(mesh.vertex_count());
  for (int v = 0; v < mesh.vertex_count(); ++v)
    selected[v] = field.values[v] < r ? 1 : 0;
  return fractional_area(mesh, selected);
}

IsoembolicReport isoembolic_audit(const IntrinsicMesh& mesh, double lambda, double delta,
                                  int threads) {
  if (lambda <= 0.0) throw std::invalid_argument("isoembolic constant must be positive");
  if (delta <= 0.0) throw std::invalid_argument("smallest radius must be positive");

  const DistanceField prox = boundary_proximity(mesh);
  const int n = mesh.vertex_count();
  const int stride = std::max(1, n / 96);
  std::vector<int> centers;
  for (int v = 0; v < n; v += stride) centers.push_back(v);
  const int deepest = static_cast<int>(
      std::max_element(prox.values.begin(), prox.values.end()) - prox.values.begin());
  if (std::find(centers.begin(), centers.end(), deepest) == centers.end())
    centers.push_back(deepest);

  struct CenterPartial {
    int balls = 0;
    std::vector<IsoembolicViolation> violations;
  };
  std::vector<CenterPartial> partials(centers.size());
  parallel_for(static_cast<int>(centers.size()), threads, [&](int idx) {
    const int c = centers[idx];
    const double depth = prox.values[c];
    if (delta >= depth) return;
    const std::vector<int> sources{c};
    DistanceField from_c = distance_field(mesh, sources, depth);
    std::vector<char> selected(mesh.vertex_count());
    CenterPartial& out = partials[idx];
    for (double r = delta; r < depth; r *= 2.0) {
      for (int v = 0; v < mesh.vertex_count(); ++v)
        selected[v] = from_c.values[v] < r ? 1 : 0;
      const double area = fractional_area(mesh, selected);
      const double required = lambda * r * r;
      ++out.balls;
      if (area < required) out.violations.push_back({c, r, area, required});
    }
  });

  IsoembolicReport report;
  report.lambda = lambda;
  report.delta = delta;
  report.centers_checked = static_cast<int>(centers.size());
  for (const CenterPartial& part : partials) {
    report.balls_checked += part.balls;
    report.violations.insert(report.violations.end(), part.violations.begin(),
                             part.violations.end());
  }
  return report;
}

}  // namespace ghlab
