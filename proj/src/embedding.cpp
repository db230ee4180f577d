#include "ghlab/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ghlab/gh.hpp"
#include "ghlab/io.hpp"

namespace ghlab {

DirectionalField phi_direction(const BoundaryFieldSet& fields,
                               const BoundaryCorrespondence& target, Vec2 v) {
  int m = fields.size();
  if (m == 0) throw std::invalid_argument("empty boundary field set");
  if (target.points.size() != static_cast<size_t>(m))
    throw std::invalid_argument("correspondence does not match the sampling");
  size_t nv = fields.fields[0].values.size();

  DirectionalField out;
  out.v = v;
  out.values.assign(nv, std::numeric_limits<double>::infinity());
  out.foot.assign(nv, -1);
  for (int s = 0; s < m; ++s) {
    double c = dot(target.points[s], v);
    const std::vector<double>& d = fields.fields[s].values;
    if (d.size() != nv) throw std::invalid_argument("field set has inconsistent sizes");
    for (size_t x = 0; x < nv; ++x) {
      double val = d[x] + c;
      if (val < out.values[x]) {  // ties keep the lowest sample index
        out.values[x] = val;
        out.foot[x] = s;
      }
    }
  }
  for (double val : out.values)
    if (!std::isfinite(val)) throw std::runtime_error("boundary fields do not cover the mesh");
  return out;
}

EmbeddingMap build_embedding(const BoundaryFieldSet& fields,
                             const BoundaryCorrespondence& target) {
  EmbeddingMap map;
  map.phi1 = phi_direction(fields, target, {1.0, 0.0});
  map.phi2 = phi_direction(fields, target, {0.0, 1.0});
  map.coords.resize(map.phi1.values.size());
  for (size_t x = 0; x < map.coords.size(); ++x)
    map.coords[x] = {map.phi1.values[x], map.phi2.values[x]};
  return map;
}

double verify_foot_identity(const DirectionalField& field, const BoundaryFieldSet& fields) {
  if (field.values.empty() || fields.size() == 0)
    throw std::invalid_argument("empty field");
  double worst = 0.0;
  for (size_t x = 0; x < field.values.size(); ++x) {
    int f = field.foot[x];
    int vf = fields.sampling.vertices[f];
    double defect =
        std::fabs(field.values[x] - field.values[vf] - fields.fields[f].values[x]);
    worst = std::max(worst, defect);
  }
  return worst;
}

LiftDiagnostics lift_diagnostics(const BoundaryFieldSet& fields,
                                 const BoundaryCorrespondence& target,
                                 const EmbeddingMap& map) {
  constexpr int kProbes = 16;
  size_t nv = map.coords.size();
  LiftDiagnostics out;
  out.directions.reserve(kProbes);
  std::vector<std::vector<double>> pointwise(kProbes);
  for (int k = 0; k < kProbes; ++k) {
    Vec2 v = from_angle(kPi / kProbes + 2.0 * kPi * k / kProbes);
    out.directions.push_back(v);
    DirectionalField field = phi_direction(fields, target, v);
    pointwise[k].resize(nv);
    double worst = 0.0;
    for (size_t x = 0; x < nv; ++x) {
      double d = std::fabs(field.values[x] - dot(map.coords[x], v));
      pointwise[k][x] = d;
      if (d > worst) worst = d;
      if (d > out.max_defect) {
        out.max_defect = d;
        out.argmax_vertex = static_cast<int>(x);
      }
    }
    out.defects.push_back(worst);
  }
  // Distance to the diagonal copy of the plane, aggregated over orthogonal
  // probe pairs: within a factor sqrt(2) of the max single-probe defect.
  for (size_t x = 0; x < nv; ++x)
    for (int k = 0; k < kProbes; ++k) {
      double d = std::hypot(pointwise[k][x], pointwise[(k + kProbes / 4) % kProbes][x]) /
                 std::sqrt(2.0);
      out.lift_distance = std::max(out.lift_distance, d);
    }
  return out;
}

double lipschitz_defect(const DirectionalField& field, const IntrinsicMesh& mesh,
                        double k) {
  double worst = -std::numeric_limits<double>::infinity();
  for (const MeshEdge& e : mesh.edges())
    worst = std::max(worst,
                     std::fabs(field.values[e.u] - field.values[e.v]) - k * e.length);
  return worst;
}

double lipschitz_defect(const EmbeddingMap& map, const IntrinsicMesh& mesh, double k) {
  double worst = -std::numeric_limits<double>::infinity();
  for (const MeshEdge& e : mesh.edges())
    worst = std::max(worst, dist(map.coords[e.u], map.coords[e.v]) - k * e.length);
  return worst;
}

ImageHausdorff image_hausdorff(const EmbeddingMap& map, const IntrinsicMesh& mesh,
                               const ConvexDomain& region, double spacing) {
  if (!(spacing > 0.0)) throw std::invalid_argument("grid spacing must be positive");
  std::vector<Vec2> region_pts = region.interior_grid(spacing);
  std::vector<Vec2> rim_pts = region.boundary_grid(spacing);
  region_pts.insert(region_pts.end(), rim_pts.begin(), rim_pts.end());

  std::vector<Vec2> rim_image;
  rim_image.reserve(mesh.boundary_loop().size());
  for (int v : mesh.boundary_loop()) rim_image.push_back(map.coords[v]);

  ImageHausdorff out;
  out.interior = hausdorff_distance(map.coords, region_pts);
  out.boundary = hausdorff_distance(rim_image, rim_pts);
  return out;
}

double jacobian_defect(const EmbeddingMap& map, const IntrinsicMesh& mesh) {
  double excess = 0.0;
  const std::vector<Triangle>& tris = mesh.triangles();
  for (size_t t = 0; t < tris.size(); ++t) {
    double area = mesh.triangle_area(static_cast<int>(t));
    if (!(area > 0.0)) continue;
    Vec2 a = map.coords[tris[t].a], b = map.coords[tris[t].b], c = map.coords[tris[t].c];
    double image = std::fabs(cross(b - a, c - a)) / 2.0;
    excess = std::max(excess, image / area - 1.0);
  }
  return std::max(excess, 0.0);
}

ImageAreaCheck image_area_check(const EmbeddingMap& map, const IntrinsicMesh& mesh,
                                double delta, std::span<const double> boundary_prox) {
  if (delta < 0.0) throw std::invalid_argument("threshold must be non-negative");
  if (boundary_prox.size() != static_cast<size_t>(mesh.vertex_count()))
    throw std::invalid_argument("proximity values do not match the mesh");
  ImageAreaCheck out;
  const std::vector<Triangle>& tris = mesh.triangles();
  for (size_t t = 0; t < tris.size(); ++t) {
    int inside = (boundary_prox[tris[t].a] >= delta) + (boundary_prox[tris[t].b] >= delta) +
                 (boundary_prox[tris[t].c] >= delta);
    if (inside == 0) continue;
    double w = inside / 3.0;
    Vec2 a = map.coords[tris[t].a], b = map.coords[tris[t].b], c = map.coords[tris[t].c];
    out.domain_area += w * mesh.triangle_area(static_cast<int>(t));
    out.image_area += w * std::fabs(cross(b - a, c - a)) / 2.0;
  }
  return out;
}

void write_embedding_csv(const EmbeddingMap& map, const std::string& path) {
  CsvWriter csv(path);
  csv.cell("vertex");
  csv.cell("phi1");
  csv.cell("phi2");
  csv.cell("foot1");
  csv.cell("foot2");
  csv.end_row();
  for (size_t x = 0; x < map.coords.size(); ++x) {
    csv.cell(std::to_string(x));
    csv.cell(map.coords[x].x);
    csv.cell(map.coords[x].y);
    csv.cell(std::to_string(map.phi1.foot[x]));
    csv.cell(std::to_string(map.phi2.foot[x]));
    csv.end_row();
  }
}

}  // namespace ghlab
