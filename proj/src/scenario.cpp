#include "ghlab/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ghlab/geodesic.hpp"
#include "ghlab/geometry.hpp"

namespace ghlab {

namespace {

// Closest approach of the open segment (a, b) to the origin; endpoints do
// not count, so edges touching the rim circle stay admissible.
double segment_gap_to_origin(Vec2 a, Vec2 b) {
  const Vec2 d = b - a;
  const double dd = dot(d, d);
  if (dd == 0.0) return norm(a);
  const double t = -dot(a, d) / dd;
  if (t <= 0.0 || t >= 1.0) return std::min(norm(a), norm(b));
  return norm(a + t * d);
}

struct AnnulusChart {
  MeshBuilder builder;
  std::vector<int> rim;       // innermost ring, radius = neck radius
  std::vector<int> boundary;  // outermost ring, radius 1
  int chart_vertex_count = 0;
};

// Concentric-ring triangulation of the unit disk with the neck disk removed;
// the rim ring sits exactly on the neck circle.
AnnulusChart build_annulus_chart(double neck_radius, double h) {
  const int n = static_cast<int>(std::ceil((1.0 - neck_radius) / h));
  AnnulusChart chart;
  MeshBuilder& b = chart.builder;
  std::vector<std::vector<int>> rings(n + 1);
  for (int k = 0; k <= n; ++k) {
    const double rk = neck_radius + (1.0 - neck_radius) * k / n;
    const int count = std::max<int>(8, std::lround(2.0 * kPi * rk / h));
    rings[k].reserve(count);
    for (int j = 0; j < count; ++j)
      rings[k].push_back(b.add_vertex(rk * from_angle(2.0 * kPi * j / count)));
  }
  auto chord = [&](int u, int v) { return dist(b.coord(u), b.coord(v)); };
  for (int k = 0; k < n; ++k) stitch_rings(b, rings[k], rings[k + 1], chord);
  chart.rim = rings[0];
  chart.boundary = rings[n];
  chart.chart_vertex_count = b.vertex_count();
  return chart;
}

void validate(ScenarioKind kind, const ScenarioParams& p, double h) {
  if (!(h > 0.0) || !(h < 0.25)) throw std::invalid_argument("resolution must satisfy 0 < h < 0.25");
  if (p.shortcut_hops < 2) throw std::invalid_argument("shortcut radius must be at least 2 hops");
  if (kind == ScenarioKind::conformal_bump) {
    if (!(std::fabs(p.bump_amplitude) <= 0.2))
      throw std::invalid_argument("bump amplitude must satisfy |t| <= 0.2");
    if (!(p.bump_width > 0.0)) throw std::invalid_argument("bump width must be positive");
  }
  if (kind == ScenarioKind::cylinder_graft || kind == ScenarioKind::sphere_graft) {
    if (!(p.graft_radius > 0.0) || !(p.graft_radius < 0.2))
      throw std::invalid_argument("neck radius must satisfy 0 < r < 0.2");
    if (!(h < (1.0 - p.graft_radius) / 4.0))
      throw std::invalid_argument("resolution too coarse for the grafted chart");
  }
  if (kind == ScenarioKind::cylinder_graft && !(p.tube_length > 0.0))
    throw std::invalid_argument("tube length must be positive");
  if (kind == ScenarioKind::sphere_graft) {
    if (!(p.sphere_radius > 1.0)) throw std::invalid_argument("sphere radius must exceed 1");
    if (!(p.graft_step > 0.0)) throw std::invalid_argument("sphere edge scale must be positive");
  }
}

Scenario make_cylinder_graft(const ScenarioParams& p, double h) {
  const double r = p.graft_radius;
  const double L = p.tube_length;
  AnnulusChart chart = build_annulus_chart(r, h);
  MeshBuilder& b = chart.builder;

  const int m = static_cast<int>(chart.rim.size());
  const double side = 2.0 * r * std::sin(kPi / m);  // prism cross-section edge
  const double slant = kPi * r / 2.0;               // cone cap, hemisphere-like depth

  // Unrolled prism chart: vertex -> (ring position, depth below the rim).
  struct TubeCoord {
    int j = 0;
    double z = 0.0;
  };
  std::vector<std::optional<TubeCoord>> tube(b.vertex_count());
  for (int j = 0; j < m; ++j) tube[chart.rim[j]] = TubeCoord{j, 0.0};

  auto prism = [&](int u, int v) -> double {
    const TubeCoord a = *tube[u];
    const TubeCoord c = *tube[v];
    const int dj = std::abs(a.j - c.j);
    return std::hypot(side * std::min(dj, m - dj), a.z - c.z);
  };
  auto seam_aware = [&](int u, int v) -> double {
    if (b.has_coord(u) && b.has_coord(v)) return dist(b.coord(u), b.coord(v));
    return prism(u, v);
  };

  const int n_t = std::max<int>(2, std::lround(L / h));
  std::vector<int> prev = chart.rim;
  for (int i = 1; i <= n_t; ++i) {
    std::vector<int> ring(m);
    for (int j = 0; j < m; ++j) {
      ring[j] = b.add_vertex();
      tube.push_back(TubeCoord{j, L * i / n_t});
    }
    stitch_rings(b, prev, ring, seam_aware);
    prev = ring;
  }
  const int apex = b.add_vertex();
  tube.push_back(std::nullopt);
  fan_apex(b, apex, prev, [&](int u, int v) {
    if (u == apex || v == apex) return slant;
    return prism(u, v);
  });

  add_hop_shortcuts(b, p.shortcut_hops, [&](int u, int v) -> std::optional<double> {
    if (b.has_coord(u) && b.has_coord(v)) {
      if (segment_gap_to_origin(b.coord(u), b.coord(v)) < r - 1e-12) return std::nullopt;
      return dist(b.coord(u), b.coord(v));
    }
    if (tube[u] && tube[v]) return prism(u, v);
    return std::nullopt;  // across the seam or through the cap apex
  });

  b.set_boundary_loop(chart.boundary);
  char id[96];
  std::snprintf(id, sizeof(id), "cylinder_graft[r=%g,L=%g,h=%g,hops=%d]", r, L, h,
                p.shortcut_hops);
  b.set_id(id);

  Scenario s;
  s.kind = ScenarioKind::cylinder_graft;
  s.mesh = b.finalize();
  s.grafted.assign(s.mesh.vertex_count(), 0);
  for (int v = chart.chart_vertex_count; v < s.mesh.vertex_count(); ++v) s.grafted[v] = 1;
  return s;
}

Scenario make_sphere_graft(const ScenarioParams& p, double h) {
  const double r = p.graft_radius;
  const double R = p.sphere_radius;
  AnnulusChart chart = build_annulus_chart(r, h);
  MeshBuilder& b = chart.builder;

  // Latitude rings from the neck cap angle down to the far pole; phi is the
  // polar angle from the removed cap's pole.
  const double alpha = std::asin(r / R);
  const double dphi_target = p.graft_step / R;
  const int n_phi = std::max<int>(3, std::lround((kPi - alpha) / dphi_target));
  const double dphi = (kPi - alpha) / n_phi;

  struct SphereCoord {
    double phi = 0.0, lam = 0.0;
  };
  std::vector<std::optional<SphereCoord>> sph(b.vertex_count());
  const int m_rim = static_cast<int>(chart.rim.size());
  for (int j = 0; j < m_rim; ++j)
    sph[chart.rim[j]] = SphereCoord{alpha, 2.0 * kPi * j / m_rim};

  auto unit3 = [](const SphereCoord& c) {
    return std::array<double, 3>{std::sin(c.phi) * std::cos(c.lam),
                                 std::sin(c.phi) * std::sin(c.lam), std::cos(c.phi)};
  };
  // Great-circle length, plus the peak height the minor arc reaches toward
  // the removed cap (z = cos phi increases toward the cap pole).
  auto arc = [&](int u, int v) -> std::pair<double, double> {
    const auto a = unit3(*sph[u]);
    const auto c = unit3(*sph[v]);
    const double cx = a[1] * c[2] - a[2] * c[1];
    const double cy = a[2] * c[0] - a[0] * c[2];
    const double cz = a[0] * c[1] - a[1] * c[0];
    const double sigma =
        std::atan2(std::sqrt(cx * cx + cy * cy + cz * cz), a[0] * c[0] + a[1] * c[1] + a[2] * c[2]);
    double zmax = std::max(a[2], c[2]);
    const double s = std::sin(sigma);
    if (s > 1e-9) {
      const double za = a[2], zc = c[2];
      if (zc > za * std::cos(sigma) && za > zc * std::cos(sigma))
        zmax = std::sqrt(std::max(0.0, za * za + zc * zc - 2.0 * za * zc * std::cos(sigma))) / s;
    }
    return {R * sigma, zmax};
  };
  auto seam_aware = [&](int u, int v) -> double {
    if (b.has_coord(u) && b.has_coord(v)) return dist(b.coord(u), b.coord(v));
    return arc(u, v).first;
  };

  std::vector<int> prev = chart.rim;
  for (int k = 1; k < n_phi; ++k) {
    const double phi = alpha + k * dphi;
    const int count = std::max<int>(6, std::lround(2.0 * kPi * R * std::sin(phi) / p.graft_step));
    std::vector<int> ring(count);
    for (int j = 0; j < count; ++j) {
      ring[j] = b.add_vertex();
      sph.push_back(SphereCoord{phi, 2.0 * kPi * j / count});
    }
    stitch_rings(b, prev, ring, seam_aware);
    prev = ring;
  }
  const int pole = b.add_vertex();
  sph.push_back(SphereCoord{kPi, 0.0});
  fan_apex(b, pole, prev, seam_aware);

  const double cap_z = std::cos(alpha);
  add_hop_shortcuts(b, p.shortcut_hops, [&](int u, int v) -> std::optional<double> {
    if (b.has_coord(u) && b.has_coord(v)) {
      if (segment_gap_to_origin(b.coord(u), b.coord(v)) < r - 1e-12) return std::nullopt;
      return dist(b.coord(u), b.coord(v));
    }
    if (sph[u] && sph[v]) {
      auto [len, zmax] = arc(u, v);
      if (zmax > cap_z + 1e-12) return std::nullopt;  // minor arc crosses the cap
      return len;
    }
    return std::nullopt;
  });

  b.set_boundary_loop(chart.boundary);
  char id[96];
  std::snprintf(id, sizeof(id), "sphere_graft[r=%g,R=%g,h=%g,hops=%d]", r, R, h,
                p.shortcut_hops);
  b.set_id(id);

  Scenario s;
  s.kind = ScenarioKind::sphere_graft;
  s.mesh = b.finalize();
  s.grafted.assign(s.mesh.vertex_count(), 0);
  for (int v = chart.chart_vertex_count; v < s.mesh.vertex_count(); ++v) s.grafted[v] = 1;
  return s;
}

}  // namespace

std::string to_string(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::euclidean: return "euclidean";
    case ScenarioKind::conformal_bump: return "conformal_bump";
    case ScenarioKind::cylinder_graft: return "cylinder_graft";
    case ScenarioKind::sphere_graft: return "sphere_graft";
  }
  throw std::invalid_argument("unknown scenario kind");
}

ScenarioKind scenario_kind_from_string(const std::string& name) {
  if (name == "euclidean") return ScenarioKind::euclidean;
  if (name == "conformal_bump") return ScenarioKind::conformal_bump;
  if (name == "cylinder_graft") return ScenarioKind::cylinder_graft;
  if (name == "sphere_graft") return ScenarioKind::sphere_graft;
  throw std::invalid_argument("unknown scenario kind: " + name);
}

Scenario make_scenario(ScenarioKind kind, const ScenarioParams& params, double h) {
  validate(kind, params, h);
  Scenario s;
  switch (kind) {
    case ScenarioKind::euclidean: {
      s.kind = kind;
      s.mesh = build_disk_mesh(1.0, h, params.shortcut_hops);
      s.field = MetricField::euclidean(ConvexDomain::disk(1.0));
      s.grafted.assign(s.mesh.vertex_count(), 0);
      break;
    }
    case ScenarioKind::conformal_bump: {
      s.kind = kind;
      MetricField field = MetricField::gaussian_bump(
          ConvexDomain::disk(1.0), params.bump_amplitude, params.bump_width, params.bump_center);
      s.mesh = apply_conformal_factor(build_disk_mesh(1.0, h, params.shortcut_hops), field);
      s.field = std::move(field);
      s.grafted.assign(s.mesh.vertex_count(), 0);
      break;
    }
    case ScenarioKind::cylinder_graft: s = make_cylinder_graft(params, h); break;
    case ScenarioKind::sphere_graft: s = make_sphere_graft(params, h); break;
  }
  s.name = to_string(kind);
  s.params = params;
  s.h = h;
  return s;
}

BoundaryDistanceData model_boundary_matrix(const IntrinsicMesh& mesh, int m) {
  BoundaryDistanceData data;
  data.sampling = make_boundary_sampling(mesh, m);
  data.mesh_id = mesh.id() + "|flat-model";
  const int n = data.sampling.size();
  data.matrix.assign(static_cast<size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      data.matrix[static_cast<size_t>(i) * n + j] =
          dist(mesh.coord(data.sampling.vertices[i]), mesh.coord(data.sampling.vertices[j]));
  return data;
}

AssumptionAudit audit_assumptions(const Scenario& s, double delta, double lambda, int m,
                                  int threads) {
  if (!(delta > 2.0 * s.h))
    throw std::invalid_argument("collar width must exceed twice the mesh resolution");
  if (m < 8) throw std::invalid_argument("need at least 8 boundary samples");
  return audit_assumptions(s, boundary_distance_matrix(s.mesh, m, threads), delta, lambda,
                           threads);
}

AssumptionAudit audit_assumptions(const Scenario& s, const BoundaryDistanceData& bd,
                                  double delta, double lambda, int threads) {
  if (!(delta > 2.0 * s.h))
    throw std::invalid_argument("collar width must exceed twice the mesh resolution");

  AssumptionAudit audit;
  audit.delta = delta;
  audit.lambda = lambda;
  audit.m = bd.size();
  audit.model_area = s.reference.area();

  audit.delta0 = c0_deviation(bd, model_boundary_matrix(s.mesh, bd.size()));
  audit.cond_boundary = audit.delta0 <= delta;

  const DistanceField prox = boundary_proximity(s.mesh);
  audit.collar_area = collar_complement_area(s.mesh, delta, prox.values);
  audit.cond_collar = audit.collar_area < audit.model_area + delta;

  audit.isoembolic = isoembolic_audit(s.mesh, lambda, delta, threads);
  audit.cond_isoembolic = audit.isoembolic.pass();
  return audit;
}

}  // namespace ghlab
