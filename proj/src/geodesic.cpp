#include "ghlab/geodesic.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

namespace ghlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Straightness filter for secant direction estimation: a path prefix of
// graph length s counts as straight when its chord is at least s*(1 - tol).
constexpr double kStraightTol = 2e-4;
// Secants shorter than this many mean edge lengths are used only as a
// fallback (single-edge secants are trivially straight but noisy).
constexpr double kMinSecantEdges = 2.0;
// First-hop candidates within this excess of optimal count as alternative
// shortest-path starts for the ambiguity flag.
constexpr double kTieTol = 1e-9;

}  // namespace

DistanceField distance_field(const IntrinsicMesh& mesh, std::span<const int> sources,
                             double max_radius) {
  if (sources.empty()) throw std::invalid_argument("source set must be nonempty");
  int nv = mesh.vertex_count();
  DistanceField f;
  f.values.assign(nv, kInf);
  f.pred.assign(nv, -1);
  f.sources.assign(sources.begin(), sources.end());
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> queue;
  for (int s : sources) {
    if (s < 0 || s >= nv) throw std::invalid_argument("source vertex out of range");
    f.values[s] = 0.0;
    queue.push({0.0, s});
  }
  std::vector<char> done(nv, 0);
  while (!queue.empty()) {
    auto [d, u] = queue.top();
    queue.pop();
    if (done[u]) continue;
    if (d > max_radius) break;
    done[u] = 1;
    for (const Neighbor& nb : mesh.neighbors(u)) {
      if (done[nb.vertex]) continue;
      double nd = d + nb.length;
      if (nd < f.values[nb.vertex]) {
        f.values[nb.vertex] = nd;
        f.pred[nb.vertex] = u;
        queue.push({nd, nb.vertex});
      } else if (nd == f.values[nb.vertex] && u < f.pred[nb.vertex]) {
        f.pred[nb.vertex] = u;  // deterministic tie-break
      }
    }
  }
  return f;
}

DistanceField boundary_proximity(const IntrinsicMesh& mesh) {
  if (mesh.boundary_loop().empty())
    throw std::invalid_argument("mesh has no boundary loop");
  return distance_field(mesh, mesh.boundary_loop());
}

std::vector<int> extract_path(const DistanceField& field, int target) {
  if (target < 0 || target >= static_cast<int>(field.values.size()))
    throw std::invalid_argument("path target out of range");
  if (!std::isfinite(field.values[target]))
    throw std::invalid_argument("path target was not reached");
  std::vector<int> path;
  for (int v = target; v != -1; v = field.pred[v]) path.push_back(v);
  std::reverse(path.begin(), path.end());
  return path;
}

namespace {

// Refine a direction guess by fitting the local wavefront of d(., y) around
// x: d(v) ~ d - <u, dv> + (|dv|^2 - <u, dv>^2) / (2d), the second-order
// expansion of a distance function with source at distance d in direction u.
// Averaging over the whole shortcut neighborhood suppresses the angular
// quantization of any single graph edge.
Vec2 wavefront_refine(const IntrinsicMesh& mesh, const DistanceField& from_y,
                      int x, Vec2 u0) {
  double d = from_y.values[x];
  Vec2 px = mesh.coord(x);
  std::vector<Vec2> dv;
  std::vector<double> drop;
  double rmax = d / 3.0;
  for (const Neighbor& nb : mesh.neighbors(x)) {
    if (!mesh.has_coord(nb.vertex)) continue;
    if (!std::isfinite(from_y.values[nb.vertex])) continue;
    Vec2 delta = mesh.coord(nb.vertex) - px;
    if (norm(delta) > rmax) continue;
    dv.push_back(delta);
    drop.push_back(d - from_y.values[nb.vertex]);
  }
  if (dv.size() < 4) return u0;
  Vec2 u = u0;
  for (int pass = 0; pass < 3; ++pass) {
    double a11 = 0, a12 = 0, a22 = 0, b1 = 0, b2 = 0;
    for (size_t k = 0; k < dv.size(); ++k) {
      double ud = dot(u, dv[k]);
      Vec2 c = dv[k] * (1.0 + ud / d);
      double rhs = drop[k] + norm2(dv[k]) / (2.0 * d) + ud * ud / (2.0 * d);
      a11 += c.x * c.x;
      a12 += c.x * c.y;
      a22 += c.y * c.y;
      b1 += c.x * rhs;
      b2 += c.y * rhs;
    }
    double det = a11 * a22 - a12 * a12;
    if (!(std::fabs(det) > 1e-30)) return u0;
    Vec2 g{(a22 * b1 - a12 * b2) / det, (a11 * b2 - a12 * b1) / det};
    if (!(norm(g) > 0.0)) return u0;
    u = normalized(g);
  }
  return u;
}

}  // namespace

InitialDirection initial_direction(const IntrinsicMesh& mesh,
                                   const DistanceField& from_y, int x) {
  if (!mesh.has_coord(x))
    throw std::invalid_argument("initial_direction needs reference coordinates at x");
  double d = from_y.values[x];
  if (!std::isfinite(d)) throw std::invalid_argument("x is unreachable from y");
  if (d == 0.0) throw std::invalid_argument("initial_direction needs x != y");
  Vec2 px = mesh.coord(x);

  // Walk the extracted path toward y; keep the longest straight secant.
  Vec2 best{0.0, 0.0}, fallback{0.0, 0.0}, seed{0.0, 0.0};
  double best_s = -1.0, fallback_s = -1.0;
  bool have_seed = false;
  double min_s = kMinSecantEdges * mesh.mean_triangle_edge();
  int p = from_y.pred[x];
  while (p != -1 && mesh.has_coord(p)) {
    double s = d - from_y.values[p];
    double chord = dist(px, mesh.coord(p));
    if (!have_seed && chord > 0.0) {
      seed = normalized(mesh.coord(p) - px);
      have_seed = true;
    }
    // Straight-prefix chords; the slack absorbs conformal stretching of the
    // path relative to the reference chart.
    if (chord >= s * (1.0 - kStraightTol) / mesh.max_conformal_stretch()) {
      Vec2 dir = normalized(mesh.coord(p) - px);
      if (s >= min_s) {
        if (s >= best_s) {
          best = dir;
          best_s = s;
        }
      } else if (s >= fallback_s) {
        fallback = dir;
        fallback_s = s;
      }
    }
    if (s > d / 2.0) break;
    p = from_y.pred[p];
  }
  InitialDirection out;
  if (best_s >= 0.0)
    out.dir = best;
  else if (fallback_s >= 0.0)
    out.dir = fallback;
  else if (have_seed)
    out.dir = seed;
  else
    throw std::invalid_argument("no reference coordinates along the path prefix");
  out.dir = wavefront_refine(mesh, from_y, x, out.dir);

  // Ambiguity: another first hop with (near-)zero excess pointing far away.
  int first_hop = from_y.pred[x];
  double tol = kTieTol * (1.0 + d);
  for (const Neighbor& nb : mesh.neighbors(x)) {
    if (!std::isfinite(from_y.values[nb.vertex])) continue;
    double excess = nb.length + from_y.values[nb.vertex] - d;
    if (excess > tol || nb.vertex == first_hop) continue;
    if (!mesh.has_coord(nb.vertex)) continue;
    Vec2 hop_dir = normalized(mesh.coord(nb.vertex) - px);
    if (angle_between(hop_dir, out.dir) > kPi / 6.0) {
      out.unique = false;
      break;
    }
  }
  return out;
}

InitialDirection initial_direction(const IntrinsicMesh& mesh, int x, int y) {
  if (x == y) throw std::invalid_argument("initial_direction needs x != y");
  int src[1] = {y};
  DistanceField f = distance_field(mesh, src);
  return initial_direction(mesh, f, x);
}

namespace {

struct RayState {
  Vec2 x, w;  // position and velocity dx/dt, t = metric arc length
};

// Geodesic equation of the conformal metric in arc-length parameterization.
RayState derivative(const MetricField& field, const RayState& s) {
  Vec2 g = field.grad_u(s.x);
  double wx = s.w.x, wy = s.w.y;
  RayState d;
  d.x = s.w;
  d.w = {-(g.x * (wx * wx - wy * wy) + 2.0 * g.y * wx * wy),
         -(g.y * (wy * wy - wx * wx) + 2.0 * g.x * wx * wy)};
  return d;
}

RayState rk4_step(const MetricField& field, const RayState& s, double dt) {
  RayState k1 = derivative(field, s);
  RayState s2{s.x + k1.x * (dt / 2), s.w + k1.w * (dt / 2)};
  RayState k2 = derivative(field, s2);
  RayState s3{s.x + k2.x * (dt / 2), s.w + k2.w * (dt / 2)};
  RayState k3 = derivative(field, s3);
  RayState s4{s.x + k3.x * dt, s.w + k3.w * dt};
  RayState k4 = derivative(field, s4);
  RayState out;
  out.x = s.x + (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x) * (dt / 6.0);
  out.w = s.w + (k1.w + 2.0 * k2.w + 2.0 * k3.w + k4.w) * (dt / 6.0);
  return out;
}

// Keep |w|_g = 1 so the parameter stays metric arc length.
void renormalize(const MetricField& field, RayState& s) {
  double target = std::exp(-field.u(s.x));
  double n = norm(s.w);
  if (n > 0.0) s.w = s.w * (target / n);
}

}  // namespace

GeodesicPath trace_geodesic(const MetricField& field, Vec2 p, Vec2 v, double step) {
  if (field.has_tensor())
    throw std::invalid_argument("geodesic tracing is defined for conformal fields only");
  if (!(step > 0.0)) throw std::invalid_argument("step must be positive");
  const ConvexDomain& dom = field.domain;
  double diam = dom.diameter();
  if (std::fabs(dom.inset(p)) > 1e-6 * diam)
    throw std::invalid_argument("entry point must lie on the domain boundary");
  if (!(norm(v) > 0.0)) throw std::invalid_argument("entry direction must be nonzero");

  // Project p's boundary parameter to get the inward normal.
  // For the disk this is exact; for polygons the nearest-edge normal.
  Vec2 nrm;
  if (dom.is_disk()) {
    nrm = normalized(Vec2{0.0, 0.0} - p);
  } else {
    double best = kInf;
    double L = dom.boundary_length();
    int n_probe = 4096;
    double best_s = 0.0;
    for (int i = 0; i < n_probe; ++i) {
      double s = L * i / n_probe;
      double d2 = norm2(dom.boundary_point(s) - p);
      if (d2 < best) {
        best = d2;
        best_s = s;
      }
    }
    nrm = dom.inward_normal(best_s);
  }
  Vec2 dir = normalized(v);
  if (!(dot(dir, nrm) > 0.0))
    throw std::invalid_argument("entry direction must point inward");

  GeodesicPath out;
  out.entry_point = p;
  out.entry_angle = angle_between(dir, nrm);
  RayState s{p, dir};
  renormalize(field, s);
  out.entry_dir = s.w;

  double t = 0.0;
  double cutoff = 100.0 * diam;
  out.samples.push_back({0.0, p});
  while (true) {
    RayState next = rk4_step(field, s, step);
    renormalize(field, next);
    double inset = dom.inset(next.x);
    if (inset < 0.0) {
      // Bisection on the step fraction from the last inside state.
      double lo = 0.0, hi = step;
      RayState crossing = next;
      for (int it = 0; it < 60 && hi - lo > 0.0; ++it) {
        double mid = 0.5 * (lo + hi);
        RayState probe = rk4_step(field, s, mid);
        if (dom.inset(probe.x) < 0.0) {
          hi = mid;
          crossing = probe;
        } else {
          lo = mid;
        }
      }
      t += hi;
      out.length = t;
      out.exit_point = crossing.x;
      out.samples.push_back({t, crossing.x});
      return out;
    }
    s = next;
    t += step;
    out.samples.push_back({t, s.x});
    if (t >= cutoff) {
      out.trapped = true;
      out.length = t;
      out.exit_point = s.x;
      return out;
    }
  }
}

}  // namespace ghlab
