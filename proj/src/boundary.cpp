#include "ghlab/boundary.hpp"

#include <cmath>
#include <stdexcept>

#include "ghlab/io.hpp"
#include "ghlab/parallel.hpp"

namespace ghlab {

double BoundarySampling::separation(int i, int j) const {
  double d = std::fabs(params[i] - params[j]);
  return std::min(d, boundary_length - d);
}

BoundarySampling make_boundary_sampling(const IntrinsicMesh& mesh, int m) {
  const std::vector<int>& loop = mesh.boundary_loop();
  const std::vector<double>& par = mesh.boundary_params();
  int nb = static_cast<int>(loop.size());
  if (m < 3) throw std::invalid_argument("boundary sampling needs at least 3 samples");
  if (m > nb)
    throw std::invalid_argument("sample count exceeds the number of boundary vertices");
  BoundarySampling out;
  out.boundary_length = mesh.boundary_length();
  out.vertices.resize(m);
  out.params.resize(m);
  // Nearest boundary vertex per equispaced target; k advances monotonically
  // and skips already-taken vertices, so samples stay distinct and cyclic.
  int k = 0;
  for (int i = 0; i < m; ++i) {
    double target = out.boundary_length * i / m;
    int limit = nb - (m - i);  // leave room for the remaining samples
    while (k + 1 <= limit &&
           std::fabs(par[k + 1] - target) <= std::fabs(par[k] - target))
      ++k;
    out.vertices[i] = loop[k];
    out.params[i] = par[k];
    ++k;
  }
  return out;
}

BoundaryFieldSet boundary_field_set(const IntrinsicMesh& mesh, int m, int threads) {
  BoundaryFieldSet out;
  out.sampling = make_boundary_sampling(mesh, m);
  out.mesh_id = mesh.id();
  out.fields.resize(m);
  parallel_for(m, threads, [&](int i) {
    int src[1] = {out.sampling.vertices[i]};
    out.fields[i] = distance_field(mesh, src);
  });
  return out;
}

BoundaryDistanceData boundary_distance_matrix(const BoundaryFieldSet& fields) {
  BoundaryDistanceData out;
  out.sampling = fields.sampling;
  out.mesh_id = fields.mesh_id;
  int m = fields.size();
  size_t n = static_cast<size_t>(m);
  out.matrix.assign(n * n, 0.0);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      out.matrix[static_cast<size_t>(i) * n + j] =
          fields.fields[i].values[out.sampling.vertices[j]];
  // Symmetrize with the transpose; graph distances are already symmetric,
  // so this is a no-op guard that also fixes the diagonal at exact zero.
  for (int i = 0; i < m; ++i) {
    out.matrix[static_cast<size_t>(i) * n + i] = 0.0;
    for (int j = i + 1; j < m; ++j) {
      double v = 0.5 * (out.at(i, j) + out.at(j, i));
      out.matrix[static_cast<size_t>(i) * n + j] = v;
      out.matrix[static_cast<size_t>(j) * n + i] = v;
    }
  }
  return out;
}

BoundaryDistanceData boundary_distance_matrix(const IntrinsicMesh& mesh, int m,
                                              int threads) {
  return boundary_distance_matrix(boundary_field_set(mesh, m, threads));
}

BoundaryCorrespondence arc_length_correspondence(const BoundarySampling& sampling,
                                                 const ConvexDomain& target) {
  BoundaryCorrespondence out;
  double scale = target.boundary_length() / sampling.boundary_length;
  out.points.reserve(sampling.size());
  for (double s : sampling.params) out.points.push_back(target.boundary_point(s * scale));
  out.monotone = true;
  for (int i = 0; i + 1 < sampling.size(); ++i)
    if (!(sampling.params[i] < sampling.params[i + 1])) out.monotone = false;
  return out;
}

namespace {

void require_matching_sampling(const BoundaryDistanceData& a,
                               const BoundaryDistanceData& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("boundary matrices have different sample counts");
  double la = a.sampling.boundary_length, lb = b.sampling.boundary_length;
  double tol = 0.005 * lb;
  for (int i = 0; i < a.size(); ++i) {
    double sa = a.sampling.params[i] * (lb / la);
    if (std::fabs(sa - b.sampling.params[i]) > tol)
      throw std::invalid_argument("boundary matrices use mismatched samplings");
  }
}

// Second-order derivative estimate on a (possibly uneven) three-point
// cyclic stencil around sample i.
double tangential_derivative(const BoundaryDistanceData& bd, int i, int j) {
  int m = bd.size();
  int ip = (i + 1) % m, im = (i + m - 1) % m;
  double L = bd.sampling.boundary_length;
  double hp = bd.sampling.params[ip] - bd.sampling.params[i];
  if (hp < 0) hp += L;
  double hm = bd.sampling.params[i] - bd.sampling.params[im];
  if (hm < 0) hm += L;
  double fp = bd.at(ip, j), f0 = bd.at(i, j), fm = bd.at(im, j);
  return (hm * hm * fp - hp * hp * fm + (hp * hp - hm * hm) * f0) /
         (hm * hp * (hm + hp));
}

}  // namespace

double c0_deviation(const BoundaryDistanceData& a, const BoundaryDistanceData& b) {
  require_matching_sampling(a, b);
  double worst = 0.0;
  for (size_t k = 0; k < a.matrix.size(); ++k)
    worst = std::max(worst, std::fabs(a.matrix[k] - b.matrix[k]));
  return worst;
}

double c1_deviation(const BoundaryDistanceData& a, const BoundaryDistanceData& b,
                    double eta) {
  require_matching_sampling(a, b);
  if (!(eta > 2.0 * a.sampling.mean_spacing()))
    throw std::invalid_argument("diagonal cutoff too small for the sample spacing");
  int m = a.size();
  double worst = 0.0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      if (i == j || a.sampling.separation(i, j) < eta) continue;
      worst = std::max(worst, std::fabs(a.at(i, j) - b.at(i, j)));
      worst = std::max(worst, std::fabs(tangential_derivative(a, i, j) -
                                        tangential_derivative(b, i, j)));
      worst = std::max(worst, std::fabs(tangential_derivative(a, j, i) -
                                        tangential_derivative(b, j, i)));
    }
  return worst;
}

GradientCheck boundary_gradient_check(const IntrinsicMesh& mesh,
                                      const BoundaryDistanceData& bd, int i, int j,
                                      double eta, const DistanceField* from_y) {
  if (i == j) throw std::invalid_argument("gradient check needs distinct samples");
  if (bd.sampling.separation(i, j) < eta)
    throw std::invalid_argument("gradient check needs separation >= eta");
  int m = bd.size();
  int ip = (i + 1) % m, im = (i + m - 1) % m;
  Vec2 tangent = normalized(mesh.coord(bd.sampling.vertices[ip]) -
                            mesh.coord(bd.sampling.vertices[im]));
  GradientCheck out;
  out.derivative = tangential_derivative(bd, i, j);
  InitialDirection dir =
      from_y ? initial_direction(mesh, *from_y, bd.sampling.vertices[i])
             : initial_direction(mesh, bd.sampling.vertices[i], bd.sampling.vertices[j]);
  out.cosine = dot(tangent, dir.dir);
  out.defect = std::fabs(out.derivative + out.cosine);
  out.skipped = !dir.unique;
  return out;
}

std::vector<double> recover_boundary_metric(const BoundaryDistanceData& bd) {
  int m = bd.size();
  if (m < 16) throw std::invalid_argument("metric recovery needs at least 16 samples");
  double L = bd.sampling.boundary_length;
  std::vector<double> factors(m);
  for (int i = 0; i < m; ++i) {
    double q[3], u[3];
    int ks[3] = {1, 2, 4};
    for (int a = 0; a < 3; ++a) {
      int k = ks[a];
      int fw = (i + k) % m, bw = (i + m - k) % m;
      double tf = bd.sampling.params[fw] - bd.sampling.params[i];
      if (tf < 0) tf += L;
      double tb = bd.sampling.params[i] - bd.sampling.params[bw];
      if (tb < 0) tb += L;
      q[a] = 0.5 * (bd.at(i, fw) / tf + bd.at(i, bw) / tb);
      double t = 0.5 * (tf + tb);
      u[a] = t * t;  // quotients are even in the step, so extrapolate in t^2
    }
    // Lagrange extrapolation of (u, q) to u = 0.
    double v = 0.0;
    for (int a = 0; a < 3; ++a) {
      double w = 1.0;
      for (int b = 0; b < 3; ++b)
        if (b != a) w *= u[b] / (u[b] - u[a]);
      v += q[a] * w;
    }
    factors[i] = v;
  }
  return factors;
}

void write_boundary_matrix_csv(const BoundaryDistanceData& bd,
                               const std::string& path) {
  CsvWriter csv(path);
  for (double p : bd.sampling.params) csv.cell(p);
  csv.end_row();
  int m = bd.size();
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) csv.cell(bd.at(i, j));
    csv.end_row();
  }
}

}  // namespace ghlab
