#include "ghlab/gh.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

#include <json.hpp>

#include "ghlab/geodesic.hpp"
#include "ghlab/parallel.hpp"

namespace ghlab {

PointGrid::PointGrid(std::span<const Vec2> points)
    : points_(points.begin(), points.end()) {
  if (points_.empty()) throw std::invalid_argument("point set is empty");
  Vec2 lo = points_[0], hi = points_[0];
  for (Vec2 p : points_) {
    lo.x = std::min(lo.x, p.x);
    lo.y = std::min(lo.y, p.y);
    hi.x = std::max(hi.x, p.x);
    hi.y = std::max(hi.y, p.y);
  }
  origin_ = lo;
  double w = std::max(hi.x - lo.x, hi.y - lo.y);
  // Aim for O(1) points per cell.
  double target = w / std::max(1.0, std::sqrt(static_cast<double>(points_.size())));
  cell_ = std::max(target, 1e-12);
  nx_ = static_cast<int>((hi.x - lo.x) / cell_) + 1;
  ny_ = static_cast<int>((hi.y - lo.y) / cell_) + 1;

  std::vector<int> counts(static_cast<size_t>(nx_) * ny_ + 1, 0);
  for (Vec2 p : points_) ++counts[cell_of(p) + 1];
  std::partial_sum(counts.begin(), counts.end(), counts.begin());
  offsets_ = counts;
  order_.resize(points_.size());
  std::vector<int> cursor(offsets_.begin(), offsets_.end() - 1);
  for (int i = 0; i < static_cast<int>(points_.size()); ++i)
    order_[cursor[cell_of(points_[i])]++] = i;
}

int PointGrid::cell_of(Vec2 p) const {
  int cx = std::clamp(static_cast<int>((p.x - origin_.x) / cell_), 0, nx_ - 1);
  int cy = std::clamp(static_cast<int>((p.y - origin_.y) / cell_), 0, ny_ - 1);
  return cy * nx_ + cx;
}

int PointGrid::nearest_index(Vec2 q) const {
  int cx = std::clamp(static_cast<int>((q.x - origin_.x) / cell_), 0, nx_ - 1);
  int cy = std::clamp(static_cast<int>((q.y - origin_.y) / cell_), 0, ny_ - 1);
  int best = -1;
  double best_d = std::numeric_limits<double>::infinity();
  int max_ring = std::max(nx_, ny_);
  for (int ring = 0; ring <= max_ring; ++ring) {
    // Once a candidate is known, farther rings cannot beat it.
    if (best >= 0 && (ring - 1) * cell_ > best_d) break;
    for (int dy = -ring; dy <= ring; ++dy) {
      int yy = cy + dy;
      if (yy < 0 || yy >= ny_) continue;
      int step = (std::abs(dy) == ring) ? 1 : 2 * ring;
      if (ring == 0) step = 1;
      for (int dx = -ring; dx <= ring; dx += step) {
        int xx = cx + dx;
        if (xx < 0 || xx >= nx_) continue;
        int c = yy * nx_ + xx;
        for (int k = offsets_[c]; k < offsets_[c + 1]; ++k) {
          int i = order_[k];
          double d = dist(points_[i], q);
          if (d < best_d) {
            best_d = d;
            best = i;
          }
        }
      }
    }
  }
  return best;
}

double PointGrid::nearest_distance(Vec2 q) const {
  return dist(points_[nearest_index(q)], q);
}

double hausdorff_distance(std::span<const Vec2> p, std::span<const Vec2> q) {
  if (p.empty() || q.empty()) throw std::invalid_argument("hausdorff of an empty set");
  PointGrid gp(p), gq(q);
  double h = 0.0;
  for (Vec2 x : p) h = std::max(h, gq.nearest_distance(x));
  for (Vec2 y : q) h = std::max(h, gp.nearest_distance(y));
  return h;
}

namespace {

ApproximationCertificate finish_certificate(double eps_distortion,
                                            std::span<const Vec2> images,
                                            std::span<const Vec2> y_net,
                                            double net_slack) {
  PointGrid image_grid(images);
  double eps_net = 0.0;
  for (Vec2 y : y_net) eps_net = std::max(eps_net, image_grid.nearest_distance(y));
  ApproximationCertificate cert;
  cert.eps_distortion = eps_distortion;
  cert.eps_net = eps_net;
  cert.net_slack = net_slack;
  cert.gh_upper = 2.0 * std::max(eps_distortion, eps_net);
  return cert;
}

}  // namespace

ApproximationCertificate certify_approximation(const IntrinsicMesh& x,
                                               std::span<const Vec2> images,
                                               std::span<const Vec2> y_net,
                                               double net_slack,
                                               std::uint64_t seed,
                                               int threads) {
  int n = x.vertex_count();
  if (n == 0 || images.size() != static_cast<size_t>(n) || y_net.empty())
    throw std::invalid_argument("certificate inputs are empty or mismatched");

  constexpr int kAllPairsLimit = 2000;
  constexpr int kSampleSide = 1000;

  std::vector<int> sources, targets;
  bool all_pairs = n <= kAllPairsLimit;
  if (all_pairs) {
    sources.resize(n);
    std::iota(sources.begin(), sources.end(), 0);
    targets = sources;
  } else {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick(0, n - 1);
    sources.reserve(kSampleSide);
    targets.reserve(kSampleSide);
    for (int i = 0; i < kSampleSide; ++i) sources.push_back(pick(rng));
    for (int i = 0; i < kSampleSide; ++i) targets.push_back(pick(rng));
  }

  std::vector<double> worst(sources.size(), 0.0);
  std::vector<long long> counted(sources.size(), 0);
  parallel_for(static_cast<int>(sources.size()), threads, [&](int si) {
    int s = sources[si];
    int srcs[1] = {s};
    DistanceField field = distance_field(x, srcs);
    double w = 0.0;
    long long c = 0;
    for (int t : targets) {
      if (t == s) continue;
      double d = field.values[t];
      if (!std::isfinite(d)) continue;
      w = std::max(w, std::fabs(dist(images[s], images[t]) - d));
      ++c;
    }
    worst[si] = w;
    counted[si] = c;
  });

  double eps_distortion = 0.0;
  long long pair_count = 0;
  for (size_t i = 0; i < worst.size(); ++i) {
    eps_distortion = std::max(eps_distortion, worst[i]);
    pair_count += counted[i];
  }

  ApproximationCertificate cert = finish_certificate(eps_distortion, images, y_net, net_slack);
  cert.pair_count = pair_count;
  cert.seed = seed;
  cert.all_pairs = all_pairs;
  return cert;
}

ApproximationCertificate certify_approximation(std::span<const double> d_x,
                                               std::span<const Vec2> images,
                                               std::span<const Vec2> y_net,
                                               double net_slack) {
  size_t n = images.size();
  if (n == 0 || d_x.size() != n * n || y_net.empty())
    throw std::invalid_argument("certificate inputs are empty or mismatched");
  double eps_distortion = 0.0;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j)
      eps_distortion =
          std::max(eps_distortion, std::fabs(dist(images[i], images[j]) - d_x[i * n + j]));
  ApproximationCertificate cert = finish_certificate(eps_distortion, images, y_net, net_slack);
  cert.pair_count = static_cast<long long>(n * (n - 1) / 2);
  cert.all_pairs = true;
  return cert;
}

double graph_diameter_estimate(const IntrinsicMesh& mesh, int sweeps) {
  if (sweeps < 1) throw std::invalid_argument("diameter estimate needs sweeps >= 1");
  int v = 0;
  double diam = 0.0;
  for (int s = 0; s < sweeps; ++s) {
    int srcs[1] = {v};
    DistanceField f = distance_field(mesh, srcs);
    int far = v;
    for (int u = 0; u < mesh.vertex_count(); ++u)
      if (std::isfinite(f.values[u]) && f.values[u] > f.values[far]) far = u;
    diam = std::max(diam, f.values[far]);
    v = far;
  }
  return diam;
}

double gh_lower_bound_diameter(double diam_x, double diam_y) {
  return std::fabs(diam_x - diam_y) / 2.0;
}

void write_certificate_json(const ApproximationCertificate& cert, const std::string& path) {
  nlohmann::json j;
  j["eps_distortion"] = cert.eps_distortion;
  j["eps_net"] = cert.eps_net;
  j["net_slack"] = cert.net_slack;
  j["gh_upper"] = cert.gh_upper;
  j["pair_count"] = cert.pair_count;
  j["seed"] = cert.seed;
  j["all_pairs"] = cert.all_pairs;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << j.dump(2) << "\n";
}

}  // namespace ghlab
