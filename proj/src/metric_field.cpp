#include "ghlab/metric_field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ghlab {

ConvexDomain ConvexDomain::disk(double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("disk radius must be positive");
  ConvexDomain d;
  d.is_disk_ = true;
  d.radius_ = radius;
  return d;
}

ConvexDomain ConvexDomain::polygon(std::vector<Vec2> vertices) {
  if (vertices.size() < 3)
    throw std::invalid_argument("polygon needs at least 3 vertices");
  size_t n = vertices.size();
  for (size_t i = 0; i < n; ++i) {
    Vec2 a = vertices[i];
    Vec2 b = vertices[(i + 1) % n];
    Vec2 c = vertices[(i + 2) % n];
    if (cross(b - a, c - b) <= 0.0)
      throw std::invalid_argument("polygon must be strictly convex and counterclockwise");
  }
  ConvexDomain d;
  d.is_disk_ = false;
  d.poly_ = std::move(vertices);
  d.cumlen_.assign(d.poly_.size() + 1, 0.0);
  for (size_t i = 0; i < d.poly_.size(); ++i) {
    Vec2 a = d.poly_[i];
    Vec2 b = d.poly_[(i + 1) % d.poly_.size()];
    d.cumlen_[i + 1] = d.cumlen_[i] + dist(a, b);
  }
  return d;
}

double ConvexDomain::area() const {
  if (is_disk_) return kPi * radius_ * radius_;
  double a = 0.0;
  for (size_t i = 0; i < poly_.size(); ++i)
    a += cross(poly_[i], poly_[(i + 1) % poly_.size()]);
  return 0.5 * a;
}

double ConvexDomain::diameter() const {
  if (is_disk_) return 2.0 * radius_;
  double best = 0.0;
  for (size_t i = 0; i < poly_.size(); ++i)
    for (size_t j = i + 1; j < poly_.size(); ++j)
      best = std::max(best, dist(poly_[i], poly_[j]));
  return best;
}

double ConvexDomain::boundary_length() const {
  if (is_disk_) return 2.0 * kPi * radius_;
  return cumlen_.back();
}

double ConvexDomain::inset(Vec2 p) const {
  if (is_disk_) return radius_ - dist(p, center_);
  double best = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < poly_.size(); ++i) {
    Vec2 a = poly_[i];
    Vec2 b = poly_[(i + 1) % poly_.size()];
    Vec2 dir = normalized(b - a);
    best = std::min(best, cross(dir, p - a));
  }
  return best;
}

Vec2 ConvexDomain::boundary_point(double s) const {
  double total = boundary_length();
  s = std::fmod(s, total);
  if (s < 0.0) s += total;
  if (is_disk_) {
    double t = s / radius_;
    return center_ + radius_ * from_angle(t);
  }
  size_t i = static_cast<size_t>(std::upper_bound(cumlen_.begin(), cumlen_.end(), s) -
                                 cumlen_.begin());
  i = std::min(std::max<size_t>(i, 1), poly_.size()) - 1;
  Vec2 a = poly_[i];
  Vec2 b = poly_[(i + 1) % poly_.size()];
  double seg = cumlen_[i + 1] - cumlen_[i];
  double t = seg > 0.0 ? (s - cumlen_[i]) / seg : 0.0;
  return a + (b - a) * t;
}

Vec2 ConvexDomain::inward_normal(double s) const {
  double total = boundary_length();
  s = std::fmod(s, total);
  if (s < 0.0) s += total;
  if (is_disk_) {
    double t = s / radius_;
    return from_angle(t) * -1.0;
  }
  size_t i = static_cast<size_t>(std::upper_bound(cumlen_.begin(), cumlen_.end(), s) -
                                 cumlen_.begin());
  i = std::min(std::max<size_t>(i, 1), poly_.size()) - 1;
  Vec2 a = poly_[i];
  Vec2 b = poly_[(i + 1) % poly_.size()];
  return perp(normalized(b - a));
}

std::vector<Vec2> ConvexDomain::interior_grid(double spacing) const {
  if (!(spacing > 0.0)) throw std::invalid_argument("grid spacing must be positive");
  double xmin, xmax, ymin, ymax;
  if (is_disk_) {
    xmin = center_.x - radius_;
    xmax = center_.x + radius_;
    ymin = center_.y - radius_;
    ymax = center_.y + radius_;
  } else {
    xmin = ymin = std::numeric_limits<double>::infinity();
    xmax = ymax = -std::numeric_limits<double>::infinity();
    for (Vec2 p : poly_) {
      xmin = std::min(xmin, p.x);
      xmax = std::max(xmax, p.x);
      ymin = std::min(ymin, p.y);
      ymax = std::max(ymax, p.y);
    }
  }
  std::vector<Vec2> out;
  long long nx = static_cast<long long>(std::floor((xmax - xmin) / spacing)) + 1;
  long long ny = static_cast<long long>(std::floor((ymax - ymin) / spacing)) + 1;
  for (long long iy = 0; iy < ny; ++iy)
    for (long long ix = 0; ix < nx; ++ix) {
      Vec2 p{xmin + ix * spacing, ymin + iy * spacing};
      if (contains(p)) out.push_back(p);
    }
  return out;
}

std::vector<Vec2> ConvexDomain::boundary_grid(double spacing) const {
  if (!(spacing > 0.0)) throw std::invalid_argument("grid spacing must be positive");
  double total = boundary_length();
  long long n = std::max<long long>(3, static_cast<long long>(std::ceil(total / spacing)));
  std::vector<Vec2> out;
  out.reserve(n);
  for (long long i = 0; i < n; ++i) out.push_back(boundary_point(total * i / n));
  return out;
}

double MetricField::segment_length(Vec2 a, Vec2 b) const {
  // Gauss-Legendre nodes on [0,1] and weights.
  static const double q = std::sqrt(3.0 / 5.0) / 2.0;
  static const double nodes[3] = {0.5 - q, 0.5, 0.5 + q};
  static const double weights[3] = {5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0};
  Vec2 d = b - a;
  double len = 0.0;
  if (has_tensor()) {
    for (int k = 0; k < 3; ++k) {
      Vec2 p = a + d * nodes[k];
      std::array<double, 3> g = tensor(p);
      if (!(g[0] > 0.0) || !(g[0] * g[2] - g[1] * g[1] > 0.0))
        throw std::invalid_argument("metric tensor is not positive definite");
      double q2 = g[0] * d.x * d.x + 2.0 * g[1] * d.x * d.y + g[2] * d.y * d.y;
      len += weights[k] * std::sqrt(q2);
    }
    return len;
  }
  for (int k = 0; k < 3; ++k) {
    Vec2 p = a + d * nodes[k];
    len += weights[k] * std::exp(u(p));
  }
  return len * norm(d);
}

MetricField MetricField::euclidean(ConvexDomain d) { return constant(std::move(d), 0.0); }

MetricField MetricField::constant(ConvexDomain d, double u0) {
  MetricField f;
  f.domain = std::move(d);
  f.u = [u0](Vec2) { return u0; };
  f.grad_u = [](Vec2) { return Vec2{0.0, 0.0}; };
  return f;
}

MetricField MetricField::gaussian_bump(ConvexDomain d, double amplitude,
                                       double width, Vec2 center) {
  if (!(width > 0.0)) throw std::invalid_argument("bump width must be positive");
  MetricField f;
  f.domain = std::move(d);
  double w2 = width * width;
  f.u = [amplitude, w2, center](Vec2 p) {
    return amplitude * std::exp(-norm2(p - center) / (2.0 * w2));
  };
  f.grad_u = [amplitude, w2, center](Vec2 p) {
    double v = amplitude * std::exp(-norm2(p - center) / (2.0 * w2));
    return (center - p) * (v / w2);
  };
  return f;
}

}  // namespace ghlab
