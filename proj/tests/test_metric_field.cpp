#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ghlab/metric_field.hpp"

using namespace ghlab;

TEST_CASE("disk domain geometry") {
  ConvexDomain d = ConvexDomain::disk(2.0);
  CHECK(d.area() == doctest::Approx(4.0 * kPi));
  CHECK(d.diameter() == 4.0);
  CHECK(d.boundary_length() == doctest::Approx(4.0 * kPi));
  CHECK(d.inset({0.0, 0.0}) == 2.0);
  CHECK(d.inset({3.0, 0.0}) == -1.0);
  CHECK(d.contains({1.9, 0.0}));
  CHECK_FALSE(d.contains({2.1, 0.0}));
  Vec2 p = d.boundary_point(0.0);
  CHECK(p.x == doctest::Approx(2.0));
  CHECK(p.y == doctest::Approx(0.0));
  Vec2 n = d.inward_normal(0.0);
  CHECK(n.x == doctest::Approx(-1.0));
  CHECK(n.y == doctest::Approx(0.0));
  CHECK_THROWS_AS(ConvexDomain::disk(0.0), std::invalid_argument);
}

TEST_CASE("square polygon domain geometry") {
  ConvexDomain s = ConvexDomain::polygon({{1, -1}, {1, 1}, {-1, 1}, {-1, -1}});
  CHECK(s.area() == doctest::Approx(4.0));
  CHECK(s.boundary_length() == doctest::Approx(8.0));
  CHECK(s.diameter() == doctest::Approx(2.0 * std::sqrt(2.0)));
  CHECK(s.inset({0.0, 0.0}) == doctest::Approx(1.0));
  CHECK(s.inset({0.5, 0.25}) == doctest::Approx(0.5));
  Vec2 p = s.boundary_point(1.0);
  CHECK(p.x == doctest::Approx(1.0));
  CHECK(p.y == doctest::Approx(0.0));
  Vec2 n = s.inward_normal(1.0);
  CHECK(n.x == doctest::Approx(-1.0));
  CHECK(n.y == doctest::Approx(0.0));

  CHECK_THROWS_AS(ConvexDomain::polygon({{1, -1}, {1, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(ConvexDomain::polygon({{1, -1}, {-1, -1}, {-1, 1}, {1, 1}}),
                  std::invalid_argument);  // clockwise
  CHECK_THROWS_AS(ConvexDomain::polygon({{0, 0}, {1, 0}, {2, 0}}), std::invalid_argument);
}

TEST_CASE("segment lengths under conformal factors") {
  ConvexDomain d = ConvexDomain::disk(1.0);
  MetricField flat = MetricField::euclidean(d);
  CHECK(flat.segment_length({-0.5, 0.0}, {0.5, 0.0}) == doctest::Approx(1.0).epsilon(1e-14));
  MetricField twice = MetricField::constant(d, std::log(2.0));
  CHECK(twice.segment_length({-0.5, 0.0}, {0.5, 0.0}) == doctest::Approx(2.0).epsilon(1e-14));
  MetricField bump = MetricField::gaussian_bump(d, 0.05, 0.3);
  double forward = bump.segment_length({-0.8, 0.1}, {0.6, -0.3});
  double backward = bump.segment_length({0.6, -0.3}, {-0.8, 0.1});
  CHECK(forward == doctest::Approx(backward).epsilon(1e-14));
  CHECK(forward > dist({-0.8, 0.1}, {0.6, -0.3}));  // positive bump stretches
}

TEST_CASE("tensor metric lengths and SPD validation") {
  ConvexDomain d = ConvexDomain::disk(1.0);
  MetricField f = MetricField::euclidean(d);
  f.tensor = [](Vec2) { return std::array<double, 3>{4.0, 0.0, 1.0}; };
  CHECK(f.segment_length({0.0, 0.0}, {0.5, 0.0}) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(f.segment_length({0.0, 0.0}, {0.0, 0.5}) == doctest::Approx(0.5).epsilon(1e-14));
  f.tensor = [](Vec2) { return std::array<double, 3>{1.0, 2.0, 1.0}; };
  CHECK_THROWS_AS(f.segment_length({0.0, 0.0}, {0.5, 0.0}), std::invalid_argument);
}

TEST_CASE("gaussian bump gradient matches finite differences") {
  MetricField bump = MetricField::gaussian_bump(ConvexDomain::disk(1.0), 0.07, 0.25, {0.2, -0.1});
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> coord(-0.7, 0.7);
  double eps = 1e-6;
  for (int i = 0; i < 20; ++i) {
    Vec2 p{coord(rng), coord(rng)};
    Vec2 g = bump.grad_u(p);
    double fx = (bump.u({p.x + eps, p.y}) - bump.u({p.x - eps, p.y})) / (2.0 * eps);
    double fy = (bump.u({p.x, p.y + eps}) - bump.u({p.x, p.y - eps})) / (2.0 * eps);
    CHECK(g.x == doctest::Approx(fx).epsilon(1e-5));
    CHECK(g.y == doctest::Approx(fy).epsilon(1e-5));
  }
}

TEST_CASE("domain grids cover the region at the requested spacing") {
  ConvexDomain d = ConvexDomain::disk(1.0);
  auto grid = d.interior_grid(0.1);
  CHECK(grid.size() > 280);
  CHECK(grid.size() < 340);
  for (Vec2 p : grid) CHECK(d.contains(p));

  auto ring = d.boundary_grid(0.05);
  CHECK(ring.size() >= std::ceil(2.0 * kPi / 0.05));
  for (size_t i = 0; i < ring.size(); ++i) {
    CHECK(std::fabs(norm(ring[i]) - 1.0) < 1e-12);
    double gap = dist(ring[i], ring[(i + 1) % ring.size()]);
    CHECK(gap <= 0.05 + 1e-12);
  }
  CHECK_THROWS_AS(d.interior_grid(0.0), std::invalid_argument);
}
