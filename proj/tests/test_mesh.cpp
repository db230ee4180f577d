#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "ghlab/geodesic.hpp"
#include "ghlab/io.hpp"
#include "ghlab/mesh.hpp"
#include "support.hpp"

using namespace ghlab;
using ghlab::test::unit_disk_005;

namespace {

MeshBuilder equilateral_builder(double edge) {
  MeshBuilder b;
  b.add_vertex({0.0, 0.0});
  b.add_vertex({edge, 0.0});
  b.add_vertex({edge / 2.0, edge * std::sqrt(3.0) / 2.0});
  b.add_triangle(0, 1, 2);
  b.add_edge(0, 1, edge);
  b.add_edge(1, 2, edge);
  b.add_edge(2, 0, edge);
  b.set_boundary_loop({0, 1, 2});
  return b;
}

}  // namespace

TEST_CASE("disk mesh matches closed-form circumference and area") {
  const IntrinsicMesh& mesh = unit_disk_005();
  CHECK(mesh.boundary_length() == doctest::Approx(2.0 * kPi).epsilon(0.005));
  CHECK(mesh.total_area() == doctest::Approx(kPi).epsilon(0.01));
  CHECK(mesh.max_triangle_edge() <= 2.0 * 0.05);
}

TEST_CASE("disk mesh rejects too-coarse resolution") {
  CHECK_THROWS_WITH_AS(build_disk_mesh(1.0, 0.6), doctest::Contains("resolution too coarse"),
                       std::invalid_argument);
  CHECK_THROWS_AS(build_disk_mesh(-1.0, 0.05), std::invalid_argument);
  CHECK_THROWS_AS(build_disk_mesh(1.0, 0.0), std::invalid_argument);
}

TEST_CASE("single equilateral triangle has Heron area sqrt(3)/4") {
  IntrinsicMesh m = equilateral_builder(1.0).finalize();
  CHECK(m.total_area() == doctest::Approx(std::sqrt(3.0) / 4.0).epsilon(1e-12));
}

TEST_CASE("empty mesh has zero area") {
  MeshBuilder b;
  IntrinsicMesh m = b.finalize();
  CHECK(m.total_area() == 0.0);
  CHECK(m.vertex_count() == 0);
}

TEST_CASE("builder rejects malformed input") {
  SUBCASE("degenerate triangle inequality") {
    MeshBuilder b;
    b.add_vertex();
    b.add_vertex();
    b.add_vertex();
    b.add_triangle(0, 1, 2);
    b.add_edge(0, 1, 1.0);
    b.add_edge(1, 2, 1.0);
    b.add_edge(2, 0, 2.0);
    b.set_boundary_loop({0, 1, 2});
    CHECK_THROWS_WITH_AS(b.finalize(), doctest::Contains("triangle inequality"),
                         std::invalid_argument);
  }
  SUBCASE("triangle without edge lengths") {
    MeshBuilder b;
    b.add_vertex();
    b.add_vertex();
    b.add_vertex();
    b.add_triangle(0, 1, 2);
    CHECK_THROWS_AS(b.finalize(), std::invalid_argument);
  }
  SUBCASE("duplicate edge") {
    MeshBuilder b;
    b.add_vertex();
    b.add_vertex();
    b.add_edge(0, 1, 1.0);
    CHECK_THROWS_AS(b.add_edge(0, 1, 1.0), std::invalid_argument);
  }
  SUBCASE("nonpositive edge length") {
    MeshBuilder b;
    b.add_vertex();
    b.add_vertex();
    CHECK_THROWS_AS(b.add_edge(0, 1, 0.0), std::invalid_argument);
  }
  SUBCASE("boundary loop not matching one-triangle edges") {
    MeshBuilder b = equilateral_builder(1.0);
    b.set_boundary_loop({});
    CHECK_THROWS_AS(b.finalize(), std::invalid_argument);
  }
}

TEST_CASE("vertex reindexing preserves area and pairwise distances") {
  IntrinsicMesh base = build_disk_mesh(1.0, 0.2);
  int nv = base.vertex_count();
  std::vector<int> perm(nv);
  std::iota(perm.begin(), perm.end(), 0);
  std::mt19937_64 rng(7);
  std::shuffle(perm.begin(), perm.end(), rng);

  MeshBuilder b;
  std::vector<int> inv(nv);
  for (int v = 0; v < nv; ++v) inv[perm[v]] = v;
  for (int slot = 0; slot < nv; ++slot) b.add_vertex(base.coord(inv[slot]));
  for (const Triangle& t : base.triangles()) b.add_triangle(perm[t.a], perm[t.b], perm[t.c]);
  for (const MeshEdge& e : base.edges()) b.add_edge(perm[e.u], perm[e.v], e.length);
  std::vector<int> loop;
  for (int v : base.boundary_loop()) loop.push_back(perm[v]);
  b.set_boundary_loop(loop);
  IntrinsicMesh shuffled = b.finalize();

  CHECK(shuffled.total_area() == doctest::Approx(base.total_area()).epsilon(1e-12));
  std::uniform_int_distribution<int> pick(0, nv - 1);
  for (int trial = 0; trial < 5; ++trial) {
    int x = pick(rng), y = pick(rng);
    int src[1] = {x};
    int src_p[1] = {perm[x]};
    DistanceField fa = distance_field(base, src);
    DistanceField fb = distance_field(shuffled, src_p);
    CHECK(fa.values[y] == fb.values[perm[y]]);
  }
}

TEST_CASE("rescaling edge lengths scales area quadratically") {
  IntrinsicMesh base = build_disk_mesh(1.0, 0.15);
  IntrinsicMesh doubled = base.rescaled(2.0);
  CHECK(doubled.total_area() == doctest::Approx(4.0 * base.total_area()).epsilon(1e-9));
  CHECK(doubled.boundary_length() == doctest::Approx(2.0 * base.boundary_length()).epsilon(1e-9));
  IntrinsicMesh halved = base.rescaled(0.5);
  CHECK(halved.total_area() == doctest::Approx(0.25 * base.total_area()).epsilon(1e-9));
}

TEST_CASE("identity conformal factor keeps edge lengths") {
  IntrinsicMesh base = build_disk_mesh(1.0, 0.2);
  IntrinsicMesh same = apply_conformal_factor(base, MetricField::euclidean(ConvexDomain::disk(1.0)));
  REQUIRE(same.edges().size() == base.edges().size());
  for (size_t i = 0; i < base.edges().size(); ++i)
    CHECK(same.edges()[i].length == doctest::Approx(base.edges()[i].length).epsilon(1e-12));
}

TEST_CASE("constant conformal factor ln 2 doubles every edge") {
  IntrinsicMesh base = build_disk_mesh(1.0, 0.2);
  IntrinsicMesh twice =
      apply_conformal_factor(base, MetricField::constant(ConvexDomain::disk(1.0), std::log(2.0)));
  for (size_t i = 0; i < base.edges().size(); ++i)
    CHECK(twice.edges()[i].length == doctest::Approx(2.0 * base.edges()[i].length).epsilon(1e-9));
}

TEST_CASE("gaussian bump area matches dense planar quadrature") {
  double amplitude = 0.05, width = 0.3;
  // Radial Simpson quadrature of the closed-form area integrand.
  auto integrand = [&](double rho) {
    double u = amplitude * std::exp(-rho * rho / (2.0 * width * width));
    return std::exp(2.0 * u) * rho;
  };
  int n = 4000;
  double sum = 0.0;
  for (int i = 0; i <= n; ++i) {
    double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    sum += w * integrand(static_cast<double>(i) / n);
  }
  double oracle = 2.0 * kPi * sum / (3.0 * n);

  IntrinsicMesh mesh = apply_conformal_factor(
      unit_disk_005(),
      MetricField::gaussian_bump(ConvexDomain::disk(1.0), amplitude, width));
  CHECK(mesh.total_area() == doctest::Approx(oracle).epsilon(0.01));
}

TEST_CASE("conformal factor that breaks a triangle is reported") {
  IntrinsicMesh base = build_disk_mesh(1.0, 0.2);
  // A spike centered on one edge midpoint stretches only that edge.
  Vec2 mid = (base.coord(1) + base.coord(2)) * 0.5;
  MetricField spike = MetricField::gaussian_bump(ConvexDomain::disk(1.0), 3.0, 0.005, mid);
  CHECK_THROWS_WITH_AS(apply_conformal_factor(base, spike), doctest::Contains("triangle"),
                       std::runtime_error);
}

TEST_CASE("conformal factor requires coordinates inside the domain") {
  IntrinsicMesh tri = equilateral_builder(4.0).finalize();
  CHECK_THROWS_AS(apply_conformal_factor(tri, MetricField::euclidean(ConvexDomain::disk(1.0))),
                  std::invalid_argument);
}

TEST_CASE("collar complement area matches the annulus formula") {
  const IntrinsicMesh& mesh = unit_disk_005();
  DistanceField prox = boundary_proximity(mesh);
  CHECK(collar_complement_area(mesh, 0.0, prox.values) == doctest::Approx(mesh.total_area()));
  // Threshold strictly between vertex rings, where the fractional straddle
  // rule splits the boundary shell evenly and the annulus formula is unbiased.
  CHECK(collar_complement_area(mesh, 0.125, prox.values) ==
        doctest::Approx(kPi * 0.875 * 0.875).epsilon(0.02));
  CHECK(collar_complement_area(mesh, 1.5, prox.values) == 0.0);
  CHECK_THROWS_AS(collar_complement_area(mesh, -0.1, prox.values), std::invalid_argument);

  double prev = mesh.total_area();
  for (double delta : {0.05, 0.1, 0.2, 0.4, 0.8}) {
    double area = collar_complement_area(mesh, delta, prox.values);
    CHECK(area <= prev + 1e-12);
    prev = area;
  }
}

TEST_CASE("collar complement with a tenth-radius band on a coarser disk") {
  IntrinsicMesh mesh = build_disk_mesh(1.0, 0.04);
  DistanceField prox = boundary_proximity(mesh);
  CHECK(collar_complement_area(mesh, 0.1, prox.values) ==
        doctest::Approx(kPi * 0.81).epsilon(0.02));
}

TEST_CASE("mesh file round-trips bit-exactly") {
  IntrinsicMesh base = build_disk_mesh(1.0, 0.15);
  std::string path = "roundtrip.irmesh";
  write_mesh(base, path);
  IntrinsicMesh back = read_mesh(path);
  REQUIRE(back.vertex_count() == base.vertex_count());
  REQUIRE(back.edges().size() == base.edges().size());
  CHECK(back.total_area() == base.total_area());
  CHECK(back.boundary_length() == base.boundary_length());
  for (size_t i = 0; i < base.edges().size(); ++i)
    CHECK(back.edges()[i].length == base.edges()[i].length);
  int src[1] = {0};
  DistanceField fa = distance_field(base, src);
  DistanceField fb = distance_field(back, src);
  CHECK(fa.values[base.vertex_count() - 1] == fb.values[base.vertex_count() - 1]);
  std::remove(path.c_str());
}

TEST_CASE("mesh reader rejects malformed files") {
  auto write_text = [](const std::string& path, const std::string& text) {
    std::FILE* f = std::fopen(path.c_str(), "w");
    REQUIRE(f != nullptr);
    std::fwrite(text.data(), 1, text.size(), f);
    std::fclose(f);
  };
  std::string path = "bad.irmesh";
  write_text(path, "not a mesh\n");
  CHECK_THROWS_AS(read_mesh(path), std::invalid_argument);
  write_text(path, "irmesh 1\nv 0 0 0\nv 5 1 0\n");
  CHECK_THROWS_AS(read_mesh(path), std::invalid_argument);
  std::remove(path.c_str());
}
