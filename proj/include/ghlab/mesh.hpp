#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "ghlab/geometry.hpp"
#include "ghlab/metric_field.hpp"

namespace ghlab {

struct Triangle {
  int a = 0, b = 0, c = 0;
};

struct MeshEdge {
  int u = 0, v = 0;  // u < v
  double length = 0.0;
  bool in_triangle = false;
};

struct Neighbor {
  int vertex = 0;
  double length = 0.0;
};

// Edge lengths are snapped to this binary grid on construction. Sums of
// snapped lengths up to total length 2^13 are exact in double precision,
// so shortest-path identities (symmetry, triangle inequality) hold bitwise.
double quantize_length(double len);

class MeshBuilder;

// Intrinsic triangle mesh of a compact surface with boundary: vertices with
// optional planar reference coordinates, triangles, explicit positive edge
// lengths (including non-triangle shortcut edges), and a single boundary
// loop with arc-length parameters. Immutable after construction.
class IntrinsicMesh {
 public:
  IntrinsicMesh() = default;

  int vertex_count() const { return static_cast<int>(coords_.size()); }
  bool has_coord(int v) const { return has_coord_[v] != 0; }
  Vec2 coord(int v) const;
  const std::vector<Triangle>& triangles() const { return triangles_; }
  const std::vector<MeshEdge>& edges() const { return edges_; }
  std::span<const Neighbor> neighbors(int v) const;
  std::optional<double> edge_length(int u, int v) const;

  const std::vector<int>& boundary_loop() const { return loop_; }
  const std::vector<double>& boundary_params() const { return loop_params_; }
  double boundary_length() const { return boundary_length_; }
  bool is_boundary(int v) const { return loop_position_[v] >= 0; }
  // Position of v in the boundary loop, -1 for interior vertices.
  int loop_position(int v) const { return loop_position_[v]; }

  double triangle_area(int t) const;
  double total_area() const { return total_area_; }
  double max_triangle_edge() const { return max_triangle_edge_; }
  double mean_triangle_edge() const { return mean_triangle_edge_; }
  // Largest ratio of metric edge length to reference-chart chord (>= 1 up to
  // quantization); 1 exactly on a flat chart.
  double max_conformal_stretch() const { return max_conformal_stretch_; }

  const std::string& id() const { return id_; }

  // Homothety: all edge lengths (and reference coordinates) scaled by s.
  IntrinsicMesh rescaled(double s) const;

 private:
  friend class MeshBuilder;
  std::vector<Vec2> coords_;
  std::vector<char> has_coord_;
  std::vector<Triangle> triangles_;
  std::vector<MeshEdge> edges_;
  std::vector<int> nbr_offsets_;
  std::vector<Neighbor> nbrs_;
  std::vector<int> loop_;
  std::vector<double> loop_params_;
  std::vector<int> loop_position_;
  double boundary_length_ = 0.0;
  double total_area_ = 0.0;
  double max_triangle_edge_ = 0.0;
  double mean_triangle_edge_ = 0.0;
  double max_conformal_stretch_ = 1.0;
  std::string id_;
};

// Accumulates vertices, triangles, explicit edges, and the boundary loop,
// then validates everything in finalize(). Triangle edges must be added
// explicitly (lengths are intrinsic, not derived from coordinates).
class MeshBuilder {
 public:
  int add_vertex();
  int add_vertex(Vec2 p);
  void add_triangle(int a, int b, int c);
  void add_edge(int u, int v, double length);
  // Adds the edge unless it already exists (length conflicts rejected).
  void ensure_edge(int u, int v, double length);
  bool has_edge(int u, int v) const;
  void set_boundary_loop(std::vector<int> loop);
  void set_id(std::string id) { id_ = std::move(id); }

  int vertex_count() const { return static_cast<int>(coords_.size()); }
  bool has_coord(int v) const;
  Vec2 coord(int v) const;
  const std::vector<Triangle>& triangles() const { return triangles_; }

  IntrinsicMesh finalize();

 private:
  void check_vertex(int v, const char* what) const;
  std::vector<Vec2> coords_;
  std::vector<char> has_coord_;
  std::vector<Triangle> triangles_;
  std::vector<long long> edge_order_;                 // key = u * 2^32 + v
  std::unordered_map<long long, double> edge_map_;
  std::vector<int> loop_;
  std::string id_;
};

// Triangulates the band between two concentric vertex rings, both listed
// counterclockwise and uniformly spaced starting at a common angular
// origin. Ring edges and cross edges are created as needed with lengths
// from the callback.
void stitch_rings(MeshBuilder& b, std::span<const int> inner,
                  std::span<const int> outer,
                  const std::function<double(int, int)>& length);

// Fan of triangles joining an apex vertex to a full ring.
void fan_apex(MeshBuilder& b, int apex, std::span<const int> ring,
              const std::function<double(int, int)>& length);

// Adds shortcut edges between vertices at triangle-graph hop distance in
// [2, hops]. length(u, v) returns the intrinsic length of the candidate
// edge or nullopt to skip it (e.g. the segment would leave the surface).
void add_hop_shortcuts(
    MeshBuilder& b, int hops,
    const std::function<std::optional<double>(int, int)>& length);

// Deterministic concentric-ring triangulation of a round disk, with
// chord-length shortcut edges up to the given hop radius so that graph
// distances track Euclidean distances.
IntrinsicMesh build_disk_mesh(double radius, double h, int shortcut_hops = 4);

// Recomputes every edge length as the metric length of its straight
// reference segment (3-point Gauss quadrature). Requires coordinates on all
// vertices; fails if some triangle stops satisfying the triangle inequality.
IntrinsicMesh apply_conformal_factor(const IntrinsicMesh& mesh,
                                     const MetricField& field);

// Area of the selected sub-complex: each triangle contributes its Heron
// area times (number of selected vertices)/3.
double fractional_area(const IntrinsicMesh& mesh, const std::vector<char>& selected);

// Area of { x : dist(x, boundary) >= delta } under the fractional straddle
// rule; boundary_distance is the per-vertex distance-to-boundary field.
double collar_complement_area(const IntrinsicMesh& mesh, double delta,
                              const std::vector<double>& boundary_distance);

}  // namespace ghlab
