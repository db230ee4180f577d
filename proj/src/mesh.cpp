#include "ghlab/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <queue>
#include <stdexcept>

namespace ghlab {

namespace {

long long edge_key(int u, int v) {
  if (u > v) std::swap(u, v);
  return (static_cast<long long>(u) << 32) | static_cast<unsigned int>(v);
}

// Numerically stable Heron formula (Kahan); expects a >= b >= c.
double heron_area(double a, double b, double c) {
  double s = (a + (b + c)) * (c - (a - b)) * (c + (a - b)) * (a + (b - c));
  return 0.25 * std::sqrt(std::max(0.0, s));
}

std::string describe_triangle(const Triangle& t, double la, double lb, double lc) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), "triangle (%d,%d,%d) with edge lengths %.17g, %.17g, %.17g",
                t.a, t.b, t.c, la, lb, lc);
  return buf;
}

}  // namespace

double quantize_length(double len) {
  return std::ldexp(std::nearbyint(std::ldexp(len, 40)), -40);
}

Vec2 IntrinsicMesh::coord(int v) const {
  if (!has_coord_[v]) throw std::invalid_argument("vertex has no reference coordinates");
  return coords_[v];
}

std::span<const Neighbor> IntrinsicMesh::neighbors(int v) const {
  return {nbrs_.data() + nbr_offsets_[v],
          static_cast<size_t>(nbr_offsets_[v + 1] - nbr_offsets_[v])};
}

std::optional<double> IntrinsicMesh::edge_length(int u, int v) const {
  auto nb = neighbors(u);
  auto it = std::lower_bound(nb.begin(), nb.end(), v,
                             [](const Neighbor& n, int x) { return n.vertex < x; });
  if (it != nb.end() && it->vertex == v) return it->length;
  return std::nullopt;
}

double IntrinsicMesh::triangle_area(int t) const {
  const Triangle& tr = triangles_[t];
  double a = *edge_length(tr.a, tr.b);
  double b = *edge_length(tr.b, tr.c);
  double c = *edge_length(tr.c, tr.a);
  if (a < b) std::swap(a, b);
  if (b < c) std::swap(b, c);
  if (a < b) std::swap(a, b);
  return heron_area(a, b, c);
}

IntrinsicMesh IntrinsicMesh::rescaled(double s) const {
  if (!(s > 0.0)) throw std::invalid_argument("rescale factor must be positive");
  MeshBuilder b;
  for (int v = 0; v < vertex_count(); ++v) {
    if (has_coord_[v])
      b.add_vertex(coords_[v] * s);
    else
      b.add_vertex();
  }
  for (const Triangle& t : triangles_) b.add_triangle(t.a, t.b, t.c);
  for (const MeshEdge& e : edges_) b.add_edge(e.u, e.v, e.length * s);
  b.set_boundary_loop(loop_);
  b.set_id(id_);
  return b.finalize();
}

int MeshBuilder::add_vertex() {
  coords_.push_back({0.0, 0.0});
  has_coord_.push_back(0);
  return static_cast<int>(coords_.size()) - 1;
}

int MeshBuilder::add_vertex(Vec2 p) {
  coords_.push_back(p);
  has_coord_.push_back(1);
  return static_cast<int>(coords_.size()) - 1;
}

bool MeshBuilder::has_coord(int v) const {
  check_vertex(v, "vertex");
  return has_coord_[v] != 0;
}

Vec2 MeshBuilder::coord(int v) const {
  check_vertex(v, "vertex");
  if (!has_coord_[v]) throw std::invalid_argument("vertex has no reference coordinates");
  return coords_[v];
}

void MeshBuilder::check_vertex(int v, const char* what) const {
  if (v < 0 || v >= static_cast<int>(coords_.size())) {
    char buf[80];
    std::snprintf(buf, sizeof(buf), "%s index %d out of range", what, v);
    throw std::invalid_argument(buf);
  }
}

void MeshBuilder::add_triangle(int a, int b, int c) {
  check_vertex(a, "triangle vertex");
  check_vertex(b, "triangle vertex");
  check_vertex(c, "triangle vertex");
  if (a == b || b == c || a == c)
    throw std::invalid_argument("triangle with repeated vertex");
  triangles_.push_back({a, b, c});
}

void MeshBuilder::add_edge(int u, int v, double length) {
  check_vertex(u, "edge vertex");
  check_vertex(v, "edge vertex");
  if (u == v) throw std::invalid_argument("edge with equal endpoints");
  length = quantize_length(length);
  if (!(length > 0.0) || !std::isfinite(length))
    throw std::invalid_argument("edge length must be positive and finite");
  long long key = edge_key(u, v);
  auto [it, inserted] = edge_map_.emplace(key, length);
  if (!inserted) throw std::invalid_argument("duplicate edge");
  edge_order_.push_back(key);
}

void MeshBuilder::ensure_edge(int u, int v, double length) {
  long long key = edge_key(u, v);
  auto it = edge_map_.find(key);
  if (it == edge_map_.end()) {
    add_edge(u, v, length);
    return;
  }
  if (std::fabs(it->second - quantize_length(length)) > 1e-9)
    throw std::invalid_argument("conflicting lengths for the same edge");
}

bool MeshBuilder::has_edge(int u, int v) const {
  return edge_map_.count(edge_key(u, v)) != 0;
}

void MeshBuilder::set_boundary_loop(std::vector<int> loop) {
  for (int v : loop) check_vertex(v, "boundary vertex");
  loop_ = std::move(loop);
}

IntrinsicMesh MeshBuilder::finalize() {
  IntrinsicMesh m;
  int nv = vertex_count();
  m.coords_ = coords_;
  m.has_coord_ = has_coord_;
  m.triangles_ = triangles_;
  m.id_ = id_;

  // Count how many triangles use each edge and require explicit lengths.
  std::unordered_map<long long, int> tri_count;
  tri_count.reserve(triangles_.size() * 2);
  for (const Triangle& t : triangles_) {
    for (auto [x, y] : {std::pair{t.a, t.b}, std::pair{t.b, t.c}, std::pair{t.c, t.a}}) {
      long long key = edge_key(x, y);
      if (!edge_map_.count(key)) {
        char buf[96];
        std::snprintf(buf, sizeof(buf), "triangle (%d,%d,%d) has edge (%d,%d) without a length",
                      t.a, t.b, t.c, x, y);
        throw std::invalid_argument(buf);
      }
      int& c = tri_count[key];
      if (++c > 2) throw std::invalid_argument("edge shared by more than two triangles");
    }
  }

  for (const Triangle& t : triangles_) {
    double la = edge_map_.at(edge_key(t.a, t.b));
    double lb = edge_map_.at(edge_key(t.b, t.c));
    double lc = edge_map_.at(edge_key(t.c, t.a));
    double mx = std::max({la, lb, lc});
    if (!(la + lb + lc - mx > mx))
      throw std::invalid_argument("triangle inequality violated at " +
                                  describe_triangle(t, la, lb, lc));
  }

  m.edges_.reserve(edge_order_.size());
  for (long long key : edge_order_) {
    MeshEdge e;
    e.u = static_cast<int>(key >> 32);
    e.v = static_cast<int>(key & 0xffffffffLL);
    e.length = edge_map_.at(key);
    auto it = tri_count.find(key);
    e.in_triangle = it != tri_count.end();
    m.edges_.push_back(e);
  }

  // Boundary loop: consecutive pairs must be exactly the edges that belong
  // to one triangle, and the loop must be simple.
  std::vector<long long> boundary_edges;
  for (auto& [key, c] : tri_count)
    if (c == 1) boundary_edges.push_back(key);
  if (loop_.empty()) {
    if (!boundary_edges.empty())
      throw std::invalid_argument("mesh has boundary edges but no boundary loop");
  } else {
    if (loop_.size() < 3) throw std::invalid_argument("boundary loop too short");
    std::vector<char> seen(nv, 0);
    std::vector<long long> loop_edges;
    for (size_t i = 0; i < loop_.size(); ++i) {
      int u = loop_[i];
      if (seen[u]) throw std::invalid_argument("boundary loop is not simple");
      seen[u] = 1;
      int v = loop_[(i + 1) % loop_.size()];
      loop_edges.push_back(edge_key(u, v));
    }
    std::vector<long long> a = loop_edges, b = boundary_edges;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b)
      throw std::invalid_argument(
          "boundary loop does not match the set of one-triangle edges");
  }
  m.loop_ = loop_;
  m.loop_params_.resize(loop_.size());
  double s = 0.0;
  for (size_t i = 0; i < loop_.size(); ++i) {
    m.loop_params_[i] = s;
    s += edge_map_.at(edge_key(loop_[i], loop_[(i + 1) % loop_.size()]));
  }
  m.boundary_length_ = s;
  m.loop_position_.assign(nv, -1);
  for (size_t i = 0; i < loop_.size(); ++i)
    m.loop_position_[loop_[i]] = static_cast<int>(i);

  // Sorted CSR adjacency.
  m.nbr_offsets_.assign(nv + 1, 0);
  for (const MeshEdge& e : m.edges_) {
    ++m.nbr_offsets_[e.u + 1];
    ++m.nbr_offsets_[e.v + 1];
  }
  for (int v = 0; v < nv; ++v) m.nbr_offsets_[v + 1] += m.nbr_offsets_[v];
  m.nbrs_.resize(m.edges_.size() * 2);
  std::vector<int> cursor(m.nbr_offsets_.begin(), m.nbr_offsets_.end() - 1);
  for (const MeshEdge& e : m.edges_) {
    m.nbrs_[cursor[e.u]++] = {e.v, e.length};
    m.nbrs_[cursor[e.v]++] = {e.u, e.length};
  }
  for (int v = 0; v < nv; ++v)
    std::sort(m.nbrs_.begin() + m.nbr_offsets_[v], m.nbrs_.begin() + m.nbr_offsets_[v + 1],
              [](const Neighbor& x, const Neighbor& y) { return x.vertex < y.vertex; });

  double total = 0.0, max_edge = 0.0, sum_edge = 0.0, stretch = 1.0;
  long long tri_edge_count = 0;
  for (size_t t = 0; t < m.triangles_.size(); ++t) total += m.triangle_area(static_cast<int>(t));
  for (const MeshEdge& e : m.edges_) {
    if (m.has_coord(e.u) && m.has_coord(e.v)) {
      double chord = dist(m.coord(e.u), m.coord(e.v));
      if (chord > 0.0) stretch = std::max(stretch, e.length / chord);
    }
    if (!e.in_triangle) continue;
    max_edge = std::max(max_edge, e.length);
    sum_edge += e.length;
    ++tri_edge_count;
  }
  m.total_area_ = total;
  m.max_triangle_edge_ = max_edge;
  m.mean_triangle_edge_ = tri_edge_count > 0 ? sum_edge / tri_edge_count : 0.0;
  m.max_conformal_stretch_ = stretch;
  return m;
}

void stitch_rings(MeshBuilder& b, std::span<const int> inner,
                  std::span<const int> outer,
                  const std::function<double(int, int)>& length) {
  int ni = static_cast<int>(inner.size());
  int no = static_cast<int>(outer.size());
  if (ni < 3 || no < 3) throw std::invalid_argument("ring too small to stitch");
  auto ensure = [&](int u, int v) { b.ensure_edge(u, v, length(u, v)); };
  int i = 0, j = 0;
  while (i < ni || j < no) {
    bool advance_inner =
        i < ni && (j >= no || static_cast<long long>(i + 1) * no <=
                                  static_cast<long long>(j + 1) * ni);
    if (advance_inner) {
      int a = inner[i % ni], a1 = inner[(i + 1) % ni], o = outer[j % no];
      ensure(a, a1);
      ensure(a, o);
      ensure(a1, o);
      b.add_triangle(a, a1, o);
      ++i;
    } else {
      int a = inner[i % ni], o = outer[j % no], o1 = outer[(j + 1) % no];
      ensure(o, o1);
      ensure(a, o);
      ensure(a, o1);
      b.add_triangle(a, o, o1);
      ++j;
    }
  }
}

void fan_apex(MeshBuilder& b, int apex, std::span<const int> ring,
              const std::function<double(int, int)>& length) {
  int n = static_cast<int>(ring.size());
  if (n < 3) throw std::invalid_argument("ring too small to fan");
  for (int i = 0; i < n; ++i) {
    int u = ring[i], v = ring[(i + 1) % n];
    b.ensure_edge(u, v, length(u, v));
    b.ensure_edge(apex, u, length(apex, u));
    b.ensure_edge(apex, v, length(apex, v));
    b.add_triangle(apex, u, v);
  }
}

void add_hop_shortcuts(
    MeshBuilder& b, int hops,
    const std::function<std::optional<double>(int, int)>& length) {
  if (hops < 2) return;
  int nv = b.vertex_count();
  std::vector<std::vector<int>> adj(nv);
  for (const Triangle& t : b.triangles()) {
    for (auto [x, y] : {std::pair{t.a, t.b}, std::pair{t.b, t.c}, std::pair{t.c, t.a}}) {
      adj[x].push_back(y);
      adj[y].push_back(x);
    }
  }
  for (auto& list : adj) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
  std::vector<int> stamp(nv, -1), depth(nv, 0), frontier, next;
  for (int u = 0; u < nv; ++u) {
    stamp[u] = u;
    depth[u] = 0;
    frontier.assign(1, u);
    for (int d = 1; d <= hops; ++d) {
      next.clear();
      for (int x : frontier)
        for (int y : adj[x]) {
          if (stamp[y] == u) continue;
          stamp[y] = u;
          depth[y] = d;
          next.push_back(y);
        }
      frontier = next;
      if (d < 2) continue;
      for (int w : frontier) {
        if (w <= u || b.has_edge(u, w)) continue;
        if (auto len = length(u, w)) b.add_edge(u, w, *len);
      }
    }
  }
}

IntrinsicMesh build_disk_mesh(double radius, double h, int shortcut_hops) {
  if (!(radius > 0.0)) throw std::invalid_argument("disk radius must be positive");
  if (!(h > 0.0) || !(h < radius / 4.0))
    throw std::invalid_argument("resolution too coarse: need 0 < h < radius/4");
  int n = static_cast<int>(std::ceil(radius / h));
  MeshBuilder b;
  int center = b.add_vertex({0.0, 0.0});
  std::vector<std::vector<int>> rings(n + 1);
  rings[0] = {center};
  for (int k = 1; k <= n; ++k) {
    double rk = radius * (static_cast<double>(k) / n);
    int count = 6 * k;
    rings[k].reserve(count);
    for (int j = 0; j < count; ++j)
      rings[k].push_back(b.add_vertex(rk * from_angle(2.0 * kPi * j / count)));
  }
  auto chord = [&](int u, int v) { return dist(b.coord(u), b.coord(v)); };
  fan_apex(b, center, rings[1], chord);
  for (int k = 1; k < n; ++k) stitch_rings(b, rings[k], rings[k + 1], chord);
  add_hop_shortcuts(b, shortcut_hops,
                    [&](int u, int v) -> std::optional<double> { return chord(u, v); });
  b.set_boundary_loop(rings[n]);
  char id[96];
  std::snprintf(id, sizeof(id), "disk[r=%g,h=%g,hops=%d]", radius, h, shortcut_hops);
  b.set_id(id);
  return b.finalize();
}

IntrinsicMesh apply_conformal_factor(const IntrinsicMesh& mesh, const MetricField& field) {
  double tol = 1e-9 * field.domain.diameter();
  for (int v = 0; v < mesh.vertex_count(); ++v) {
    if (!mesh.has_coord(v))
      throw std::invalid_argument("conformal factor needs reference coordinates on all vertices");
    if (!field.domain.contains(mesh.coord(v), tol))
      throw std::invalid_argument("mesh reference coordinates leave the field domain");
  }
  MeshBuilder b;
  for (int v = 0; v < mesh.vertex_count(); ++v) b.add_vertex(mesh.coord(v));
  for (const Triangle& t : mesh.triangles()) b.add_triangle(t.a, t.b, t.c);
  std::unordered_map<long long, double> new_len;
  new_len.reserve(mesh.edges().size() * 2);
  for (const MeshEdge& e : mesh.edges()) {
    double len = quantize_length(field.segment_length(mesh.coord(e.u), mesh.coord(e.v)));
    new_len[edge_key(e.u, e.v)] = len;
    b.add_edge(e.u, e.v, len);
  }
  for (const Triangle& t : mesh.triangles()) {
    double la = new_len.at(edge_key(t.a, t.b));
    double lb = new_len.at(edge_key(t.b, t.c));
    double lc = new_len.at(edge_key(t.c, t.a));
    double mx = std::max({la, lb, lc});
    if (!(la + lb + lc - mx > mx))
      throw std::runtime_error("conformal factor violates the triangle inequality at " +
                               describe_triangle(t, la, lb, lc) +
                               " (mesh too coarse for this field)");
  }
  b.set_boundary_loop(mesh.boundary_loop());
  b.set_id(mesh.id() + "+conformal");
  return b.finalize();
}

double fractional_area(const IntrinsicMesh& mesh, const std::vector<char>& selected) {
  if (static_cast<int>(selected.size()) != mesh.vertex_count())
    throw std::invalid_argument("selection size does not match vertex count");
  double area = 0.0;
  for (size_t t = 0; t < mesh.triangles().size(); ++t) {
    const Triangle& tr = mesh.triangles()[t];
    int k = (selected[tr.a] ? 1 : 0) + (selected[tr.b] ? 1 : 0) + (selected[tr.c] ? 1 : 0);
    if (k > 0) area += mesh.triangle_area(static_cast<int>(t)) * (k / 3.0);
  }
  return area;
}

double collar_complement_area(const IntrinsicMesh& mesh, double delta,
                              const std::vector<double>& boundary_distance) {
  if (delta < 0.0) throw std::invalid_argument("collar width must be nonnegative");
  if (static_cast<int>(boundary_distance.size()) != mesh.vertex_count())
    throw std::invalid_argument("field size does not match vertex count");
  std::vector<char> selected(mesh.vertex_count());
  for (int v = 0; v < mesh.vertex_count(); ++v)
    selected[v] = boundary_distance[v] >= delta ? 1 : 0;
  return fractional_area(mesh, selected);
}

}  // namespace ghlab
