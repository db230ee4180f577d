#include "ghlab/io.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ghlab {

std::string format_g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void write_mesh(const IntrinsicMesh& mesh, const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  std::fprintf(f, "irmesh 1\n");
  for (int v = 0; v < mesh.vertex_count(); ++v) {
    if (mesh.has_coord(v)) {
      Vec2 p = mesh.coord(v);
      std::fprintf(f, "v %d %.17g %.17g\n", v, p.x, p.y);
    } else {
      std::fprintf(f, "v %d\n", v);
    }
  }
  for (const Triangle& t : mesh.triangles()) std::fprintf(f, "t %d %d %d\n", t.a, t.b, t.c);
  for (const MeshEdge& e : mesh.edges()) std::fprintf(f, "e %d %d %.17g\n", e.u, e.v, e.length);
  const auto& loop = mesh.boundary_loop();
  const auto& params = mesh.boundary_params();
  for (size_t i = 0; i < loop.size(); ++i)
    std::fprintf(f, "b %d %.17g\n", loop[i], params[i]);
  if (std::fclose(f) != 0) throw std::runtime_error("write failed: " + path);
}

IntrinsicMesh read_mesh(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& why) {
    throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": " + why);
  };
  if (!std::getline(in, line)) fail("empty file");
  lineno = 1;
  if (line != "irmesh 1") fail("expected header 'irmesh 1'");

  MeshBuilder b;
  std::vector<std::pair<int, double>> loop_entries;
  int next_vertex = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string tag;
    ss >> tag;
    if (tag == "v") {
      int id;
      double x, y;
      if (!(ss >> id)) fail("bad vertex line");
      if (id != next_vertex) fail("vertex ids must be consecutive from 0");
      ++next_vertex;
      if (ss >> x) {
        if (!(ss >> y)) fail("vertex with x but no y");
        b.add_vertex({x, y});
      } else {
        b.add_vertex();
      }
    } else if (tag == "t") {
      int i, j, k;
      if (!(ss >> i >> j >> k)) fail("bad triangle line");
      b.add_triangle(i, j, k);
    } else if (tag == "e") {
      int i, j;
      double len;
      if (!(ss >> i >> j >> len)) fail("bad edge line");
      b.add_edge(i, j, len);
    } else if (tag == "b") {
      int id;
      double s;
      if (!(ss >> id >> s)) fail("bad boundary line");
      loop_entries.push_back({id, s});
    } else {
      fail("unknown record '" + tag + "'");
    }
  }
  std::vector<int> loop;
  loop.reserve(loop_entries.size());
  for (auto& [id, s] : loop_entries) loop.push_back(id);
  b.set_boundary_loop(loop);
  IntrinsicMesh mesh = b.finalize();
  for (size_t i = 0; i < loop_entries.size(); ++i) {
    if (std::fabs(loop_entries[i].second - mesh.boundary_params()[i]) > 1e-9)
      throw std::invalid_argument(path + ": boundary arc-length parameters do not match edge lengths");
  }
  return mesh;
}

CsvWriter::CsvWriter(const std::string& path) {
  f_ = std::fopen(path.c_str(), "w");
  if (!f_) throw std::runtime_error("cannot open for writing: " + path);
}

CsvWriter::~CsvWriter() {
  if (f_) std::fclose(f_);
}

void CsvWriter::cell(const std::string& text) {
  if (row_started_) std::fputc(',', f_);
  std::fwrite(text.data(), 1, text.size(), f_);
  row_started_ = true;
}

void CsvWriter::cell(double value) { cell(format_g17(value)); }

void CsvWriter::end_row() {
  std::fputc('\n', f_);
  row_started_ = false;
}

}  // namespace ghlab
