#pragma once

#include <string>
#include <vector>

#include "ghlab/mesh.hpp"

namespace ghlab {

// Shortest decimal form that round-trips a double (17 significant digits).
std::string format_g17(double x);

// Text mesh format, one object per line:
//   irmesh 1
//   v <id> [x y]
//   t <i> <j> <k>
//   e <i> <j> <length>
//   b <id> <arclen>          (boundary loop in cyclic order)
// Numbers are written with 17 significant digits and parse back bit-exactly.
void write_mesh(const IntrinsicMesh& mesh, const std::string& path);
IntrinsicMesh read_mesh(const std::string& path);

// Minimal CSV writer: every cell is either preformatted text or a double
// rendered with format_g17. Rows are '\n'-terminated; cells comma-joined.
class CsvWriter {
 public:
  explicit CsvWriter(const std::string& path);
  ~CsvWriter();
  CsvWriter(const CsvWriter&) = delete;
  CsvWriter& operator=(const CsvWriter&) = delete;
  void cell(const std::string& text);
  void cell(double value);
  void end_row();

 private:
  std::FILE* f_ = nullptr;
  bool row_started_ = false;
};

}  // namespace ghlab
