#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "ghlab/gh.hpp"
#include "ghlab/integral.hpp"
#include "ghlab/scenario.hpp"

namespace ghlab {

// One experiment: a scenario plus every discretization and audit dial.
struct PipelineConfig {
  ScenarioKind kind = ScenarioKind::euclidean;
  ScenarioParams params;
  double h = 0.02;
  int m = 128;            // boundary samples
  double eta = 0.1;       // C1-comparison separation
  double delta = 0.1;     // collar width / audit scale
  double lambda = 1.0;    // isoembolic constant
  int santalo_boundary = 256;
  int santalo_angle = 128;
  double santalo_step = 0.005;
  double net_spacing = 0.0;  // target-net spacing; 0 means h/2
  std::uint64_t seed = 42;
  int threads = 1;
};

// Scenario-appropriate dials: dense chart shortcuts on the smooth scenarios
// (where sub-percent metrication matters), sparse ones on the grafts.
PipelineConfig default_config(ScenarioKind kind);

// JSON config: {"scenario": {"kind", "params", "h"}, "m", "eta", "delta",
// "lambda", "santalo": {"boundary", "angle", "step"}, "net_spacing",
// "seed", "threads"}. Missing keys keep the scenario defaults.
PipelineConfig config_from_json(const std::string& text);

struct StabilityReport {
  PipelineConfig config;
  std::string scenario;
  std::string mesh_id;
  int vertex_count = 0;
  double delta1 = 0.0;  // C1 deviation from the flat model
  AssumptionAudit audit;  // delta0, collar area, the three condition flags
  std::optional<SantaloEstimate> santalo;
  std::string santalo_skip_reason;  // set when santalo is absent
  double distortion = 0.0;          // certificate eps_distortion
  double hausdorff_interior = 0.0;
  double hausdorff_boundary = 0.0;
  ApproximationCertificate certificate;
  double gh_upper = 0.0;
  double diameter = 0.0;  // graph diameter estimate of the scenario
  double gh_lower = 0.0;
  double floor_metrication = 0.0;  // shortcut-menu distance floor
  double floor_sampling = 0.0;     // half the boundary sample spacing
  double wall_clock_seconds = 0.0;
};

// Full chain: boundary data -> deviations -> audits -> Santalo (smooth
// scenarios) -> coordinate map -> GH certificate. Any stage failure is
// rethrown with the stage name prefixed.
StabilityReport run_pipeline(const PipelineConfig& config);

enum class ReportFormat { csv, json };

// Fixed 20-column CSV row (schema in the README) or the full JSON report.
// CSV output is byte-identical across runs with the same config and seed;
// wall-clock time appears only in JSON.
void emit_report(const StabilityReport& report, ReportFormat format,
                 const std::string& path);
std::string report_csv_header();
std::string report_csv_row(const StabilityReport& report);
std::string report_json(const StabilityReport& report);

}  // namespace ghlab
