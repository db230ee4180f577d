#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ghlab/boundary.hpp"
#include "ghlab/integral.hpp"
#include "ghlab/mesh.hpp"
#include "ghlab/metric_field.hpp"

namespace ghlab {

// The four test geometries: the flat unit disk, a conformal perturbation of
// it, and the two surgery counterexamples that keep the boundary data close
// while blowing up the interior.
enum class ScenarioKind { euclidean, conformal_bump, cylinder_graft, sphere_graft };

std::string to_string(ScenarioKind kind);
ScenarioKind scenario_kind_from_string(const std::string& name);

struct ScenarioParams {
  double bump_amplitude = 0.05;  // conformal_bump: u peak (|t| <= 0.2)
  double bump_width = 0.3;
  Vec2 bump_center{0.0, 0.0};
  double graft_radius = 0.05;  // grafts: neck radius (0 < r < 0.2)
  double tube_length = 3.0;    // cylinder_graft: L > 0
  double sphere_radius = 3.0;  // sphere_graft: R > 1
  double graft_step = 0.12;    // edge scale on the grafted sphere
  int shortcut_hops = 4;       // chart shortcut radius
};

struct Scenario {
  ScenarioKind kind = ScenarioKind::euclidean;
  std::string name;
  ScenarioParams params;
  double h = 0.02;
  IntrinsicMesh mesh;
  ConvexDomain reference = ConvexDomain::disk(1.0);
  // Engaged on smooth scenarios only; grafts have no global chart.
  std::optional<MetricField> field;
  std::vector<char> grafted;  // 1 on vertices the surgery added

  bool has_graft() const {
    return kind == ScenarioKind::cylinder_graft || kind == ScenarioKind::sphere_graft;
  }
};

// Deterministic construction. Grafts remove the triangles inside the neck
// circle and stitch an intrinsic tube (polygonal prism + cone cap) or a
// sphere (latitude rings + pole fan) onto the rim ring; the seam stays
// piecewise-intrinsic, unsmoothed.
Scenario make_scenario(ScenarioKind kind, const ScenarioParams& params, double h);

// Boundary matrix of the flat reference disk on the same sampling: straight
// chords between the samples' chart coordinates.
BoundaryDistanceData model_boundary_matrix(const IntrinsicMesh& mesh, int m);

// The three hypotheses under which near-flat boundary data forces the
// surface itself near the disk, evaluated at (delta, lambda) with m boundary
// samples: boundary data delta-close to the model, collar complement no
// larger than vol(D) + delta, and no isoembolic violations.
struct AssumptionAudit {
  double delta = 0.0;
  double lambda = 0.0;
  int m = 0;
  double delta0 = 0.0;      // sup |bd - model chord|
  double collar_area = 0.0;  // area of { dist(., boundary) >= delta }
  double model_area = 0.0;   // vol(D)
  IsoembolicReport isoembolic;
  bool cond_boundary = false;
  bool cond_collar = false;
  bool cond_isoembolic = false;

  bool all_pass() const { return cond_boundary && cond_collar && cond_isoembolic; }
};

AssumptionAudit audit_assumptions(const Scenario& s, double delta, double lambda, int m,
                                  int threads = 1);
// Same, reusing an already-computed boundary matrix on s.mesh.
AssumptionAudit audit_assumptions(const Scenario& s, const BoundaryDistanceData& bd,
                                  double delta, double lambda, int threads = 1);

}  // namespace ghlab
