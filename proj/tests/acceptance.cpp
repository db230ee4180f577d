// Production-scale acceptance gauntlet: eight checks, one PASS/FAIL line
// each, every tolerance pinned in the code below. Exit code is the number
// of failed checks. Heavy artifacts (the reference disk lab, the graft
// scenarios) are built once and shared.
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "ghlab/boundary.hpp"
#include "ghlab/embedding.hpp"
#include "ghlab/gh.hpp"
#include "ghlab/integral.hpp"
#include "ghlab/pipeline.hpp"
#include "ghlab/scenario.hpp"

namespace {

using namespace ghlab;

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
  }
};

std::string fmt(const char* f, ...) {
  char buf[768];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

int failures = 0;

void criterion(int id, const char* name, bool pass, const std::string& detail) {
  std::printf("criterion %d (%s): %s  [%s]\n", id, name, pass ? "PASS" : "FAIL",
              detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

// Worst gradient defect over 100 seeded sample pairs with separation >= eta.
double worst_gradient_defect(const IntrinsicMesh& mesh, const BoundaryFieldSet& fields,
                             double eta) {
  const BoundaryDistanceData bd = boundary_distance_matrix(fields);
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<int> pick(0, bd.size() - 1);
  double worst = 0.0;
  int collected = 0;
  while (collected < 100) {
    const int i = pick(rng), j = pick(rng);
    if (i == j || bd.sampling.separation(i, j) < eta) continue;
    const GradientCheck check =
        boundary_gradient_check(mesh, bd, i, j, eta, &fields.fields[j]);
    if (check.skipped) continue;
    worst = std::max(worst, check.defect);
    ++collected;
  }
  return worst;
}

double worst_speed_deviation(const std::vector<double>& factors) {
  double worst = 0.0;
  for (double f : factors) worst = std::max(worst, std::fabs(f - 1.0));
  return worst;
}

}  // namespace

int main() {
  // ---- Reference disk lab: h = 0.02, m = 128, dense shortcuts. The work
  // here *is* criterion 1; later criteria reuse the artifacts. ----
  Timer lab_timer;
  ScenarioParams euclid_params;
  euclid_params.shortcut_hops = 16;
  const Scenario euclid = make_scenario(ScenarioKind::euclidean, euclid_params, 0.02);
  const BoundaryFieldSet efields = boundary_field_set(euclid.mesh, 128);
  const BoundaryDistanceData ebd = boundary_distance_matrix(efields);
  const BoundaryDistanceData emodel = model_boundary_matrix(euclid.mesh, 128);
  const BoundaryCorrespondence etarget =
      arc_length_correspondence(ebd.sampling, euclid.reference);
  const EmbeddingMap emap = build_embedding(efields, etarget);
  std::vector<Vec2> net = euclid.reference.interior_grid(0.01);
  {
    const std::vector<Vec2> rim = euclid.reference.boundary_grid(0.01);
    net.insert(net.end(), rim.begin(), rim.end());
  }
  const ApproximationCertificate ecert =
      certify_approximation(euclid.mesh, emap.coords, net, 0.01, 42);
  const double lab_seconds = lab_timer.seconds();

  // ---- 1: boundary matrix vs exact chords, coordinates vs identity, GH. ----
  {
    double chord_rel = 0.0;
    for (int i = 0; i < ebd.size(); ++i)
      for (int j = i + 1; j < ebd.size(); ++j)
        chord_rel = std::max(chord_rel,
                             std::fabs(ebd.at(i, j) - emodel.at(i, j)) / emodel.at(i, j));
    double phi_err = 0.0;
    for (int v = 0; v < euclid.mesh.vertex_count(); ++v)
      phi_err = std::max(phi_err, norm(emap.coords[v] - euclid.mesh.coord(v)));
    const bool pass = chord_rel <= 0.02 && phi_err <= 0.05 &&
                      ecert.gh_upper <= 0.12 && lab_seconds <= 60.0;
    criterion(1, "euclidean fidelity", pass,
              fmt("bd vs chord rel %.4f <= 0.02, max|phi-x| %.4f <= 0.05, "
                  "gh_upper %.4f <= 0.12, %.1fs <= 60s",
                  chord_rel, phi_err, ecert.gh_upper, lab_seconds));
  }

  // ---- 2: Santalo quadrature against known areas. ----
  ScenarioParams bump_params;
  bump_params.shortcut_hops = 16;
  bump_params.bump_amplitude = 0.05;
  Timer t2;
  const SantaloEstimate disk_est = santalo_volume(*euclid.field, 256, 128, 0.005);
  const Scenario bump = make_scenario(ScenarioKind::conformal_bump, bump_params, 0.02);
  const SantaloEstimate bump_est = santalo_volume(*bump.field, 256, 128, 0.005);
  {
    const double disk_rel = std::fabs(disk_est.volume - kPi) / kPi;
    const double mesh_area = bump.mesh.total_area();
    const double bump_rel = std::fabs(bump_est.volume - mesh_area) / mesh_area;
    const double seconds = t2.seconds();
    const bool pass = disk_rel <= 0.01 && bump_rel <= 0.02 && seconds <= 60.0;
    criterion(2, "santalo exactness", pass,
              fmt("disk rel %.2e <= 1e-2, bump vs mesh area rel %.2e <= 2e-2, "
                  "%.1fs <= 60s",
                  disk_rel, bump_rel, seconds));
  }

  // ---- 3: bump family trend — deviations grow with the bump, the GH bound
  // does not improve when the bump shrinks. ----
  {
    Timer t3;
    const double amplitudes[4] = {0.01, 0.02, 0.05, 0.1};
    double d1[4], gh[4], floor = 0.0;
    for (int k = 0; k < 4; ++k) {
      PipelineConfig config = default_config(ScenarioKind::conformal_bump);
      config.params.bump_amplitude = amplitudes[k];
      const StabilityReport report = run_pipeline(config);
      d1[k] = report.delta1;
      gh[k] = report.gh_upper;
      floor = report.floor_metrication;
    }
    const bool increasing = d1[0] < d1[1] && d1[1] < d1[2] && d1[2] < d1[3];
    const bool monotone = gh[0] <= gh[1] + floor && gh[1] <= gh[2] + floor &&
                          gh[2] <= gh[3] + floor;
    const bool close = gh[0] <= ecert.gh_upper + 3.0 * d1[0] + floor;
    const double seconds = t3.seconds();
    const bool pass = increasing && monotone && close && seconds <= 300.0;
    criterion(3, "stability trend", pass,
              fmt("delta1 %.4f < %.4f < %.4f < %.4f, gh_upper %.4f/%.4f/%.4f/%.4f "
                  "non-increasing downward (floor %.3f), gh(0.01) %.4f <= %.4f, "
                  "%.0fs <= 300s",
                  d1[0], d1[1], d1[2], d1[3], gh[0], gh[1], gh[2], gh[3], floor,
                  gh[0], ecert.gh_upper + 3.0 * d1[0] + floor, seconds));
  }

  // ---- 4: graft counterexamples — each breaks exactly the predicted
  // hypothesis while the boundary data stays close. ----
  ScenarioParams cyl_params;
  cyl_params.graft_radius = 0.05;
  cyl_params.tube_length = 3.0;
  Timer t4;
  const Scenario cylinder =
      make_scenario(ScenarioKind::cylinder_graft, cyl_params, 0.02);
  {
    // The collar-area hypothesis needs delta = 0.15 here: a 0.05-radius tube
    // of length 3 alone adds ~0.93 to the collar complement, overrunning the
    // delta = 0.1 allowance regardless of resolution.
    const AssumptionAudit cyl_audit = audit_assumptions(cylinder, 0.15, 1.0, 128);
    const double cyl_lower = gh_lower_bound_diameter(
        graph_diameter_estimate(cylinder.mesh), cylinder.reference.diameter());

    ScenarioParams sph_params;
    sph_params.graft_radius = 0.05;
    sph_params.sphere_radius = 3.0;
    const Scenario sphere =
        make_scenario(ScenarioKind::sphere_graft, sph_params, 0.02);
    const AssumptionAudit sph_audit = audit_assumptions(sphere, 0.1, 1.0, 128);
    const double sph_lower = gh_lower_bound_diameter(
        graph_diameter_estimate(sphere.mesh), sphere.reference.diameter());

    const bool cyl_pattern = cyl_audit.cond_boundary && cyl_audit.cond_collar &&
                             !cyl_audit.cond_isoembolic;
    const bool sph_pattern = sph_audit.cond_boundary && !sph_audit.cond_collar &&
                             sph_audit.cond_isoembolic;
    const bool d0_ok = cyl_audit.delta0 <= 0.2 && sph_audit.delta0 <= 0.2;
    const bool lower_ok = cyl_lower >= 0.9 && sph_lower >= 2.5;
    const double seconds = t4.seconds();
    const bool pass = cyl_pattern && sph_pattern && d0_ok && lower_ok &&
                      seconds <= 180.0;
    criterion(4, "graft counterexamples", pass,
              fmt("cylinder (%d,%d,%d) want (1,1,0), sphere (%d,%d,%d) want "
                  "(1,0,1), delta0 %.4f/%.4f <= 0.2, gh_lower %.2f >= 0.9 and "
                  "%.2f >= 2.5, %.0fs <= 180s",
                  cyl_audit.cond_boundary ? 1 : 0, cyl_audit.cond_collar ? 1 : 0,
                  cyl_audit.cond_isoembolic ? 1 : 0, sph_audit.cond_boundary ? 1 : 0,
                  sph_audit.cond_collar ? 1 : 0, sph_audit.cond_isoembolic ? 1 : 0,
                  cyl_audit.delta0, sph_audit.delta0, cyl_lower, sph_lower, seconds));
  }

  // ---- 5: first-variation identity on sampled pairs, and its behavior
  // under boundary refinement. ----
  {
    const double defect64 =
        worst_gradient_defect(euclid.mesh, boundary_field_set(euclid.mesh, 64), 0.1);
    const double defect128 = worst_gradient_defect(euclid.mesh, efields, 0.1);
    const double defect256 =
        worst_gradient_defect(euclid.mesh, boundary_field_set(euclid.mesh, 256), 0.1);
    const bool small =
        defect64 <= 0.02 && defect128 <= 0.02 && defect256 <= 0.02;
    const bool monotone = defect64 >= defect128 && defect128 >= defect256;
    criterion(5, "boundary gradient identity", small && monotone,
              fmt("max defect %.4f/%.4f/%.4f <= 0.02 at m=64/128/256, "
                  "non-increasing: %s",
                  defect64, defect128, defect256, monotone ? "yes" : "no"));
  }

  // ---- 6: exact invariants, zero tolerance. ----
  {
    bool symmetric = true;
    for (int i = 0; i < efields.size() && symmetric; ++i)
      for (int j = i + 1; j < efields.size(); ++j)
        if (efields.fields[i].values[ebd.sampling.vertices[j]] !=
            efields.fields[j].values[ebd.sampling.vertices[i]]) {
          symmetric = false;
          break;
        }
    bool triangle = true;
    for (int i = 0; i < ebd.size() && triangle; ++i)
      for (int j = 0; j < ebd.size() && triangle; ++j)
        for (int k = 0; k < ebd.size(); ++k)
          if (ebd.at(i, k) > ebd.at(i, j) + ebd.at(j, k)) {
            triangle = false;
            break;
          }
    const double lip = std::max(lipschitz_defect(emap.phi1, euclid.mesh),
                                lipschitz_defect(emap.phi2, euclid.mesh));
    const double foot = std::max(verify_foot_identity(emap.phi1, efields),
                                 verify_foot_identity(emap.phi2, efields));
    const double delta0 = c0_deviation(ebd, emodel);
    const bool cert_identity =
        ecert.gh_upper == 2.0 * std::max(ecert.eps_distortion, ecert.eps_net);
    const bool pass = symmetric && triangle && lip <= 1e-12 &&
                      foot <= delta0 + 1e-9 && cert_identity;
    criterion(6, "exact invariants", pass,
              fmt("field symmetry %s, triangle inequality %s, lipschitz defect "
                  "%.1e <= 1e-12, foot identity %.2e <= delta0 + 1e-9 = %.2e, "
                  "certificate identity %s",
                  symmetric ? "exact" : "BROKEN", triangle ? "exact" : "BROKEN",
                  lip, foot, delta0 + 1e-9, cert_identity ? "exact" : "BROKEN"));
  }

  // ---- 7: directional-probe diagnostic separates the faithful disk from
  // the grafted finger. ----
  {
    const LiftDiagnostics disk_lift = lift_diagnostics(efields, etarget, emap);
    const BoundaryFieldSet cfields = boundary_field_set(cylinder.mesh, 128);
    const BoundaryCorrespondence ctarget =
        arc_length_correspondence(cfields.sampling, cylinder.reference);
    const EmbeddingMap cmap = build_embedding(cfields, ctarget);
    const LiftDiagnostics cyl_lift = lift_diagnostics(cfields, ctarget, cmap);
    const bool finger = cyl_lift.max_defect >= 1.0 &&
                        cyl_lift.argmax_vertex >= 0 &&
                        cylinder.grafted[cyl_lift.argmax_vertex] != 0;
    const bool pass = disk_lift.max_defect <= 0.1 && finger;
    criterion(7, "directional probes", pass,
              fmt("disk max defect %.4f <= 0.1 over 16 directions, cylinder max "
                  "defect %.2f >= 1 at %s vertex",
                  disk_lift.max_defect, cyl_lift.max_defect,
                  finger ? "a grafted" : "a NON-grafted"));
  }

  // ---- 8: boundary speed recovery from second differences. ----
  {
    const double euclid_dev = worst_speed_deviation(recover_boundary_metric(ebd));
    const BoundaryDistanceData bbd = boundary_distance_matrix(bump.mesh, 128);
    const double bump_dev = worst_speed_deviation(recover_boundary_metric(bbd));
    const bool pass = euclid_dev <= 0.02 && bump_dev <= 0.02;
    criterion(8, "boundary speed recovery", pass,
              fmt("max |factor - 1|: euclidean %.4f, bump %.4f, both <= 0.02",
                  euclid_dev, bump_dev));
  }

  if (failures == 0)
    std::printf("all 8 criteria passed\n");
  else
    std::printf("%d criterion(s) failed\n", failures);
  return failures;
}
