#include "ghlab/pipeline.hpp"

#include <chrono>
#include <fstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ghlab/boundary.hpp"
#include "ghlab/embedding.hpp"
#include "ghlab/io.hpp"

namespace ghlab {

namespace {

// Rethrow with the failing stage named, keeping the exception type so the
// CLI exit codes (2 invalid input, 3 runtime failure) survive the wrapper.
template <typename F>
auto stage(const char* name, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(std::string(name) + ": " + e.what());
  } catch (const std::runtime_error& e) {
    throw std::runtime_error(std::string(name) + ": " + e.what());
  }
}

}  // namespace

PipelineConfig default_config(ScenarioKind kind) {
  PipelineConfig config;
  config.kind = kind;
  const bool smooth =
      kind == ScenarioKind::euclidean || kind == ScenarioKind::conformal_bump;
  config.params.shortcut_hops = smooth ? 16 : 4;
  return config;
}

PipelineConfig config_from_json(const std::string& text) {
  try {
    const nlohmann::json j = nlohmann::json::parse(text);
    if (!j.contains("scenario") || !j["scenario"].contains("kind"))
      throw std::invalid_argument("config needs scenario.kind");
    const nlohmann::json& sc = j["scenario"];
    PipelineConfig config =
        default_config(scenario_kind_from_string(sc["kind"].get<std::string>()));
    if (sc.contains("params")) {
      const nlohmann::json& p = sc["params"];
      ScenarioParams& sp = config.params;
      sp.bump_amplitude = p.value("bump_amplitude", sp.bump_amplitude);
      sp.bump_width = p.value("bump_width", sp.bump_width);
      if (p.contains("bump_center")) {
        sp.bump_center = {p["bump_center"].at(0).get<double>(),
                          p["bump_center"].at(1).get<double>()};
      }
      sp.graft_radius = p.value("graft_radius", sp.graft_radius);
      sp.tube_length = p.value("tube_length", sp.tube_length);
      sp.sphere_radius = p.value("sphere_radius", sp.sphere_radius);
      sp.graft_step = p.value("graft_step", sp.graft_step);
      sp.shortcut_hops = p.value("shortcut_hops", sp.shortcut_hops);
    }
    config.h = sc.value("h", config.h);
    config.m = j.value("m", config.m);
    config.eta = j.value("eta", config.eta);
    config.delta = j.value("delta", config.delta);
    config.lambda = j.value("lambda", config.lambda);
    if (j.contains("santalo")) {
      const nlohmann::json& s = j["santalo"];
      config.santalo_boundary = s.value("boundary", config.santalo_boundary);
      config.santalo_angle = s.value("angle", config.santalo_angle);
      config.santalo_step = s.value("step", config.santalo_step);
    }
    config.net_spacing = j.value("net_spacing", config.net_spacing);
    config.seed = j.value("seed", config.seed);
    config.threads = j.value("threads", config.threads);
    return config;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("config parse: ") + e.what());
  }
}

StabilityReport run_pipeline(const PipelineConfig& config) {
  const auto t0 = std::chrono::steady_clock::now();
  StabilityReport report;
  report.config = config;

  const Scenario s = stage("scenario", [&] {
    return make_scenario(config.kind, config.params, config.h);
  });
  report.scenario = s.name;
  report.mesh_id = s.mesh.id();
  report.vertex_count = s.mesh.vertex_count();

  const BoundaryFieldSet fields = stage("boundary sweep", [&] {
    return boundary_field_set(s.mesh, config.m, config.threads);
  });
  const BoundaryDistanceData bd =
      stage("boundary matrix", [&] { return boundary_distance_matrix(fields); });
  const BoundaryDistanceData model =
      stage("flat model", [&] { return model_boundary_matrix(s.mesh, config.m); });
  report.delta1 =
      stage("c1 comparison", [&] { return c1_deviation(bd, model, config.eta); });
  report.audit = stage("assumption audit", [&] {
    return audit_assumptions(s, bd, config.delta, config.lambda, config.threads);
  });

  if (s.field) {
    report.santalo = stage("santalo", [&] {
      return santalo_volume(*s.field, config.santalo_boundary, config.santalo_angle,
                            config.santalo_step, config.threads);
    });
  } else {
    report.santalo_skip_reason =
        "grafted surface has no conformal chart for geodesic tracing";
  }

  const BoundaryCorrespondence target = stage("correspondence", [&] {
    return arc_length_correspondence(bd.sampling, s.reference);
  });
  const EmbeddingMap map =
      stage("embedding", [&] { return build_embedding(fields, target); });

  const double spacing = config.net_spacing > 0.0 ? config.net_spacing : config.h / 2.0;
  const ImageHausdorff image = stage("image comparison", [&] {
    return image_hausdorff(map, s.mesh, s.reference, spacing);
  });
  report.hausdorff_interior = image.interior;
  report.hausdorff_boundary = image.boundary;

  report.certificate = stage("certificate", [&] {
    std::vector<Vec2> net = s.reference.interior_grid(spacing);
    const std::vector<Vec2> rim = s.reference.boundary_grid(spacing);
    net.insert(net.end(), rim.begin(), rim.end());
    return certify_approximation(s.mesh, map.coords, net, spacing, config.seed,
                                 config.threads);
  });
  report.distortion = report.certificate.eps_distortion;
  report.gh_upper = report.certificate.gh_upper;

  report.diameter =
      stage("diameter", [&] { return graph_diameter_estimate(s.mesh); });
  report.gh_lower = gh_lower_bound_diameter(report.diameter, s.reference.diameter());

  report.floor_metrication = 0.015 * s.reference.diameter() + 0.5 * config.h;
  report.floor_sampling = bd.sampling.mean_spacing() / 2.0;

  report.wall_clock_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

std::string report_csv_header() {
  return "scenario,h,m,delta,lambda,eta,delta0,delta1,santalo_volume,collar_area,"
         "cond1,cond2,cond3,distortion,hausdorff_interior,hausdorff_boundary,"
         "gh_upper,gh_lower,floor_metrication,floor_sampling";
}

std::string report_csv_row(const StabilityReport& r) {
  std::string row = r.scenario;
  const auto num = [&](double x) { row += ',' + format_g17(x); };
  num(r.config.h);
  row += ',' + std::to_string(r.config.m);
  num(r.config.delta);
  num(r.config.lambda);
  num(r.config.eta);
  num(r.audit.delta0);
  num(r.delta1);
  if (r.santalo)
    num(r.santalo->volume);
  else
    row += ',';  // no conformal chart: the cell stays empty
  num(r.audit.collar_area);
  row += r.audit.cond_boundary ? ",1" : ",0";
  row += r.audit.cond_collar ? ",1" : ",0";
  row += r.audit.cond_isoembolic ? ",1" : ",0";
  num(r.distortion);
  num(r.hausdorff_interior);
  num(r.hausdorff_boundary);
  num(r.gh_upper);
  num(r.gh_lower);
  num(r.floor_metrication);
  num(r.floor_sampling);
  return row;
}

std::string report_json(const StabilityReport& r) {
  nlohmann::json j;
  j["scenario"] = r.scenario;
  j["mesh_id"] = r.mesh_id;
  j["vertex_count"] = r.vertex_count;
  j["config"] = {{"kind", to_string(r.config.kind)},
                 {"h", r.config.h},
                 {"m", r.config.m},
                 {"eta", r.config.eta},
                 {"delta", r.config.delta},
                 {"lambda", r.config.lambda},
                 {"santalo_boundary", r.config.santalo_boundary},
                 {"santalo_angle", r.config.santalo_angle},
                 {"santalo_step", r.config.santalo_step},
                 {"net_spacing", r.config.net_spacing},
                 {"seed", r.config.seed},
                 {"threads", r.config.threads},
                 {"shortcut_hops", r.config.params.shortcut_hops}};
  j["delta1"] = r.delta1;
  j["audit"] = {{"delta", r.audit.delta},
                {"lambda", r.audit.lambda},
                {"m", r.audit.m},
                {"delta0", r.audit.delta0},
                {"collar_area", r.audit.collar_area},
                {"model_area", r.audit.model_area},
                {"cond_boundary", r.audit.cond_boundary},
                {"cond_collar", r.audit.cond_collar},
                {"cond_isoembolic", r.audit.cond_isoembolic},
                {"isoembolic_centers", r.audit.isoembolic.centers_checked},
                {"isoembolic_balls", r.audit.isoembolic.balls_checked},
                {"isoembolic_violations", r.audit.isoembolic.violations.size()}};
  if (r.santalo) {
    j["santalo"] = {{"volume", r.santalo->volume},
                    {"boundary_count", r.santalo->boundary_count},
                    {"angle_count", r.santalo->angle_count},
                    {"trapped", r.santalo->trapped},
                    {"trapped_fraction", r.santalo->trapped_fraction},
                    {"lower_bound_only", r.santalo->lower_bound_only}};
  } else {
    j["santalo"] = nullptr;
    j["santalo_skip_reason"] = r.santalo_skip_reason;
  }
  j["distortion"] = r.distortion;
  j["hausdorff_interior"] = r.hausdorff_interior;
  j["hausdorff_boundary"] = r.hausdorff_boundary;
  j["certificate"] = {{"eps_distortion", r.certificate.eps_distortion},
                      {"eps_net", r.certificate.eps_net},
                      {"net_slack", r.certificate.net_slack},
                      {"gh_upper", r.certificate.gh_upper},
                      {"pair_count", r.certificate.pair_count},
                      {"seed", r.certificate.seed},
                      {"all_pairs", r.certificate.all_pairs}};
  j["gh_upper"] = r.gh_upper;
  j["gh_lower"] = r.gh_lower;
  j["diameter"] = r.diameter;
  j["floor_metrication"] = r.floor_metrication;
  j["floor_sampling"] = r.floor_sampling;
  j["wall_clock_seconds"] = r.wall_clock_seconds;
  return j.dump(2);
}

void emit_report(const StabilityReport& report, ReportFormat format,
                 const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path);
  if (format == ReportFormat::csv)
    out << report_csv_header() << '\n' << report_csv_row(report) << '\n';
  else
    out << report_json(report) << '\n';
  if (!out.flush()) throw std::runtime_error("write failed: " + path);
}

}  // namespace ghlab
