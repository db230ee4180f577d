// Command-line laboratory: every pipeline component independently
// invocable, plus the full experiment and a parameter sweep. Artifacts go
// into --out as flat files; summaries go to stdout. Exit codes: 0 success,
// 2 invalid input, 3 numerical/runtime failure.
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ghlab/boundary.hpp"
#include "ghlab/embedding.hpp"
#include "ghlab/gh.hpp"
#include "ghlab/integral.hpp"
#include "ghlab/io.hpp"
#include "ghlab/pipeline.hpp"
#include "ghlab/scenario.hpp"

namespace {

using namespace ghlab;

// Dials shared by every subcommand: a config file or a named scenario,
// with individual overrides on top.
struct CommonCli {
  std::string config_path;
  std::string scenario = "euclidean";
  std::string out_dir = ".";
  double h = 0.0, eta = 0.0, delta = 0.0, lambda = 0.0;
  int m = 0, hops = 0, threads = 0;
  std::uint64_t seed = 0;

  CLI::Option* o_config = nullptr;
  CLI::Option* o_scenario = nullptr;
  CLI::Option* o_h = nullptr;
  CLI::Option* o_m = nullptr;
  CLI::Option* o_eta = nullptr;
  CLI::Option* o_delta = nullptr;
  CLI::Option* o_lambda = nullptr;
  CLI::Option* o_hops = nullptr;
  CLI::Option* o_seed = nullptr;
  CLI::Option* o_threads = nullptr;

  void attach(CLI::App* cmd) {
    cmd->set_help_flag("--help", "print help");  // frees -h for the mesh dial
    o_config = cmd->add_option("--config", config_path, "JSON config file")
                   ->check(CLI::ExistingFile);
    o_scenario = cmd->add_option(
        "--scenario", scenario,
        "euclidean|conformal_bump|cylinder_graft|sphere_graft");
    o_scenario->excludes(o_config);
    cmd->add_option("--out", out_dir, "output directory (created if missing)");
    o_h = cmd->add_option("--h", h, "mesh resolution");
    o_m = cmd->add_option("--m", m, "boundary sample count");
    o_eta = cmd->add_option("--eta", eta, "C1-comparison separation");
    o_delta = cmd->add_option("--delta", delta, "collar width / audit scale");
    o_lambda = cmd->add_option("--lambda", lambda, "isoembolic constant");
    o_hops = cmd->add_option("--hops", hops, "chart shortcut radius");
    o_seed = cmd->add_option("--seed", seed, "certificate sampling seed");
    o_threads = cmd->add_option("--threads", threads, "worker thread count");
  }

  PipelineConfig make() const {
    PipelineConfig config;
    if (o_config->count() > 0) {
      std::ifstream in(config_path);
      std::stringstream text;
      text << in.rdbuf();
      if (!in.good() && !in.eof())
        throw std::runtime_error("cannot read " + config_path);
      config = config_from_json(text.str());
    } else {
      config = default_config(scenario_kind_from_string(scenario));
    }
    if (o_h->count() > 0) config.h = h;
    if (o_m->count() > 0) config.m = m;
    if (o_eta->count() > 0) config.eta = eta;
    if (o_delta->count() > 0) config.delta = delta;
    if (o_lambda->count() > 0) config.lambda = lambda;
    if (o_hops->count() > 0) config.params.shortcut_hops = hops;
    if (o_seed->count() > 0) config.seed = seed;
    if (o_threads->count() > 0) config.threads = threads;
    return config;
  }

  std::string out_path(const std::string& file) const {
    std::filesystem::create_directories(out_dir);
    return (std::filesystem::path(out_dir) / file).string();
  }
};

Scenario build(const PipelineConfig& config) {
  return make_scenario(config.kind, config.params, config.h);
}

int run_mesh(const CommonCli& cli) {
  const PipelineConfig config = cli.make();
  const Scenario s = build(config);
  const std::string path = cli.out_path("mesh.txt");
  write_mesh(s.mesh, path);
  std::printf("%s: %d vertices, area %.6f -> %s\n", s.mesh.id().c_str(),
              s.mesh.vertex_count(), s.mesh.total_area(), path.c_str());
  return 0;
}

int run_bdmatrix(const CommonCli& cli) {
  const PipelineConfig config = cli.make();
  const Scenario s = build(config);
  const BoundaryDistanceData bd =
      boundary_distance_matrix(s.mesh, config.m, config.threads);
  const BoundaryDistanceData model = model_boundary_matrix(s.mesh, config.m);
  const std::string path = cli.out_path("bdmatrix.csv");
  write_boundary_matrix_csv(bd, path);
  std::printf("%d x %d boundary matrix, delta0 %.6f vs flat model -> %s\n",
              bd.size(), bd.size(), c0_deviation(bd, model), path.c_str());
  return 0;
}

int run_embed(const CommonCli& cli) {
  const PipelineConfig config = cli.make();
  const Scenario s = build(config);
  const BoundaryFieldSet fields =
      boundary_field_set(s.mesh, config.m, config.threads);
  const BoundaryCorrespondence target =
      arc_length_correspondence(fields.sampling, s.reference);
  const EmbeddingMap map = build_embedding(fields, target);
  const std::string path = cli.out_path("embedding.csv");
  write_embedding_csv(map, path);
  const double defect = std::max(lipschitz_defect(map.phi1, s.mesh),
                                 lipschitz_defect(map.phi2, s.mesh));
  std::printf("%d coordinates, worst 1-Lipschitz defect %.3g -> %s\n",
              static_cast<int>(map.coords.size()), defect, path.c_str());
  return 0;
}

int run_santalo(const CommonCli& cli, int boundary, int angle, double step,
                bool dump) {
  const PipelineConfig config = cli.make();
  const Scenario s = build(config);
  if (!s.field)
    throw std::invalid_argument(
        "santalo needs a conformal chart; grafted scenarios have none");
  const int mb = boundary > 0 ? boundary : config.santalo_boundary;
  const int ma = angle > 0 ? angle : config.santalo_angle;
  const double ds = step > 0.0 ? step : config.santalo_step;
  SantaloEstimate est;
  if (dump) {
    const std::string path = cli.out_path("rays.csv");
    est = santalo_volume_dump(*s.field, mb, ma, ds, path, config.threads);
    std::printf("per-ray dump -> %s\n", path.c_str());
  } else {
    est = santalo_volume(*s.field, mb, ma, ds, config.threads);
  }
  std::printf("volume %.9f (%d x %d rays, %lld trapped%s)\n", est.volume,
              est.boundary_count, est.angle_count, est.trapped,
              est.lower_bound_only ? ", lower bound only" : "");
  return 0;
}

int run_audit(const CommonCli& cli) {
  const PipelineConfig config = cli.make();
  const Scenario s = build(config);
  const AssumptionAudit audit = audit_assumptions(s, config.delta, config.lambda,
                                                  config.m, config.threads);
  std::printf("delta0 %.6f (<= %.3f: %s)\n", audit.delta0, audit.delta,
              audit.cond_boundary ? "pass" : "fail");
  std::printf("collar complement area %.6f (< %.6f: %s)\n", audit.collar_area,
              audit.model_area + audit.delta, audit.cond_collar ? "pass" : "fail");
  std::printf("isoembolic violations %d over %d balls (%s)\n",
              static_cast<int>(audit.isoembolic.violations.size()),
              audit.isoembolic.balls_checked,
              audit.cond_isoembolic ? "pass" : "fail");
  return 0;  // a failed hypothesis is a finding, not an error
}

int run_ghbound(const CommonCli& cli) {
  const PipelineConfig config = cli.make();
  const Scenario s = build(config);
  const BoundaryFieldSet fields =
      boundary_field_set(s.mesh, config.m, config.threads);
  const BoundaryCorrespondence target =
      arc_length_correspondence(fields.sampling, s.reference);
  const EmbeddingMap map = build_embedding(fields, target);
  const double spacing =
      config.net_spacing > 0.0 ? config.net_spacing : config.h / 2.0;
  std::vector<Vec2> net = s.reference.interior_grid(spacing);
  const std::vector<Vec2> rim = s.reference.boundary_grid(spacing);
  net.insert(net.end(), rim.begin(), rim.end());
  const ApproximationCertificate cert = certify_approximation(
      s.mesh, map.coords, net, spacing, config.seed, config.threads);
  const double diameter = graph_diameter_estimate(s.mesh);
  const double lower = gh_lower_bound_diameter(diameter, s.reference.diameter());
  const std::string path = cli.out_path("certificate.json");
  write_certificate_json(cert, path);
  std::printf("gh_upper %.6f (distortion %.6f, net %.6f), gh_lower %.6f -> %s\n",
              cert.gh_upper, cert.eps_distortion, cert.eps_net, lower,
              path.c_str());
  return 0;
}

int run_experiment(const CommonCli& cli, const std::string& format) {
  const PipelineConfig config = cli.make();
  const StabilityReport report = run_pipeline(config);
  const ReportFormat fmt =
      format == "json" ? ReportFormat::json : ReportFormat::csv;
  const std::string path =
      cli.out_path(fmt == ReportFormat::json ? "report.json" : "report.csv");
  emit_report(report, fmt, path);
  std::printf("%s: gh_upper %.6f, gh_lower %.6f, audits %d%d%d -> %s\n",
              report.scenario.c_str(), report.gh_upper, report.gh_lower,
              report.audit.cond_boundary ? 1 : 0, report.audit.cond_collar ? 1 : 0,
              report.audit.cond_isoembolic ? 1 : 0, path.c_str());
  return 0;
}

int run_sweep(const CommonCli& cli, const std::vector<double>& amplitudes) {
  const PipelineConfig base = cli.make();
  if (base.kind != ScenarioKind::conformal_bump)
    throw std::invalid_argument("sweep varies the bump amplitude; use "
                                "--scenario conformal_bump");
  const std::string path = cli.out_path("sweep.csv");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << report_csv_header() << '\n';
  for (double t : amplitudes) {
    PipelineConfig config = base;
    config.params.bump_amplitude = t;
    const StabilityReport report = run_pipeline(config);
    out << report_csv_row(report) << '\n';
    std::printf("t=%g: delta1 %.6f, gh_upper %.6f\n", t, report.delta1,
                report.gh_upper);
  }
  if (!out.flush()) throw std::runtime_error("write failed: " + path);
  std::printf("family -> %s\n", path.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"boundary-distance laboratory on discretized surfaces"};
  app.set_help_flag("--help", "print help");
  app.require_subcommand(1);

  CommonCli mesh_cli, bd_cli, embed_cli, sant_cli, audit_cli, gh_cli, exp_cli,
      sweep_cli;

  CLI::App* cmd_mesh = app.add_subcommand("mesh", "build a scenario mesh");
  mesh_cli.attach(cmd_mesh);

  CLI::App* cmd_bd =
      app.add_subcommand("bdmatrix", "boundary distance matrix vs flat model");
  bd_cli.attach(cmd_bd);

  CLI::App* cmd_embed =
      app.add_subcommand("embed", "distance-like coordinate map");
  embed_cli.attach(cmd_embed);

  CLI::App* cmd_sant =
      app.add_subcommand("santalo", "volume from boundary ray data");
  sant_cli.attach(cmd_sant);
  int sant_boundary = 0, sant_angle = 0;
  double sant_step = 0.0;
  bool sant_dump = false;
  cmd_sant->add_option("--boundary", sant_boundary, "boundary node count");
  cmd_sant->add_option("--angle", sant_angle, "angle node count");
  cmd_sant->add_option("--step", sant_step, "ray integration step");
  cmd_sant->add_flag("--dump", sant_dump, "write per-ray CSV");

  CLI::App* cmd_audit =
      app.add_subcommand("audit", "disk-closeness hypothesis audit");
  audit_cli.attach(cmd_audit);

  CLI::App* cmd_gh =
      app.add_subcommand("ghbound", "Gromov-Hausdorff certificate");
  gh_cli.attach(cmd_gh);

  CLI::App* cmd_exp =
      app.add_subcommand("experiment", "full pipeline, one report");
  exp_cli.attach(cmd_exp);
  std::string exp_format = "csv";
  cmd_exp->add_option("--format", exp_format, "report format")
      ->check(CLI::IsMember({"csv", "json"}));

  CLI::App* cmd_sweep =
      app.add_subcommand("sweep", "bump-amplitude family, one CSV");
  sweep_cli.attach(cmd_sweep);
  std::vector<double> amplitudes{0.01, 0.02, 0.05, 0.1};
  cmd_sweep->add_option("--amplitudes", amplitudes, "bump peak values");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (cmd_mesh->parsed()) return run_mesh(mesh_cli);
    if (cmd_bd->parsed()) return run_bdmatrix(bd_cli);
    if (cmd_embed->parsed()) return run_embed(embed_cli);
    if (cmd_sant->parsed())
      return run_santalo(sant_cli, sant_boundary, sant_angle, sant_step,
                         sant_dump);
    if (cmd_audit->parsed()) return run_audit(audit_cli);
    if (cmd_gh->parsed()) return run_ghbound(gh_cli);
    if (cmd_exp->parsed()) return run_experiment(exp_cli, exp_format);
    if (cmd_sweep->parsed()) return run_sweep(sweep_cli, amplitudes);
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::runtime_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
  return 0;
}
