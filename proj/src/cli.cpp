#include "osmot/cli.hpp"

#include "osmot/fixtures.hpp"
#include "osmot/mesh_io.hpp"
#include "osmot/report.hpp"
#include "osmot/smoother.hpp"
#include "osmot/svg.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>

namespace osmot {

namespace {

struct SmoothArgs {
  std::string input, output, report, svg_dir;
  int max_loops = 10;
  double qmin = 0.6, beta = 1.0, gamma = 3.0, rref = 1.0, eps = 1e-8, delta = 1e-6, eta = 0.05;
  SmootherKind kind = SmootherKind::Osmot;
  int svg_every = 0;
  bool reflag = false;
  bool no_early_exit = false;
};

int run_smooth(const SmoothArgs& a, std::ostream& out) {
  Mesh mesh = read_mesh(a.input);

  SmootherConfig cfg;
  cfg.i_max = a.max_loops;
  cfg.quality.q_min = a.qmin;
  cfg.quality.r_ref_default = a.rref;
  cfg.objective = {a.beta, a.gamma, a.rref};
  cfg.newton.eps = a.eps;
  cfg.newton.delta = a.delta;
  cfg.newton.eta = a.eta;
  cfg.kind = a.kind;
  cfg.reflag_each_loop = a.reflag;
  cfg.early_exit = !a.no_early_exit;

  LoopObserver observer;
  if (a.svg_every > 0) {
    std::filesystem::create_directories(a.svg_dir);
    observer = [&](const Mesh& m, const QualityReport& r) {
      if (r.loop % a.svg_every != 0) return;
      char name[32];
      std::snprintf(name, sizeof name, "loop_%04d.svg", r.loop);
      render_svg(m, (std::filesystem::path(a.svg_dir) / name).string());
    };
  }

  const RunReport run = smooth(mesh, cfg, observer);
  write_mesh(mesh, a.output);
  if (!a.report.empty()) {
    std::ofstream csv(a.report);
    if (!csv) throw MeshIoError("cannot open '" + a.report + "' for writing", 0);
    write_report_csv(csv, run.loops);
  }

  const auto& first = run.loops.front();
  const auto& last = run.loops.back();
  char buf[160];
  std::snprintf(buf, sizeof buf, "loops %d  relocations %d  min Q2 %.6f -> %.6f  inverted %d\n",
                static_cast<int>(run.loops.size()) - 1, run.relocations, first.min_q2, last.min_q2, last.inverted);
  out << buf;
  if (run.stopped_early) out << "stopped early: a loop moved no node\n";
  for (const auto& s : run.skipped) out << "skipped node " << s.node << " in loop " << s.loop << ": " << s.reason << '\n';
  return 0;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Optimization-based smoothing of planar triangle meshes"};
  app.require_subcommand(1);

  SmoothArgs sa;
  auto* smooth_cmd = app.add_subcommand("smooth", "Smooth a mesh file");
  smooth_cmd->add_option("--input", sa.input, "Input mesh")->required()->check(CLI::ExistingFile);
  smooth_cmd->add_option("--output", sa.output, "Output mesh")->required();
  smooth_cmd->add_option("--max-loops", sa.max_loops, "Global repetition loops")->check(CLI::NonNegativeNumber);
  smooth_cmd->add_option("--qmin", sa.qmin, "Minimal acceptable Q2")->check(CLI::Range(0.0, 1.0));
  smooth_cmd->add_option("--beta", sa.beta, "Size weighting exponent")->check(CLI::PositiveNumber);
  smooth_cmd->add_option("--gamma", sa.gamma, "Shape weighting exponent")->check(CLI::PositiveNumber);
  smooth_cmd->add_option("--rref", sa.rref, "Reference radius")->check(CLI::PositiveNumber);
  smooth_cmd->add_option("--eps", sa.eps, "Gradient tolerance")->check(CLI::PositiveNumber);
  smooth_cmd->add_option("--delta", sa.delta, "Hessian determinant tolerance")->check(CLI::PositiveNumber);
  smooth_cmd->add_option("--eta", sa.eta, "Angle criterion tolerance")->check(CLI::PositiveNumber);
  const std::map<std::string, SmootherKind> kinds{
      {"osmot", SmootherKind::Osmot}, {"laplacian", SmootherKind::LaplacianBaseline}, {"none", SmootherKind::None}};
  smooth_cmd->add_option("--smoother", sa.kind, "osmot, laplacian or none")->transform(CLI::CheckedTransformer(kinds));
  smooth_cmd->add_option("--report", sa.report, "Per-loop quality CSV");
  auto* every = smooth_cmd->add_option("--svg-every", sa.svg_every, "Write an SVG every K loops")->check(CLI::PositiveNumber);
  smooth_cmd->add_option("--svg-dir", sa.svg_dir, "Directory for SVG snapshots")->needs(every);
  every->needs(smooth_cmd->get_option("--svg-dir"));
  smooth_cmd->add_flag("--reflag", sa.reflag, "Recompute flagged nodes every loop");
  smooth_cmd->add_flag("--no-early-exit", sa.no_early_exit, "Always run all loops");

  std::string check_input;
  double check_qmin = 0.6, check_rref = 1.0;
  auto* check_cmd = app.add_subcommand("check", "Validate a mesh and print its quality");
  check_cmd->add_option("--input", check_input, "Input mesh")->required()->check(CLI::ExistingFile);
  check_cmd->add_option("--qmin", check_qmin, "Minimal acceptable Q2")->check(CLI::Range(0.0, 1.0));
  check_cmd->add_option("--rref", check_rref, "Reference radius")->check(CLI::PositiveNumber);

  std::string gen_kind, gen_output;
  std::uint64_t gen_seed = 1;
  double gen_distortion = 0.0;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a test fixture mesh");
  gen_cmd->add_option("--kind", gen_kind, "patch32, graded, horseshoe or indented")->required();
  gen_cmd->add_option("--seed", gen_seed, "Random seed");
  gen_cmd->add_option("--distortion", gen_distortion, "Distortion in [0, 1)");
  gen_cmd->add_option("--output", gen_output, "Output mesh")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*smooth_cmd) return run_smooth(sa, out);

    if (*check_cmd) {
      const Mesh mesh = read_mesh(check_input);
      QualityConfig q;
      q.q_min = check_qmin;
      q.r_ref_default = check_rref;
      out << "nodes " << mesh.num_nodes() << "  triangles " << mesh.num_triangles() << "  internal "
          << mesh.internal_nodes().size() << "  chains " << mesh.chains().size() << '\n';
      print_quality_report(out, quality_report(mesh, q, 0));
      return 0;
    }

    if (*gen_cmd) {
      const auto kind = parse_fixture_kind(gen_kind);
      if (!kind) {
        err << "unknown fixture kind '" << gen_kind << "'\n";
        return 2;
      }
      if (!(gen_distortion >= 0.0 && gen_distortion < 1.0)) {
        err << "--distortion must lie in [0, 1)\n";
        return 2;
      }
      write_mesh(generate_fixture(*kind, gen_seed, gen_distortion), gen_output);
      return 0;
    }
  } catch (const MeshIoError& e) {
    err << "error";
    if (e.line() > 0) err << " (line " << e.line() << ")";
    err << ": " << e.what() << '\n';
    return 1;
  } catch (const MeshError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

}  // namespace osmot
