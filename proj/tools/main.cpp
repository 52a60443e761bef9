#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <Eigen/Dense>

#include "gcpack/admissibility.hpp"
#include "gcpack/assembly.hpp"
#include "gcpack/cell_complex.hpp"
#include "gcpack/face_kernel.hpp"
#include "gcpack/io.hpp"
#include "gcpack/solver.hpp"
#include "gcpack/svg.hpp"

namespace {

// 0 ok/admissible/converged; 1 I/O, parse or validation; 2 not admissible;
// 3 admissibility inconclusive; 4 solve finished without converging.

gcpack::CellComplex load_complex(const std::string& file,
                                 gcpack::ProblemDocument& doc) {
  doc = gcpack::load_problem(file);
  gcpack::CellComplex complex(doc.complex_spec);
  if (!complex.valid()) {
    for (const auto& v : complex.violations())
      std::cerr << "invalid complex: " << v << "\n";
    throw std::runtime_error("problem file describes an invalid complex");
  }
  return complex;
}

gcpack::Targets required_targets(const gcpack::CellComplex& complex,
                                 const gcpack::ProblemDocument& doc) {
  if (!doc.has_targets)
    throw std::runtime_error("problem file has no 'targets'");
  return gcpack::Targets::from_map(complex, doc.targets);
}

// --k file wins; otherwise the problem's initial curvatures; otherwise all 1.
Eigen::VectorXd pick_curvatures(const gcpack::CellComplex& complex,
                                const gcpack::ProblemDocument& doc,
                                const std::string& k_file) {
  if (!k_file.empty())
    return gcpack::curvatures_from_map(complex,
                                       gcpack::load_curvature_map(k_file));
  return gcpack::curvatures_from_map(complex, doc.initial);
}

int run_check(const std::string& file, int trials, unsigned seed) {
  gcpack::ProblemDocument doc;
  gcpack::CellComplex complex = load_complex(file, doc);
  gcpack::Targets targets = required_targets(complex, doc);
  const auto report = gcpack::decide(complex, targets.L_hat, trials, seed);
  std::cout << gcpack::check_text(complex, report);
  switch (report.verdict) {
    case gcpack::Admissibility::Admissible:
      return 0;
    case gcpack::Admissibility::NotAdmissible:
      return 2;
    case gcpack::Admissibility::Inconclusive:
      return 3;
  }
  return 1;
}

struct SolveFlags {
  std::string file;
  std::string method = "newton";
  double p = 2.0;
  double dt = 0.1;
  double tol = 1e-8;
  int max_steps = 100000;
  std::string trace_file;
  int trace_every = 1;
  bool trace_state = false;
  std::string out_file;
  bool force = false;
  int trials = 200;
  unsigned seed = 12345u;
};

int run_solve(const SolveFlags& flags) {
  gcpack::ProblemDocument doc;
  gcpack::CellComplex complex = load_complex(flags.file, doc);
  gcpack::Targets targets = required_targets(complex, doc);

  gcpack::SolveConfig cfg;
  cfg.method = gcpack::parse_method(flags.method);
  cfg.p = flags.p;
  cfg.dt = flags.dt;
  cfg.tol = flags.tol;
  cfg.max_steps = flags.max_steps;
  cfg.trace_every = flags.trace_every;
  cfg.record_state = flags.trace_state;
  cfg.force = flags.force;
  cfg.precheck_trials = flags.trials;
  cfg.precheck_seed = flags.seed;

  Eigen::VectorXd s0;
  const Eigen::VectorXd* s0_ptr = nullptr;
  if (doc.has_initial) {
    s0 = gcpack::PackingState::from_curvatures(
             gcpack::curvatures_from_map(complex, doc.initial))
             .s;
    s0_ptr = &s0;
  }

  gcpack::SolveResult result;
  try {
    result = gcpack::solve(complex, targets, cfg, s0_ptr);
  } catch (const gcpack::InadmissibleTargets& e) {
    std::cerr << "error: " << e.what() << "\n";
    std::cerr << gcpack::check_text(complex, e.report());
    return 2;
  }
  if (result.precheck.verdict == gcpack::Admissibility::Inconclusive)
    std::cerr << "warning: admissibility screen inconclusive; proceeding\n";

  const double res =
      (result.report.L - targets.L_hat).lpNorm<Eigen::Infinity>();
  std::cout << "status: " << gcpack::status_name(result.status) << "\n";
  std::cout << "steps: " << result.steps << "\n";
  std::cout << "residual_inf: " << gcpack::format_double(res) << "\n";

  if (!flags.out_file.empty())
    gcpack::write_file(flags.out_file,
                       gcpack::solve_json(complex, result, cfg.method));
  if (!flags.trace_file.empty())
    gcpack::write_file(flags.trace_file,
                       gcpack::trace_csv(result.trace, complex.vertex_ids(),
                                         flags.trace_state));
  return result.status == gcpack::SolveStatus::Converged ? 0 : 4;
}

int run_eval(const std::string& file, const std::string& k_file) {
  gcpack::ProblemDocument doc;
  gcpack::CellComplex complex = load_complex(file, doc);
  const gcpack::PackingState state = gcpack::PackingState::from_curvatures(
      pick_curvatures(complex, doc, k_file));
  const gcpack::CurvatureReport report = gcpack::full_report(complex, state);
  std::cout << gcpack::eval_json(complex, report);
  return 0;
}

int run_render(const std::string& file, const std::string& k_file, int face,
               const std::string& out_file) {
  gcpack::ProblemDocument doc;
  gcpack::CellComplex complex = load_complex(file, doc);
  if (face < 0 || face >= complex.face_count())
    throw std::runtime_error("face index " + std::to_string(face) +
                             " out of range (complex has " +
                             std::to_string(complex.face_count()) + " faces)");
  const Eigen::VectorXd k = pick_curvatures(complex, doc, k_file);

  gcpack::FaceConfig cfg;
  for (int v : complex.face_vertices(face)) cfg.k.push_back(k[v]);
  cfg.alpha = complex.face_alpha(face);

  const gcpack::FacePacking packing = gcpack::face_solve(cfg);
  const std::string svg = gcpack::face_svg(gcpack::face_layout(cfg, packing));
  if (out_file.empty())
    std::cout << svg;
  else
    gcpack::write_file(out_file, svg);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hyperbolic circle packings with cone singularities on "
               "polygonal complexes"};
  app.require_subcommand(1);

  std::string check_file;
  int check_trials = 200;
  unsigned check_seed = 12345u;
  CLI::App* check_cmd =
      app.add_subcommand("check", "decide whether the targets are admissible");
  check_cmd->add_option("file", check_file, "problem JSON file")->required();
  check_cmd->add_option("--trials", check_trials,
                        "random subsets when the complex is too large to "
                        "enumerate");
  check_cmd->add_option("--seed", check_seed, "sampling seed");

  SolveFlags sf;
  CLI::App* solve_cmd =
      app.add_subcommand("solve", "find curvatures realizing the targets");
  solve_cmd->add_option("file", sf.file, "problem JSON file")->required();
  solve_cmd->add_option("--method", sf.method, "calabi, newton or gradient");
  solve_cmd->add_option("--p", sf.p, "p-Laplacian exponent (calabi)");
  solve_cmd->add_option("--dt", sf.dt, "initial flow step");
  solve_cmd->add_option("--tol", sf.tol, "residual sup-norm threshold");
  solve_cmd->add_option("--max-steps", sf.max_steps, "step budget");
  solve_cmd->add_option("--trace", sf.trace_file, "write a CSV trace here");
  solve_cmd->add_option("--trace-every", sf.trace_every,
                        "record every k-th step");
  solve_cmd->add_flag("--trace-state", sf.trace_state,
                      "include log-curvature columns in the trace");
  solve_cmd->add_option("--out", sf.out_file, "write the solution JSON here");
  solve_cmd->add_flag("--force", sf.force,
                      "run even if the targets fail the admissibility gate");
  solve_cmd->add_option("--trials", sf.trials, "admissibility screen budget");
  solve_cmd->add_option("--seed", sf.seed, "admissibility screen seed");

  std::string eval_file, eval_k;
  CLI::App* eval_cmd = app.add_subcommand(
      "eval", "curvatures, areas and jacobian condition at a state");
  eval_cmd->add_option("file", eval_file, "problem JSON file")->required();
  eval_cmd->add_option("--k", eval_k, "curvature JSON file");

  std::string render_file, render_k, render_out;
  int render_face = 0;
  CLI::App* render_cmd =
      app.add_subcommand("render", "draw one face in the Poincare disk");
  render_cmd->add_option("file", render_file, "problem JSON file")->required();
  render_cmd->add_option("--k", render_k, "curvature JSON file");
  render_cmd->add_option("--face", render_face, "face index (default 0)");
  render_cmd->add_option("--out", render_out, "SVG output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (check_cmd->parsed()) return run_check(check_file, check_trials, check_seed);
    if (solve_cmd->parsed()) return run_solve(sf);
    if (eval_cmd->parsed()) return run_eval(eval_file, eval_k);
    if (render_cmd->parsed())
      return run_render(render_file, render_k, render_face, render_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
