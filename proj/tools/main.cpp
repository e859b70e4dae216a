// Command line front end: sweep campaigns, counterexample replay, matrix
// classification and spectral radius queries.

#include <CLI11.hpp>

#include <iomanip>
#include <iostream>
#include <sstream>

#include "precondaor/harness.hpp"
#include "precondaor/matrix_market.hpp"
#include "precondaor/spectral.hpp"

namespace {

using namespace precondaor;

std::vector<double> parse_grid(const std::string& s) {
  // a:b:step inclusive grid
  double a = 0.0, b = 0.0, step = 0.0;
  char c1 = 0, c2 = 0;
  std::istringstream in(s);
  if (!(in >> a >> c1 >> b >> c2 >> step) || c1 != ':' || c2 != ':' || step <= 0.0)
    throw CLI::ValidationError("grid must have the form a:b:step with step > 0");
  std::vector<double> grid;
  for (double v = a; v <= b + 1e-12; v += step) grid.push_back(v);
  if (grid.empty()) throw CLI::ValidationError("grid is empty");
  return grid;
}

struct GenArgs {
  int n = 6;
  double density = 0.5;
  GenKind kind = GenKind::l_irreducible;
  std::uint64_t seed = 1;
};

GenArgs parse_gen(const std::string& s) {
  // n,density,kind,seed
  GenArgs g;
  std::string kind;
  char c = 0;
  std::istringstream in(s);
  if (!(in >> g.n >> c && c == ',')) throw CLI::ValidationError("--gen: bad n");
  if (!(in >> g.density >> c && c == ','))
    throw CLI::ValidationError("--gen: bad density");
  std::getline(in, kind, ',');
  g.kind = gen_kind_from(kind);
  if (!(in >> g.seed)) throw CLI::ValidationError("--gen: bad seed");
  return g;
}

int cmd_sweep(const std::string& matrix_file, const std::string& gen,
              const std::string& precond, const std::string& gamma_grid,
              const std::string& omega_grid, const std::string& theorems,
              const std::string& out, bool allow_extended, int count,
              double dominance, double mag) {
  ExperimentConfig cfg;
  cfg.matrix_file = matrix_file;
  if (!gen.empty()) {
    const GenArgs g = parse_gen(gen);
    cfg.n = g.n;
    cfg.density = g.density;
    cfg.kind = g.kind;
    cfg.seed = g.seed;
  }
  cfg.count = count;
  cfg.dominance = dominance;
  cfg.mag = mag;
  cfg.spec = parse_spec(precond);
  cfg.gamma_grid = parse_grid(gamma_grid);
  cfg.omega_grid = parse_grid(omega_grid);
  cfg.theorems.clear();
  std::istringstream ts(theorems);
  std::string tag;
  while (std::getline(ts, tag, ',')) cfg.theorems.push_back(theorem_kind_from(tag));
  cfg.out_path = out;
  cfg.allow_extended = allow_extended;

  const SweepSummary s = run_sweep(cfg);
  std::cout << "rows=" << s.rows << " confirmed=" << s.confirmed
            << " vacuous=" << s.vacuous << " refuted=" << s.refuted
            << " skipped=" << s.skipped << "\n";
  if (!out.empty()) std::cout << "csv written to " << out << "\n";
  return s.refuted == 0 ? 0 : 1;
}

int cmd_replay() {
  const ReplayReport rep = replay_counterexamples();
  for (const std::string& line : rep.lines) std::cout << line << "\n";
  std::cout << (rep.all_passed ? "replay: all checks passed"
                               : "replay: FAILURES present")
            << "\n";
  return rep.all_passed ? 0 : 1;
}

int cmd_classify(const std::string& matrix_file) {
  const Matrix a = read_matrix_market_file(matrix_file);
  const MatrixClassReport r = classify(a);
  std::cout << "order:           " << a.order() << "\n"
            << "z_matrix:        " << (r.is_z ? "yes" : "no") << "\n"
            << "l_matrix:        " << (r.is_l ? "yes" : "no") << "\n"
            << "irreducible:     " << (r.is_irreducible ? "yes" : "no") << "\n"
            << "nonsingular_m:   " << (r.is_nonsingular_m ? "yes" : "no") << "\n"
            << "monotone:        " << (r.is_monotone ? "yes" : "no") << "\n";
  return 0;
}

int cmd_radius(const std::string& matrix_file, double gamma, double omega,
               const std::string& precond) {
  Matrix a = read_matrix_market_file(matrix_file);
  const AorParams p(gamma, omega);
  if (p.extended_range)
    std::cout << "note: (gamma, omega) outside the standard range\n";

  std::cout << std::setprecision(15);
  if (precond.empty()) {
    const SpectralResult r = spectral_radius(aor_iteration_matrix(a, p));
    std::cout << "rho = " << r.rho << " (method "
              << (r.method == SpectralMethod::power ? "power" : "dense_eig")
              << ", iterations " << r.iterations << ")\n";
    return 0;
  }

  a = normalize_diag(a);
  const PreconditionerSpec spec = parse_spec(precond);
  const Matrix q = build_q(spec, a);
  const PreconditionedSystem sys = precondition(a, q);
  const double rho_base = spectral_radius(aor_iteration_matrix(a, p)).rho;
  const double rho_pre = spectral_radius(aor_iteration_matrix(sys.pa, p)).rho;
  const ComparisonBranch br = classify_branch(rho_base, rho_pre);
  std::cout << "rho_base = " << rho_base << "\n"
            << "rho_pre  = " << rho_pre << "\n"
            << "branch   = " << to_string(br.branch) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"AOR iteration with the P = I + Q preconditioner catalog"};
  app.require_subcommand(1);

  // sweep
  std::string matrix_file, gen, precond = "variant=q13 alpha=1";
  std::string gamma_grid = "0:1:0.25", omega_grid = "0.25:1:0.25";
  std::string theorems = "A", out;
  bool allow_extended = false;
  int count = 1;
  double dominance = 0.3, mag = 0.0;

  CLI::App* sweep = app.add_subcommand("sweep", "grid sweep with theorem verification");
  auto* mf = sweep->add_option("--matrix", matrix_file, "Matrix Market input file");
  sweep->add_option("--gen", gen, "n,density,kind,seed (kind: l, il, m, im)")
      ->excludes(mf);
  sweep->add_option("--precond", precond, "preconditioner spec text");
  sweep->add_option("--gamma-grid", gamma_grid, "a:b:step");
  sweep->add_option("--omega-grid", omega_grid, "a:b:step");
  sweep->add_option("--theorems", theorems, "comma list of A,B,C,D");
  sweep->add_option("--out", out, "CSV output path");
  sweep->add_flag("--allow-extended", allow_extended,
                  "permit grids outside 0<=gamma<=1, 0<omega<=1");
  sweep->add_option("--count", count, "number of generated instances");
  sweep->add_option("--dominance", dominance, "m-matrix row-sum margin in (0,1]");
  sweep->add_option("--mag", mag, "off-diagonal magnitude (0 = calibrated)");

  // replay
  CLI::App* replay = app.add_subcommand("replay", "replay the counterexamples");

  // classify
  std::string cls_matrix;
  CLI::App* cls = app.add_subcommand("classify", "matrix class report");
  cls->add_option("--matrix", cls_matrix, "Matrix Market input file")->required();

  // radius
  std::string rad_matrix, rad_precond;
  double rad_gamma = 1.0, rad_omega = 1.0;
  CLI::App* rad = app.add_subcommand("radius", "spectral radius of the iteration matrix");
  rad->add_option("--matrix", rad_matrix, "Matrix Market input file")->required();
  rad->add_option("--gamma", rad_gamma, "gamma")->required();
  rad->add_option("--omega", rad_omega, "omega")->required();
  rad->add_option("--precond", rad_precond, "preconditioner spec text");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sweep->parsed())
      return cmd_sweep(matrix_file, gen, precond, gamma_grid, omega_grid, theorems,
                       out, allow_extended, count, dominance, mag);
    if (replay->parsed()) return cmd_replay();
    if (cls->parsed()) return cmd_classify(cls_matrix);
    if (rad->parsed()) return cmd_radius(rad_matrix, rad_gamma, rad_omega, rad_precond);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
