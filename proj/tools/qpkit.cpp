#include <CLI11.hpp>

#include "qpkit/cli.hpp"

namespace {

void add_common(CLI::App* cmd, qpkit::RunConfig& cfg) {
  cmd->add_option("-o,--out", cfg.out_path, "Output file (default: stdout)");
  cmd->add_option("--format", cfg.format, "Output format: json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qpkit: quasi-periodic functions, torus actions and their parents"};
  app.require_subcommand(1);

  qpkit::RunConfig cfg;

  auto* ergodicity = app.add_subcommand("ergodicity", "Unique-ergodicity report for both actions");
  ergodicity->add_option("--matrix", cfg.matrix_path, "Frequency matrix JSON")->required();
  add_common(ergodicity, cfg);

  auto* weyl = app.add_subcommand("weyl", "Weyl averages A_T F(y) with closed-form factors");
  weyl->add_option("--matrix", cfg.matrix_path, "Frequency matrix JSON")->required();
  weyl->add_option("--parent", cfg.parent_path, "Parent spectrum JSON")->required();
  weyl->add_option("--T", cfg.T_list, "Averaging lengths")->delimiter(',');
  weyl->add_option("--y", cfg.y, "Base point on the torus")->delimiter(',');
  weyl->add_flag("--discrete", cfg.discrete, "Use the lattice average (Dirichlet kernels)");
  add_common(weyl, cfg);

  auto* orbit = app.add_subcommand("orbit", "Line-orbit samples on the torus (d = 1)");
  orbit->add_option("--matrix", cfg.matrix_path, "Frequency matrix JSON")->required();
  orbit
      ->add_option_function<std::string>(
          "--range",
          [&cfg](const std::string& s) {
            const auto colon = s.find(':');
            if (colon == std::string::npos)
              throw CLI::ValidationError("--range", "expected 'from:to'");
            cfg.range_from = std::stod(s.substr(0, colon));
            cfg.range_to = std::stod(s.substr(colon + 1));
          },
          "Parameter range 'from:to'")
      ->required();
  orbit->add_option("--samples", cfg.samples, "Sample count (>= 2)");
  orbit->add_option("--y", cfg.y, "Starting point")->delimiter(',');
  add_common(orbit, cfg);

  auto* lift = app.add_subcommand("lift", "Parent spectrum of a quasi-periodic polynomial");
  lift->add_option("--poly", cfg.poly_path, "Trig polynomial JSON")->required();
  add_common(lift, cfg);

  auto* project = app.add_subcommand("project", "Quasi-periodic polynomial of a parent spectrum");
  project->add_option("--parent", cfg.parent_path, "Parent spectrum JSON")->required();
  project->add_option("--matrix", cfg.matrix_path, "Frequency matrix JSON")->required();
  add_common(project, cfg);

  auto* norm = app.add_subcommand("norm", "Besicovitch, Wiener and sup norms");
  norm->add_option("--poly", cfg.poly_path, "Trig polynomial JSON")->required();
  norm->add_option("--q", cfg.q, "Norm exponent (>= 1)");
  norm->add_option("--grid", cfg.grid, "Quadrature grid per axis (0 = automatic)");
  add_common(norm, cfg);

  auto* invert = app.add_subcommand("invert", "Wiener-algebra inverse with certificate");
  invert->add_option("--poly", cfg.poly_path, "Trig polynomial JSON")->required();
  invert->add_option("--grid", cfg.grid, "Recovery grid per axis (0 = automatic)");
  invert->add_option("--tol", cfg.tol, "Coefficient tail cutoff");
  add_common(invert, cfg);

  auto* hy = app.add_subcommand("hy", "Hausdorff-Young inequality check");
  hy->add_option("--poly", cfg.poly_path, "Trig polynomial JSON")->required();
  hy->add_option("--q", cfg.q, "Exponent 1 <= q < infinity");
  hy->add_option("--grid", cfg.grid, "Quadrature grid per axis (0 = automatic)");
  add_common(hy, cfg);

  auto* regularity = app.add_subcommand("regularity", "Parent regularity verdict");
  regularity->add_option("--poly", cfg.poly_path, "Trig polynomial JSON")->required();
  regularity->add_option("--mode", cfg.mode, "holder or sobolev")
      ->check(CLI::IsMember({"holder", "sobolev"}));
  regularity->add_option("--r", cfg.r, "Holder: asserted derivative order");
  regularity->add_option("--eta", cfg.eta, "Holder: asserted exponent in (0,1)");
  regularity->add_option("--s", cfg.s, "Sobolev: smoothness parameter");
  regularity->add_option("--q", cfg.q, "Sobolev: integrability parameter");
  add_common(regularity, cfg);

  auto* meyer = app.add_subcommand("meyer", "Enumerate the golden cut-and-project band");
  meyer->add_option("--window", cfg.window, "Acceptance window 'lo:hi' (exact rationals)");
  meyer->add_option("--radius", cfg.radius, "Truncation radius on (m, n)");
  meyer->add_option("--emit", cfg.emit_path, "CSV output path");
  add_common(meyer, cfg);

  auto* pathology = app.add_subcommand("pathology",
                                       "Certificate series of the smooth/non-smooth example");
  pathology->add_option("--radius", cfg.radius, "Band truncation radius");
  pathology->add_option("--window", cfg.window, "Acceptance window 'lo:hi'");
  pathology->add_option("--probe-orders", cfg.probe_orders, "Derivative orders to probe")
      ->delimiter(',');
  add_common(pathology, cfg);

  auto* selftest = app.add_subcommand("selftest", "Deterministic property suite");
  selftest->add_option("--seed", cfg.seed, "Random seed");
  add_common(selftest, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  cfg.command = app.get_subcommands().front()->get_name();
  return qpkit::dispatch(cfg);
}
