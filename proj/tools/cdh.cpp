// cdh — command-line front end for the cavity-dressed Hamiltonian library.
//
//   cdh spectrum|observable|sweep|validate --config <file> [--out <path>]
//       [--workers k] [--quick] [--perturb x]

#include <iostream>

#include "CLI11.hpp"
#include "cdh/commands.hpp"

int main(int argc, char** argv) {
  using namespace cdh::cli;

  CLI::App app{"Cavity-dressed Hamiltonians: spectra, observables, sweeps and validation"};
  app.require_subcommand(1);

  CommandOptions options;
  auto add_common = [&](CLI::App* sub, bool config_required) {
    auto* cfg = sub->add_option("--config", options.config_path, "JSON run configuration");
    if (config_required) cfg->required();
    cfg->check(CLI::ExistingFile);
    sub->add_option("--out", options.out_path, "Output path (default: config \"output\", else stdout)");
    sub->add_option("--workers", options.workers, "Worker threads for grid points (default: OpenMP default)")
        ->check(CLI::NonNegativeNumber);
  };

  auto* spectrum = app.add_subcommand("spectrum", "Lowest energy levels over the grid (CSV)");
  add_common(spectrum, true);
  auto* observable = app.add_subcommand("observable", "All requested observables at one point (JSON)");
  add_common(observable, true);
  auto* sweep = app.add_subcommand("sweep", "Observables over a (lambda/omega, delta/omega) grid (CSV)");
  add_common(sweep, true);
  auto* validate = app.add_subcommand("validate", "Run the invariant suite (JSON report)");
  add_common(validate, false);
  validate->add_flag("--quick", options.quick, "Run the fast subset only");
  validate->add_option("--perturb", options.perturb, "Inject a fault of this size into the closed-form Rabi matrix");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kSuccess : kConfigError;
  }

  if (*spectrum) return cmd_spectrum(options, std::cout, std::cerr);
  if (*observable) return cmd_observable(options, std::cout, std::cerr);
  if (*sweep) return cmd_sweep(options, std::cout, std::cerr);
  return cmd_validate(options, std::cout, std::cerr);
}
