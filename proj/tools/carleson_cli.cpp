#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "carleson/runner.hpp"

// Batch front door.  Subcommands mirror the library runner:
//   certify      emit a decay certificate plus its independent re-check log
//   expand       dump the sigma-expansion of the phase
//   check-lemmas run the seeded property ensembles
//   kernel-scan  K# decay scan with certified bad-set exclusion (CSV + JSON)
//   vdc-scan     van der Corput integral/sublevel trend checks (CSV + JSON)
int main(int argc, char** argv) {
  CLI::App app{"symbolic-numeric toolkit for oscillatory kernel decay certification"};
  app.require_subcommand(0, 1);

  carleson::RunConfig rc;
  std::string subcommand_flag;
  app.add_option("--subcommand", subcommand_flag, "subcommand name (alternative to positional)");
  app.add_option("--config", rc.config_path, "path to the run config file")->required();
  app.add_option("--out", rc.out_dir, "output directory")->required();
  app.add_option("--seed", rc.seed, "seed for randomized ensembles (default 1)");

  for (const char* name : {"certify", "expand", "check-lemmas", "kernel-scan", "vdc-scan"})
    app.add_subcommand(name, "")->fallthrough();

  CLI11_PARSE(app, argc, argv);

  if (!app.get_subcommands().empty())
    rc.subcommand = app.get_subcommands().front()->get_name();
  else if (!subcommand_flag.empty())
    rc.subcommand = subcommand_flag;
  else {
    std::cerr << "need a subcommand (positional or --subcommand)\n";
    return 1;
  }

  if (const char* tol = std::getenv("CARLESON_QUAD_TOL")) rc.quad_rel_tol = std::atof(tol);
  if (const char* thr = std::getenv("CARLESON_THREADS")) rc.threads = std::atoi(thr);

  return carleson::run(rc);
}
