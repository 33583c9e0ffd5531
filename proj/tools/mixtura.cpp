#include <CLI11.hpp>
#include <iostream>

#include "mixtura/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Two-component compressible mixture simulator"};
  app.set_version_flag("--version", mixtura::kVersion);
  app.require_subcommand(1);

  mixtura::CommandOptions opts;
  std::string out;
  const char* names[] = {"simulate", "linearize", "equivalence", "lagrangian-check",
                         "convergence"};
  const char* help[] = {"run the nonlinear solver and write series.csv",
                        "spectrum of the linearized operator",
                        "compare primitive and entropic runs under refinement",
                        "Lagrangian transform identities and remainder scaling",
                        "manufactured-solution convergence orders"};
  for (int i = 0; i < 5; ++i) {
    auto* sub = app.add_subcommand(names[i], help[i]);
    sub->add_option("--config", opts.config_path, "config file")->required();
    sub->add_option("--out", out, "output directory (overrides MIXTURA_OUT)");
    sub->add_flag("--force", opts.force, "overwrite existing outputs");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : mixtura::kConfigFailure;
  }
  if (!out.empty()) opts.out = out;
  return mixtura::run_command(app.get_subcommands().front()->get_name(), opts, std::cerr);
}
