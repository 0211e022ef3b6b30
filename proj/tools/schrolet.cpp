#include <CLI11.hpp>

#include <iostream>

#include "schrolet/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"schrolet: discrete Schroedingerlet frames"};
  app.require_subcommand(1);
  schrolet::CliOptions opt;
  int L = 0;
  for (const auto& name : schrolet::cli_commands()) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config,-c", opt.config, "JSON config file")->required();
    sub->add_option("--out,-o", opt.out_dir, "output directory (default: $SCHROLET_OUT_DIR, then output.dir)");
    sub->add_option("--threads", opt.threads, "worker threads");
    if (name == "verify-parseval") sub->add_option("--L", L, "override the subgroup order");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : schrolet::exit_schema;
  }
  if (L != 0) opt.L = L;
  return schrolet::run_command(app.get_subcommands().front()->get_name(), opt, std::cout, std::cerr);
}
