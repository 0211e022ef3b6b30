#pragma once
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace schrolet {

struct CliOptions {
  std::string config;
  std::string out_dir;     // overrides SCHROLET_OUT_DIR and output.dir
  int threads = 0;         // 0 = keep the default
  std::optional<int> L;    // overrides the subgroup order of cyclic generators
};

enum ExitCode { exit_ok = 0, exit_check_failed = 1, exit_schema = 2, exit_io = 3 };

const std::vector<std::string>& cli_commands();

/// Runs one subcommand against a JSON config; returns the exit code. Summary lines go to `out`, errors to `err`.
int run_command(const std::string& command, const CliOptions& opt, std::ostream& out, std::ostream& err);

}  // namespace schrolet
