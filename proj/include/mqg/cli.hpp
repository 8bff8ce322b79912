#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace mqg {

/// Exit codes of the command line entry point.
enum ExitCode : int { kExitOk = 0, kExitCheckFailed = 1, kExitConfig = 2, kExitEvaluation = 3 };

struct RunConfig {
  std::string command;             ///< verify | invariant | manifold
  std::vector<std::string> group;  ///< `builtin <name>` or a file path
  std::string suite = "all";
  std::optional<std::string> z;      ///< `cointegral` or an element literal
  std::optional<std::string> sigma;  ///< `H=<gens>;K=<gens>`
  std::string diagram;
  std::string surgery;
  std::string pair;  ///< second surgery presentation (Fenn–Rourke pair check)
  int radius = 3;
  std::string out;
  unsigned jobs = 0;
};

/// Runs one configured command. The JSON report goes to `out` (or the
/// `cfg.out` file), diagnostics to `err`.
int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Parses argv and runs the command.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mqg
