#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace isbell::cli {

enum class ExitCode : int { ok = 0, violated = 1, usage = 2 };

enum class OutputFormat { text, structured };

struct RunConfig {
  std::string subcommand;
  std::vector<std::string> inputs;
  std::uint64_t budget = 10'000'000;
  double tol = 1e-9;
  OutputFormat format = OutputFormat::text;
  std::uint64_t seed = 0;
  std::optional<std::string> output;
  bool timing = false;

  // subcommand-specific
  std::size_t count = 100;
  std::size_t max_set_size = 2;
  std::vector<double> values;
  bool co = false;
};

/// Parses argv (without the program name), runs the subcommand and writes
/// the report to `out` (or --output). Diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace isbell::cli
