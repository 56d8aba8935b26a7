#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "mtm/io.hpp"

namespace mtm::cli {

struct RunConfig {
  std::size_t l_max = 4;
  Timestamp delta = 3600;
  Timestamp delta_c = 3600;
  std::uint64_t seed = 1;
  std::size_t runs = 10;
  std::string input;
  std::string profile;
  std::string output;
};

/// Output file of run `run` out of `runs`: `out` itself for a single run,
/// otherwise <stem>_<run><ext>.
std::string run_output_path(const std::string& out, std::size_t run, std::size_t runs);

/// Expands '*' and '?' in the file-name part of each pattern. Plain paths
/// pass through unchanged. Matches are sorted per pattern; a pattern with
/// no match throws std::runtime_error.
std::vector<std::string> expand_paths(const std::vector<std::string>& patterns);

/// Writes the profile of config.input to config.output and prints a summary.
void cmd_extract(const RunConfig& config, std::ostream& out);

/// Writes config.runs graphs generated from config.profile with seeds
/// seed, seed + 1, ...; returns the written paths.
std::vector<std::string> cmd_generate(const RunConfig& config, std::ostream& out);

/// Entry point behind the `mtm` binary. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mtm::cli
