#ifndef SPAKIT_CLI_HPP
#define SPAKIT_CLI_HPP

#include <string>
#include <vector>

#include "spakit/json_io.hpp"

namespace spakit::cli {

// exit codes: 0 success, 2 invalid input, 3 internal numerical failure
struct CommandResult {
  int exit_code = 0;
  json payload;          // empty on failure
  std::string rendered;  // exact bytes for the data stream
  std::string diagnostics;  // human-readable, error-stream material
};

// Subcommands: maps list | spa | conjecture | design verify | witness eval |
// detect | choi dump. Identical argv and seeds give byte-identical payloads.
CommandResult run(const std::vector<std::string>& args);

}  // namespace spakit::cli

#endif
