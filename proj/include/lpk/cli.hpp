#pragma once

#include <json.hpp>

#include <string>
#include <vector>

namespace lpk::cli {

/// Exit statuses of the command line tool.
enum Exit : int { kOk = 0, kObstruction = 1, kInputError = 2, kCapExceeded = 3 };

struct CommandResult {
    int exit_code = kOk;
    nlohmann::json report;  // always filled, "status" is one of ok / obstruction / unknown / error
    std::string text;       // human-readable form
    bool json = false;      // --json was given
    /// What the tool prints on stdout.
    std::string output() const;
};

/// Runs one command; `args` excludes the program name. Never throws.
CommandResult run_command(const std::vector<std::string>& args);

/// Graph argument: a file path, or family:rose:N, family:loop, family:line, family:fan, family:loop-pair,
/// family:two-vertex, family:sinks:N, family:random:SEED:INDEX.
std::string describe_graph_sources();

}  // namespace lpk::cli
