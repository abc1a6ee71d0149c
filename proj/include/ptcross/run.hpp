#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ptcross/table.hpp"

namespace ptcross {

enum class Command {
    Spectrum,
    Metric,
    Scan,
    Sweep,
    Unfold,
    HO,
    EPFind,
};

const char* to_string(Command c);
Command command_from_string(const std::string& s);
const std::vector<Command>& all_commands();

/// Parameter names accepted by a command, in display order.
const std::vector<std::string>& allowed_parameters(Command c);

struct RunConfig {
    Command command = Command::Spectrum;
    // Raw textual values keyed by parameter name (without leading dashes).
    std::map<std::string, std::string> parameters;
    Format output_format = Format::CSV;
    std::optional<std::string> output_path;
    // Echoed into the metadata block.
    std::string command_line;
};

/// Validates the configuration and computes the result table.
/// Throws UsageError for unknown or malformed parameters and DomainError
/// (or another Error) when the computation itself is impossible.
Table run(const RunConfig& config);

/// run() followed by serialization. Returns the process exit status:
/// 0 on success, 1 on a domain error, 2 on a usage error.
int run_and_emit(const RunConfig& config, std::ostream& out, std::ostream& err);

} // namespace ptcross
