#pragma once

/// @file cli.hpp
/// Command-line front end: subcommand dispatch, layered configuration and
/// output files.
///
/// Settings resolve as flag > environment (output directory only) > config
/// file section > built-in default. Every key has a flag of the same name
/// (`max-iterations` <-> `--max-iterations`).

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace jumpga::cli {

enum class Subcommand { Run, Takeover, Survival, Figure1, Compare, Bounds, Sweep, Oracle };

std::string_view to_string(Subcommand s);

/// Environment variable that overrides the output directory.
inline constexpr const char* kOutputDirEnv = "JUMPGA_OUTPUT_DIR";

struct Environment {
    std::optional<std::string> output_dir;

    static Environment from_process();
};

struct CliInvocation {
    Subcommand subcommand = Subcommand::Run;
    std::optional<std::filesystem::path> config_path;
    /// Keys given as flags, verbatim.
    std::map<std::string, std::string> overrides;
    /// Effective value of every key of the subcommand, in declaration order.
    std::vector<std::pair<std::string, std::string>> settings;
    std::filesystem::path output_dir;
    std::uint64_t seed = 1;

    const std::string& value(std::string_view key) const;
};

/// Thrown by parse_cli for --help and for an empty command line.
struct HelpRequested {
    std::string text;
    int exit_code = 0;
};

/// Parses arguments (without the program name). Throws UsageError on
/// malformed flags, unknown keys or sections, or invalid values.
CliInvocation parse_cli(std::span<const std::string> args, const Environment& env = {});

std::string usage();

/// `key = value` lines under a `[subcommand]` header, readable as a config file.
std::string resolved_config(const CliInvocation& inv);

/// Writes config.resolved, then runs the experiment and its outputs.
/// Returns 0, or 3 when a sweep cell fails.
int execute(const CliInvocation& inv, std::ostream& out);

/// Full entry point with exit codes 0 success, 1 runtime failure, 2 usage error, 3 sweep failure.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace jumpga::cli
