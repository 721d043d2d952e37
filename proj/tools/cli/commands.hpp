#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace diagqmc::cli {

enum ExitCode : int {
    exit_ok = 0,
    exit_verification_failed = 1,
    exit_config_error = 2,
    exit_unsupported = 3,
    exit_degenerate = 4,
};

/// Parses `b^lo..b^hi` (every power of b from lo to hi) or a comma list.
/// Throws std::invalid_argument on malformed input.
std::vector<std::size_t> parse_n_grid(const std::string& text);

/// Runs the tool with args (excluding the program name). Output that is not
/// redirected with --out goes to `out`; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace diagqmc::cli
