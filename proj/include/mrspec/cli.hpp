#pragma once

// Command-line front end. run() is the whole program minus process setup, so
// tests can drive it in-process.

#include <iosfwd>
#include <string>
#include <vector>

namespace mrspec::cli {

enum ExitCode : int
{
    exit_ok = 0,
    exit_usage = 2,
    exit_unbound = 3,
    exit_solver = 4,
};

enum class OutputFormat
{
    Text,
    Csv,
    Json,
};

struct RunConfig
{
    OutputFormat format{OutputFormat::Text};
    int precision{9}; ///< decimals for energies in text output, 1..17
    int jobs{1};      ///< worker count for oracle runs

    void validate() const;
};

/// args excludes the program name. Returns an ExitCode.
int run(std::vector<std::string> const& args, std::ostream& out, std::ostream& err);

} // namespace mrspec::cli
