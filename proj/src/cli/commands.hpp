#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sparsespin::cli {

enum ExitCode : int { kOk = 0, kNumericalFailure = 1, kUsageError = 2 };

/// Entry point shared by the executable and the tests. Subcommands:
/// evolve | scaling | gap | strobe | schedule | fidelity.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Expands "1-5,8,10" into {1,2,3,4,5,8,10}.
std::vector<int> parse_int_list(const std::string& text);
std::vector<double> parse_real_list(const std::string& text);

/// Reads key=value lines ('#' comments) and appends "--key value" for every key
/// not already given on the command line.
std::vector<std::string> merge_config(const std::vector<std::string>& args, const std::string& path);

}  // namespace sparsespin::cli
