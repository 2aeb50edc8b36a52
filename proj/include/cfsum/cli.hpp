#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cfsum/number_source.hpp"

namespace cfsum::cli {

enum class Subcommand { Decompose, Gaps, Verify, Scan };
enum class OutputMode { Text, Json };

struct RunConfig {
    Subcommand subcommand = Subcommand::Decompose;
    std::string number;  // literal for decompose
    std::optional<long> k;
    std::optional<long> m;
    std::optional<long> n;
    std::size_t max_steps = 64;
    long q_max = 500;
    std::size_t n_max = 10;
    std::vector<std::size_t> gap_indices{1, 2};
    std::vector<std::string> targets;
    long grid = 100;
    std::string columns_path;
    std::size_t precision = 30;
    unsigned threads = 1;
    OutputMode output = OutputMode::Text;
    bool check_invariants = true;
};

/// Bad command line or parameters; maps to exit code 2.
class UsageError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Directory holding bundled digit files: $CFSUM_DATA_DIR if set, otherwise
/// the path compiled into the library.
std::filesystem::path data_dir();

/// "p/q" | "[a1,a2,...]" | "surd:a,b,d,c" | "stream:PATH" | "e-2" | "pi-3".
NumberSource parse_number_literal(std::string_view text, const std::filesystem::path& data = data_dir());

/// Throws UsageError; returns nullopt when help was requested (and printed).
std::optional<RunConfig> parse_command_line(int argc, const char* const* argv, std::ostream& out);

/// 0: success, 1: verification counterexample or invariant violation,
/// 2: usage or domain error.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse_command_line + run with the exit-code mapping above.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cfsum::cli
