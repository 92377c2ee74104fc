#ifndef SUMDIST_TOOLS_CLI_HPP
#define SUMDIST_TOOLS_CLI_HPP

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "serialize.hpp"
#include "sumdist/copula.hpp"
#include "sumdist/grid.hpp"
#include "sumdist/sum_distribution.hpp"

namespace sumdist::cli {

enum class Command { Dist, Quantile, Density, Sample, Sweep, ReproduceTable2 };

[[nodiscard]] std::string_view to_string(Command command);

struct RunConfig {
    Command command = Command::Dist;
    std::string copula = "gauss";
    std::optional<double> rho;
    std::optional<double> theta;
    double nu = kDefaultStudentNu;
    GridSpec grid = paper_grid();
    CdfMode mode = CdfMode::PaperExact;
    Format format = Format::Csv;
    std::string output;  // empty: standard output
    std::uint64_t seed = 1;
    std::size_t n = 5000;
    std::vector<double> levels{0.95, 0.99};
    std::vector<double> rhos;             // sweep; empty means the published set
    std::vector<std::string> families;    // sweep; empty means all five
};

// Parses argv into a config. Returns nullopt after printing help; throws
// ValidationError naming the flag on bad input.
[[nodiscard]] std::optional<RunConfig> parse_command_line(int argc, const char* const* argv, std::ostream& out);

// Exactly one of --theta and --rho for Archimedean families; --rho for
// Gauss and t. Errors name the flag.
[[nodiscard]] CopulaSpec resolve_spec(const RunConfig& config);

// Computes the artifact of a command, meta included.
[[nodiscard]] Table build_table(const RunConfig& config);

// Writes the artifact and prints the one-line summary. With an output file the
// summary goes to out; when the artifact itself goes to out, the summary goes
// to err so the data stream stays clean.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// Exit status: 0 success, 2 invalid arguments, 1 numerical or I/O failure.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sumdist::cli

#endif  // SUMDIST_TOOLS_CLI_HPP
