#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "schwarzsl/integrate.hpp"
#include "schwarzsl/rootfind.hpp"

namespace schwarzsl::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNumerical = 3;

enum class Command { List, Solve, Web, Eigenfunction, Dispersion };
enum class Method { Minimalist, SchwarzianG, SchwarzianPhi };
enum class Format { Csv, Json };

struct RunConfig {
    Command command = Command::List;
    std::string problem;
    std::map<std::string, double> params;
    std::optional<Method> method;  ///< empty: per-problem default
    Tolerances tol{};
    std::optional<std::pair<double, double>> cuts;
    std::optional<std::pair<double, double>> range;  ///< solve: real eigenvalue range
    std::size_t samples = 0;                         ///< solve: 0 means per-problem default
    std::optional<Region> region;  ///< web default 0,6,0,4; dispersion tracks k
    std::optional<std::pair<std::size_t, std::size_t>> grid;  ///< web default 200x200, dispersion 60x60
    int threads = 0;  ///< 0: SCHWARZIAN_SL_THREADS or 1
    std::optional<Complex> eigenvalue;
    std::vector<double> k_grid;
    std::string output;  ///< empty: standard output
    Format format = Format::Csv;
};

std::string_view to_string(Command c);
std::string_view to_string(Method m);

/// Thrown by `parse` for --help / --version with the text to print.
struct HelpRequested {
    std::string text;
};

/// Parses argv (including a --config JSON file; explicit flags win).
/// Throws Error(InvalidArgument) on bad input.
RunConfig parse(int argc, const char* const* argv);

/// Executes a parsed configuration and returns the exit status.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse + run with exit-code mapping; the entry point of the tool.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace schwarzsl::cli
