// cli.hpp
// Command-line front end. Kept in the library so it can be driven from tests.

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qwalk/delta_walk.hpp"
#include "qwalk/emit.hpp"
#include "qwalk/experiments.hpp"

namespace qwalk {

enum class Subcommand { single, pair, boson, fermion, delta, asymptote, preset, sweep };

enum ExitCode : int {
    kExitOk = 0,
    kExitFailure = 1,
    kExitUsage = 2,
    kExitResource = 3,
    kExitGateFailed = 4,
    kExitOutput = 5,
};

/// Bad command line, state literal or coin file.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct RunConfig {
    Subcommand command = Subcommand::pair;
    std::optional<std::string> state;
    std::optional<std::string> preset;
    std::optional<int> steps;
    std::string delta_coin = "default";
    std::optional<std::filesystem::path> out;
    OutputFormat format = OutputFormat::csv;
    std::optional<std::size_t> max_amps;
    std::uint64_t seed = 1;
    int count = 20;
    bool joint = false;
    bool help = false;
    std::string help_text;
};

/// Environment variable naming the default output directory.
inline constexpr const char* kOutDirEnv = "QWALK_OUT_DIR";

/// `args` excludes the program name. Throws UsageError.
RunConfig parse_args(const std::vector<std::string>& args);

/// "re", "imi", "re+imi", "re-imi", "i", "-i". Throws UsageError.
Complex parse_complex(std::string_view text);

/// Named preset or explicit amplitudes; see the README for the accepted
/// forms. Explicit states within 1e-6 of unit norm are renormalized with a
/// warning on `warn`; anything further off is rejected.
InitialState parse_state(std::string_view text, std::ostream& warn);

/// 16 complex literals, row-major, whitespace separated; unitary within 1e-10.
InteractionCoin parse_delta_coin(std::string_view text);
/// "default" or a path to a coin file.
InteractionCoin load_delta_coin(const std::string& source);

/// Runs a parsed configuration; returns an ExitCode.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse_args + run with error-to-exit-code mapping.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qwalk
