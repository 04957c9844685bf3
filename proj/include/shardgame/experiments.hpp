#ifndef SHARDGAME_EXPERIMENTS_HPP
#define SHARDGAME_EXPERIMENTS_HPP

#include <iosfwd>
#include <optional>
#include <string>

#include "shardgame/best_response.hpp"
#include "shardgame/types.hpp"

namespace shardgame {

enum class Command { Equilibrium, Stackelberg, Verify, Payout };

// Process-style exit codes shared by the library entry points and the CLI.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitNoConvergence = 2;
inline constexpr int kExitIo = 3;

struct RunOptions {
    std::string out_dir = "out";
    std::optional<std::uint64_t> seed_override;
};

/// Loads a scenario file, runs one command, writes CSV reports into
/// out_dir and a human-readable summary to log. Returns an exit code.
int run_scenario(const std::string& path, Command command, const RunOptions& options,
                 std::ostream& log);

struct FigureOptions {
    std::string out_dir = "out";
    int grid = 100;               // surface resolution per axis
    int payment_grid_max = 0;     // 0: preset default
};

/// Regenerates the data grids behind the bundled example figures (2-5).
/// Returns an exit code like run_scenario.
int reproduce_figure(int figure, const FigureOptions& options, std::ostream& log);

// Bundled experiment presets; also shipped as scenarios/*.json.
BestResponseInput figure2_input();      // lone optimizer against fixed rivals
ScenarioConfig figure2_scenario();
ScenarioConfig figure3_scenario();      // four followers, fixed payments
ScenarioConfig figure4_scenario();      // payment search, priorities [4, 6]
ScenarioConfig figure5_scenario();      // payment search, priorities [10, 15]

/// Fixed rivals' totals used by the figure-2 surface.
std::vector<double> figure2_opponent_totals();

}  // namespace shardgame

#endif
