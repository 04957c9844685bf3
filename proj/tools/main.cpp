// shardgame: solver CLI for the shard-incentive Stackelberg game.

#include <CLI11.hpp>
#include <iostream>

#include "shardgame/experiments.hpp"
#include "shardgame/selftest.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Stackelberg shard-incentive game solver"};
    app.require_subcommand(1);

    std::string scenario_path;
    std::string out_dir = "out";
    std::uint64_t seed = 0;
    bool seed_set = false;
    int figure = 0;
    int grid = 100;
    int payment_grid_max = 0;

    auto add_common = [&](CLI::App* cmd, bool needs_scenario) {
        if (needs_scenario)
            cmd->add_option("--scenario", scenario_path, "scenario JSON file")->required();
        cmd->add_option("--out", out_dir, "output directory for CSV reports");
        cmd->add_option("--seed", seed, "override the scenario RNG seed")
            ->each([&](const std::string&) { seed_set = true; });
    };

    CLI::App* equilibrium =
        app.add_subcommand("equilibrium", "solve the followers' equilibrium at fixed payments");
    add_common(equilibrium, true);
    CLI::App* stackelberg =
        app.add_subcommand("stackelberg", "search the leader's payment grid");
    add_common(stackelberg, true);
    CLI::App* verify = app.add_subcommand(
        "verify", "run concavity, diagonal-concavity and uniqueness probes");
    add_common(verify, true);
    CLI::App* payout = app.add_subcommand(
        "payout", "simulate pay-per-share rewards at the equilibrium");
    add_common(payout, true);

    CLI::App* figure_cmd =
        app.add_subcommand("figure", "regenerate the data behind a bundled figure");
    figure_cmd->add_option("--figure", figure, "figure number (2-5)")->required();
    figure_cmd->add_option("--out", out_dir, "output directory for CSV files");
    figure_cmd->add_option("--grid", grid, "surface resolution per axis");
    figure_cmd->add_option("--payment-grid-max", payment_grid_max,
                           "override the payment grid bound (figures 4 and 5)");

    CLI::App* selftest =
        app.add_subcommand("selftest", "run the built-in verification suite");
    (void)selftest;

    CLI11_PARSE(app, argc, argv);

    using shardgame::Command;
    shardgame::RunOptions options;
    options.out_dir = out_dir;
    if (seed_set) options.seed_override = seed;

    if (equilibrium->parsed())
        return shardgame::run_scenario(scenario_path, Command::Equilibrium, options, std::cout);
    if (stackelberg->parsed())
        return shardgame::run_scenario(scenario_path, Command::Stackelberg, options, std::cout);
    if (verify->parsed())
        return shardgame::run_scenario(scenario_path, Command::Verify, options, std::cout);
    if (payout->parsed())
        return shardgame::run_scenario(scenario_path, Command::Payout, options, std::cout);
    if (figure_cmd->parsed()) {
        shardgame::FigureOptions fig_options;
        fig_options.out_dir = out_dir;
        fig_options.grid = grid;
        fig_options.payment_grid_max = payment_grid_max;
        return shardgame::reproduce_figure(figure, fig_options, std::cout);
    }
    if (selftest->parsed()) return shardgame::run_acceptance_suite(std::cout) == 0 ? 0 : 1;
    return 1;
}
