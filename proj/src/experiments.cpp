#include "shardgame/experiments.hpp"

#include <cmath>
#include <filesystem>
#include <limits>
#include <ostream>
#include <vector>

#include "shardgame/csv.hpp"
#include "shardgame/equilibrium.hpp"
#include "shardgame/leader.hpp"
#include "shardgame/payout.hpp"
#include "shardgame/scenario.hpp"
#include "shardgame/utility.hpp"

namespace shardgame {

namespace {

namespace fs = std::filesystem;

constexpr double kPayoutSharesPerUnit = 10.0;
constexpr std::uint64_t kPayoutRounds = 100000;

bool ensure_out_dir(const std::string& out_dir, std::ostream& log) {
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) {
        log << "error: cannot create output directory '" << out_dir << "': " << ec.message()
            << "\n";
        return false;
    }
    return true;
}

std::string join(const std::string& dir, const std::string& name) {
    return (fs::path(dir) / name).string();
}

void write_allocation_csv(const std::string& path, const ScenarioConfig& config,
                          const AllocationMatrix& allocation) {
    CsvWriter csv(path, {"follower", "shard", "allocation"});
    for (std::size_t n = 0; n < config.num_followers(); ++n)
        for (std::size_t m = 0; m < config.num_shards(); ++m) {
            csv.field(config.followers[n].id).field(config.shards[m].id);
            csv.field(allocation.at(n, m));
            csv.end_row();
        }
    csv.close();
}

int run_equilibrium(const ScenarioConfig& config, const RunOptions& options,
                    std::ostream& log) {
    const PaymentVector& payments = *config.payments;
    EquilibriumResult eq = solve_followers_equilibrium(config, payments);

    write_allocation_csv(join(options.out_dir, "equilibrium_allocation.csv"), config,
                         eq.allocation);
    {
        CsvWriter csv(join(options.out_dir, "equilibrium_summary.csv"),
                      {"follower", "total", "capacity", "utility"});
        for (std::size_t n = 0; n < config.num_followers(); ++n) {
            csv.field(config.followers[n].id)
                .field(eq.allocation.row_total(n))
                .field(config.followers[n].capacity)
                .field(eq.follower_utilities[n]);
            csv.end_row();
        }
        csv.close();
    }
    {
        CsvWriter csv(join(options.out_dir, "equilibrium_report.csv"),
                      {"converged", "sweeps", "residual", "leader_utility"});
        csv.field(std::string(eq.converged ? "true" : "false"))
            .field((long long)eq.sweeps)
            .field(eq.residual)
            .field(eq.leader_utility);
        csv.end_row();
        csv.close();
    }

    log << "equilibrium: " << (eq.converged ? "converged" : "NOT converged") << " after "
        << eq.sweeps << " sweeps, residual " << eq.residual << "\n";
    for (std::size_t n = 0; n < config.num_followers(); ++n) {
        double total = eq.allocation.row_total(n);
        double cap = config.followers[n].capacity;
        log << "  " << config.followers[n].id << ": total " << total << " / " << cap
            << (total >= cap - 1e-6 * cap ? " (at capacity)" : "") << ", utility "
            << eq.follower_utilities[n] << "\n";
    }
    log << "  leader utility: " << eq.leader_utility << "\n";
    return eq.converged ? kExitOk : kExitNoConvergence;
}

std::vector<std::string> payment_headers(const ScenarioConfig& config) {
    std::vector<std::string> names;
    for (const auto& s : config.shards) names.push_back("payment_" + s.id);
    return names;
}

int run_stackelberg(const ScenarioConfig& config, const RunOptions& options,
                    std::ostream& log) {
    LeaderSearchResult search = algorithm1_search(config);

    {
        std::vector<std::string> header = {"eval"};
        for (const auto& name : payment_headers(config)) header.push_back(name);
        header.push_back("leader_utility");
        header.push_back("converged");
        CsvWriter csv(join(options.out_dir, "stackelberg_trace.csv"), header);
        for (std::size_t i = 0; i < search.trace.size(); ++i) {
            const TraceEntry& entry = search.trace[i];
            csv.field((long long)i);
            for (double p : entry.payments) csv.field(p);
            csv.field(entry.leader_utility);
            csv.field(std::string(entry.converged ? "true" : "false"));
            csv.end_row();
        }
        csv.close();
    }
    {
        std::vector<std::string> header = payment_headers(config);
        header.push_back("leader_utility");
        header.push_back("total_resources");
        CsvWriter csv(join(options.out_dir, "stackelberg_optimum.csv"), header);
        for (double p : search.best_payments) csv.field(p);
        csv.field(search.best_utility);
        csv.field(search.equilibrium.allocation.grand_total());
        csv.end_row();
        csv.close();
    }
    write_allocation_csv(join(options.out_dir, "stackelberg_allocation.csv"), config,
                         search.equilibrium.allocation);

    log << "stackelberg: best payments (";
    for (std::size_t m = 0; m < search.best_payments.size(); ++m)
        log << (m ? ", " : "") << search.best_payments[m];
    log << "), leader utility " << search.best_utility << ", "
        << search.equilibrium.allocation.grand_total() << " resource units attracted, "
        << search.trace.size() << " payment vectors evaluated\n";
    return kExitOk;
}

int run_verify(const ScenarioConfig& config, const RunOptions& options, std::ostream& log) {
    const PaymentVector& payments = *config.payments;
    ConcavityReport concavity = concavity_check(config, payments, 100);
    RosenReport rosen =
        rosen_dsc_check(config, payments, std::vector<double>(config.num_followers(), 1.0), 100);
    UniquenessReport uniqueness = uniqueness_probe(config, payments, 10);
    bool uniqueness_pass = uniqueness.all_converged && uniqueness.max_deviation <= 1e-3;

    {
        CsvWriter csv(join(options.out_dir, "verify_report.csv"),
                      {"check", "samples", "worst_value", "pass"});
        csv.field(std::string("concavity")).field((long long)concavity.samples);
        csv.field(concavity.max_eigenvalue).field(std::string(concavity.pass ? "true" : "false"));
        csv.end_row();
        csv.field(std::string("rosen_dsc")).field((long long)rosen.samples);
        csv.field(rosen.max_eigenvalue).field(std::string(rosen.pass ? "true" : "false"));
        csv.end_row();
        csv.field(std::string("uniqueness")).field((long long)uniqueness.num_runs);
        csv.field(uniqueness.max_deviation)
            .field(std::string(uniqueness_pass ? "true" : "false"));
        csv.end_row();
        csv.close();
    }

    log << "verify: concavity max eigenvalue " << concavity.max_eigenvalue << " ("
        << (concavity.pass ? "pass" : "FAIL") << ")\n";
    log << "verify: rosen dsc max eigenvalue " << rosen.max_eigenvalue << " ("
        << (rosen.pass ? "pass" : rosen.degenerate ? "degenerate" : "FAIL") << ")\n";
    log << "verify: uniqueness deviation " << uniqueness.max_deviation << " over "
        << uniqueness.num_converged << "/" << uniqueness.num_runs << " converged runs ("
        << (uniqueness_pass ? "pass" : "FAIL") << ")\n";
    return uniqueness.all_converged ? kExitOk : kExitNoConvergence;
}

int run_payout(const ScenarioConfig& config, const RunOptions& options, std::ostream& log) {
    const PaymentVector& payments = *config.payments;
    EquilibriumResult eq = solve_followers_equilibrium(config, payments);
    if (!eq.converged) {
        log << "payout: equilibrium did not converge, no simulation run\n";
        return kExitNoConvergence;
    }
    PayoutLedger ledger = simulate_pay_per_share(eq.allocation, payments, kPayoutSharesPerUnit,
                                                 kPayoutRounds, config.rng_seed);

    CsvWriter csv(join(options.out_dir, "payout.csv"),
                  {"follower", "shard", "expected_tokens", "simulated_tokens",
                   "shares_observed", "relative_error"});
    for (std::size_t n = 0; n < config.num_followers(); ++n)
        for (std::size_t m = 0; m < config.num_shards(); ++m) {
            const PayoutCell& cell = ledger.at(n, m);
            csv.field(config.followers[n].id).field(config.shards[m].id);
            csv.field(cell.expected_tokens).field(cell.simulated_tokens);
            csv.field((long long)cell.shares_observed).field(cell.relative_error);
            csv.end_row();
        }
    csv.close();

    log << "payout: " << kPayoutRounds << " rounds at " << kPayoutSharesPerUnit
        << " shares/unit, worst relative error " << ledger.worst_relative_error() << "\n";
    return kExitOk;
}

int dispatch(const ScenarioConfig& config, Command command, const RunOptions& options,
             std::ostream& log) {
    switch (command) {
        case Command::Equilibrium: return run_equilibrium(config, options, log);
        case Command::Stackelberg: return run_stackelberg(config, options, log);
        case Command::Verify: return run_verify(config, options, log);
        case Command::Payout: return run_payout(config, options, log);
    }
    return kExitValidation;
}

}  // namespace

int run_scenario(const std::string& path, Command command, const RunOptions& options,
                 std::ostream& log) {
    ScenarioConfig config;
    try {
        config = load_scenario(path);
    } catch (const ScenarioError& e) {
        log << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    if (options.seed_override) config.rng_seed = *options.seed_override;

    if (command != Command::Stackelberg && !config.payments) {
        log << "error: " << path << ": this command needs a 'payments' array\n";
        return kExitValidation;
    }

    if (!ensure_out_dir(options.out_dir, log)) return kExitIo;
    try {
        return dispatch(config, command, options, log);
    } catch (const IoError& e) {
        log << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::domain_error& e) {
        log << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        log << "error: " << e.what() << "\n";
        return kExitNoConvergence;
    }
}

BestResponseInput figure2_input() {
    BestResponseInput in;
    in.payments = {1000.0, 2000.0};
    in.opponents_totals = figure2_opponent_totals();
    in.unit_cost = 5.0;
    in.capacity = 100.0;
    return in;
}

std::vector<double> figure2_opponent_totals() { return {100.0, 300.0}; }

ScenarioConfig figure2_scenario() {
    ScenarioConfig config;
    config.followers = {{"mu", 100.0, 5.0}};
    config.shards = {{"s1", 4.0}, {"s2", 6.0}};
    config.payments = PaymentVector{1000.0, 2000.0};
    config.rng_seed = 7;
    return config;
}

ScenarioConfig figure3_scenario() {
    ScenarioConfig config;
    config.followers = {{"mu1", 100.0, 0.2},
                        {"mu2", 200.0, 0.1},
                        {"mu3", 300.0, 0.3},
                        {"mu4", 500.0, 0.2}};
    config.shards = {{"s1", 4.0}, {"s2", 6.0}};
    config.payments = PaymentVector{100.0, 200.0};
    config.rng_seed = 7;
    return config;
}

ScenarioConfig figure4_scenario() {
    ScenarioConfig config = figure3_scenario();
    config.payments.reset();
    return config;
}

ScenarioConfig figure5_scenario() {
    ScenarioConfig config = figure4_scenario();
    config.shards = {{"s1", 10.0}, {"s2", 15.0}};
    return config;
}

namespace {

int figure2_surface(const FigureOptions& options, std::ostream& log) {
    BestResponseInput in = figure2_input();
    const int grid = options.grid;
    {
        CsvWriter csv(join(options.out_dir, "fig2_surface.csv"), {"r1", "r2", "utility"});
        for (int i = 0; i < grid; ++i) {
            for (int j = 0; j < grid; ++j) {
                double r1 = in.capacity * double(i) / double(grid - 1);
                double r2 = in.capacity * double(j) / double(grid - 1);
                double u = follower_utility_local({r1, r2}, in.opponents_totals, in.payments,
                                                  in.unit_cost);
                csv.field(r1).field(r2).field(u);
                csv.end_row();
            }
        }
        csv.close();
    }
    std::vector<double> best = best_response(in);
    double best_utility =
        follower_utility_local(best, in.opponents_totals, in.payments, in.unit_cost);
    {
        CsvWriter csv(join(options.out_dir, "fig2_optimum.csv"), {"r1", "r2", "utility"});
        csv.field(best[0]).field(best[1]).field(best_utility);
        csv.end_row();
        csv.close();
    }
    log << "fig2: optimum at (" << best[0] << ", " << best[1] << "), utility " << best_utility
        << "\n";
    return kExitOk;
}

int figure3_trajectory(const FigureOptions& options, std::ostream& log) {
    ScenarioConfig config = figure3_scenario();
    CsvWriter csv(join(options.out_dir, "fig3_trajectory.csv"),
                  {"sweep", "follower", "shard", "allocation"});
    auto observer = [&](int sweep, const AllocationMatrix& state) {
        for (std::size_t n = 0; n < config.num_followers(); ++n)
            for (std::size_t m = 0; m < config.num_shards(); ++m) {
                csv.field((long long)sweep)
                    .field(config.followers[n].id)
                    .field(config.shards[m].id)
                    .field(state.at(n, m));
                csv.end_row();
            }
    };
    EquilibriumResult eq =
        solve_followers_equilibrium(config, *config.payments, std::nullopt, observer);
    csv.close();
    log << "fig3: " << (eq.converged ? "converged" : "NOT converged") << " after " << eq.sweeps
        << " sweeps\n";
    return eq.converged ? kExitOk : kExitNoConvergence;
}

int leader_surface(const ScenarioConfig& base, const std::string& tag,
                   const FigureOptions& options, std::ostream& log) {
    ScenarioConfig config = base;
    if (options.payment_grid_max > 0) config.payment_grid_max = options.payment_grid_max;
    const int p_max = config.payment_grid_max;
    const int grid = std::min(options.grid, p_max);

    // Integer payment levels spread over [1, p_max]; at full resolution this
    // enumerates every integer pair.
    std::vector<int> levels(grid);
    for (int i = 0; i < grid; ++i)
        levels[i] = 1 + int(std::llround(double(i) * double(p_max - 1) / double(grid - 1)));

    PaymentVector best_payments;
    double best_utility = -std::numeric_limits<double>::infinity();
    double best_total = 0.0;

    CsvWriter csv(join(options.out_dir, "fig" + tag + "_surface.csv"),
                  {"p1", "p2", "leader_utility", "converged"});
    for (int a : levels) {
        for (int b : levels) {
            PaymentVector payments = {double(a), double(b)};
            EquilibriumResult eq = solve_followers_equilibrium(config, payments);
            csv.field(payments[0]).field(payments[1]).field(eq.leader_utility);
            csv.field(std::string(eq.converged ? "true" : "false"));
            csv.end_row();
            if (eq.converged && eq.leader_utility > best_utility) {
                best_utility = eq.leader_utility;
                best_payments = payments;
                best_total = eq.allocation.grand_total();
            }
        }
    }
    csv.close();

    if (best_payments.empty()) {
        log << "fig" << tag << ": no payment level produced a converged equilibrium\n";
        return kExitNoConvergence;
    }
    CsvWriter optimum(join(options.out_dir, "fig" + tag + "_optimum.csv"),
                      {"p1", "p2", "leader_utility", "total_resources"});
    optimum.field(best_payments[0]).field(best_payments[1]).field(best_utility);
    optimum.field(best_total);
    optimum.end_row();
    optimum.close();

    log << "fig" << tag << ": best payments (" << best_payments[0] << ", " << best_payments[1]
        << "), leader utility " << best_utility << ", total resources " << best_total << "\n";
    return kExitOk;
}

}  // namespace

int reproduce_figure(int figure, const FigureOptions& options, std::ostream& log) {
    if (options.grid < 2) {
        log << "error: grid must be >= 2\n";
        return kExitValidation;
    }
    if (!ensure_out_dir(options.out_dir, log)) return kExitIo;
    try {
        switch (figure) {
            case 2: return figure2_surface(options, log);
            case 3: return figure3_trajectory(options, log);
            case 4: return leader_surface(figure4_scenario(), "4", options, log);
            case 5: return leader_surface(figure5_scenario(), "5", options, log);
            default:
                log << "error: figure must be 2, 3, 4 or 5\n";
                return kExitValidation;
        }
    } catch (const IoError& e) {
        log << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::domain_error& e) {
        log << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        log << "error: " << e.what() << "\n";
        return kExitNoConvergence;
    }
}

}  // namespace shardgame
