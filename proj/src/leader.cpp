#include "shardgame/leader.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace shardgame {

namespace {

struct Evaluation {
    double utility = 0.0;
    bool converged = false;
    EquilibriumResult equilibrium;
};

Evaluation evaluate(const ScenarioConfig& config, const PaymentVector& payments,
                    std::vector<TraceEntry>& trace) {
    Evaluation eval;
    eval.equilibrium = solve_followers_equilibrium(config, payments);
    eval.converged = eval.equilibrium.converged;
    eval.utility = eval.equilibrium.leader_utility;
    trace.push_back({payments, eval.utility, eval.converged});
    return eval;
}

}  // namespace

LeaderSearchResult algorithm1_search(const ScenarioConfig& config) {
    config.validate();
    const std::size_t m_count = config.num_shards();
    if (config.payment_grid_max < int(m_count))
        throw std::domain_error("algorithm1_search: payment_grid_max must be >= shard count");

    LeaderSearchResult result;
    PaymentVector current(m_count, 1.0);

    Evaluation eval = evaluate(config, current, result.trace);
    if (!eval.converged)
        throw std::runtime_error("algorithm1_search: no equilibrium at the starting payments");
    result.best_payments = current;
    result.best_utility = eval.utility;
    result.equilibrium = std::move(eval.equilibrium);

    bool cap_reached = false;
    while (!cap_reached) {
        bool improved_this_pass = false;
        for (std::size_t m = 0; m < m_count; ++m) {
            if (current[m] + 1.0 > double(config.payment_grid_max)) {
                cap_reached = true;
                continue;
            }
            PaymentVector candidate = current;
            candidate[m] += 1.0;
            Evaluation trial = evaluate(config, candidate, result.trace);
            if (!trial.converged) continue;
            if (trial.utility > result.best_utility) {
                current = candidate;
                result.best_payments = candidate;
                result.best_utility = trial.utility;
                result.equilibrium = std::move(trial.equilibrium);
                improved_this_pass = true;
                if (current[m] >= double(config.payment_grid_max)) cap_reached = true;
            }
        }
        if (!improved_this_pass) break;
    }
    return result;
}

TullockEquilibrium tullock_equilibrium_closed_form(double payment,
                                                   const std::vector<double>& unit_costs) {
    if (!(payment > 0.0))
        throw std::domain_error("tullock_equilibrium_closed_form: payment must be > 0");
    for (double c : unit_costs)
        if (!(c > 0.0))
            throw std::domain_error("tullock_equilibrium_closed_form: costs must be > 0");

    TullockEquilibrium eq;
    eq.contributions.assign(unit_costs.size(), 0.0);
    if (unit_costs.size() < 2) return eq;  // degenerate contest, not applicable
    eq.applicable = true;

    std::vector<std::size_t> order(unit_costs.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return unit_costs[a] < unit_costs[b]; });

    // Grow the active set from the cheapest pair until the entry condition
    // c_i * X < payment would fail for the next candidate.
    double cost_sum = unit_costs[order[0]] + unit_costs[order[1]];
    std::size_t active = 2;
    double total = payment * double(active - 1) / cost_sum;
    for (std::size_t k = active; k < order.size(); ++k) {
        double c = unit_costs[order[k]];
        double trial_sum = cost_sum + c;
        double trial_total = payment * double(k) / trial_sum;
        if (c * trial_total >= payment) break;
        cost_sum = trial_sum;
        active = k + 1;
        total = trial_total;
    }

    eq.total = total;
    for (std::size_t k = 0; k < active; ++k) {
        std::size_t i = order[k];
        eq.contributions[i] = std::max(0.0, total * (1.0 - unit_costs[i] * total / payment));
    }
    return eq;
}

InteriorBenchmark analytic_interior_benchmark(const std::vector<ShardSpec>& shards,
                                              const std::vector<FollowerSpec>& followers) {
    InteriorBenchmark bench;
    bench.payments.resize(shards.size());
    bench.predicted_shard_totals.assign(shards.size(), 0.0);
    bench.predicted_allocation = AllocationMatrix(followers.size(), shards.size());

    std::vector<double> costs(followers.size());
    for (std::size_t n = 0; n < followers.size(); ++n) costs[n] = followers[n].unit_cost;

    for (std::size_t m = 0; m < shards.size(); ++m) {
        bench.payments[m] = shards[m].alpha;
        TullockEquilibrium eq = tullock_equilibrium_closed_form(shards[m].alpha, costs);
        if (!eq.applicable) return bench;  // applicable stays false
        bench.predicted_shard_totals[m] = eq.total;
        for (std::size_t n = 0; n < followers.size(); ++n)
            bench.predicted_allocation.at(n, m) = eq.contributions[n];
    }
    for (std::size_t n = 0; n < followers.size(); ++n)
        if (bench.predicted_allocation.row_total(n) >= followers[n].capacity)
            return bench;  // a capacity binds, prediction not valid

    bench.applicable = true;
    return bench;
}

}  // namespace shardgame
