#ifndef SHARDGAME_LEADER_HPP
#define SHARDGAME_LEADER_HPP

#include "shardgame/equilibrium.hpp"
#include "shardgame/types.hpp"

namespace shardgame {

struct TraceEntry {
    PaymentVector payments;
    double leader_utility = 0.0;
    bool converged = false;  // inner equilibrium solve converged at this point
};

struct LeaderSearchResult {
    PaymentVector best_payments;
    double best_utility = 0.0;
    EquilibriumResult equilibrium;  // converged equilibrium at best_payments
    std::vector<TraceEntry> trace;  // every payment vector evaluated, in order
};

/// Integer-grid coordinate ascent for the leader.
///
/// Starts from all-ones payments; each pass tries to bump every shard's
/// payment by one token in index order, keeping bumps that raise the leader
/// utility at the re-solved followers' equilibrium. Stops on a pass with no
/// accepted bump, or when a coordinate hits payment_grid_max. Payment
/// vectors whose inner solve does not converge are skipped and flagged.
LeaderSearchResult algorithm1_search(const ScenarioConfig& config);

struct TullockEquilibrium {
    bool applicable = false;  // needs at least two contestants
    std::vector<double> contributions;
    double total = 0.0;
};

/// Closed-form proportional-contest equilibrium for one prize and linear
/// costs, no capacity limits. Active set: cheapest k contestants with
/// X = (k-1) * payment / sum of their costs and c_i < payment / X; each
/// active contestant plays X * (1 - c_i * X / payment).
TullockEquilibrium tullock_equilibrium_closed_form(double payment,
                                                   const std::vector<double>& unit_costs);

struct InteriorBenchmark {
    bool applicable = false;  // false when a capacity would bind at P = alpha
    PaymentVector payments;   // P_m = alpha_m
    std::vector<double> predicted_shard_totals;
    AllocationMatrix predicted_allocation;
};

/// Closed-form cross-check for the log-variant search: when no capacity
/// binds, the shard totals scale linearly in the payment and the optimal
/// payment equals the shard's priority weight.
InteriorBenchmark analytic_interior_benchmark(const std::vector<ShardSpec>& shards,
                                              const std::vector<FollowerSpec>& followers);

}  // namespace shardgame

#endif
