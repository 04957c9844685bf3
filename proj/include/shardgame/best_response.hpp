#ifndef SHARDGAME_BEST_RESPONSE_HPP
#define SHARDGAME_BEST_RESPONSE_HPP

#include "shardgame/types.hpp"

namespace shardgame {

/// One follower's view of the game: payments, everyone else's totals,
/// and its own cost/capacity.
struct BestResponseInput {
    PaymentVector payments;
    std::vector<double> opponents_totals;  // T_m, resource units
    double unit_cost = 0.0;                // C, > 0
    double capacity = 0.0;                 // R, > 0
    double epsilon_grain = 1e-6;           // entry amount for unfunded shards
    double tolerance = 0.0;                // budget-match tolerance; <= 0: 1e-6 * capacity

    double effective_tolerance() const {
        return tolerance > 0.0 ? tolerance : 1e-6 * capacity;
    }
};

/// Utility-maximizing allocation over {r >= 0, sum r <= R}.
///
/// Water-filling closed form: r_m(lambda) = max(0, sqrt(P_m T_m / (C + lambda)) - T_m)
/// on shards with T_m > 0; lambda = 0 when the budget is slack, otherwise found by
/// bisection so the row exactly spends the budget. Shards with T_m = 0 and P_m > 0
/// get the epsilon grain; shards with P_m = 0 get nothing.
std::vector<double> best_response(const BestResponseInput& input);

struct ProjectedGradientResult {
    std::vector<double> allocation;
    bool converged = false;
    int iterations = 0;
    double gradient_mapping_norm = 0.0;
};

/// Independent check on best_response: fixed-step projected gradient ascent
/// with Euclidean projection onto {r >= 0, sum r <= R}. Requires T_m > 0 on
/// every shard. step <= 0 picks 1 / L from the instance's curvature bound.
ProjectedGradientResult projected_gradient_oracle(const BestResponseInput& input, double step,
                                                  int max_iterations);

/// Euclidean projection onto {r >= 0, sum r <= budget}.
std::vector<double> project_to_budget(const std::vector<double>& point, double budget);

}  // namespace shardgame

#endif
