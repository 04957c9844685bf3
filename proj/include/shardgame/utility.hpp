#ifndef SHARDGAME_UTILITY_HPP
#define SHARDGAME_UTILITY_HPP

#include "shardgame/types.hpp"

namespace shardgame {

/// Floor inside the leader's log so empty shards score deeply negative
/// instead of -inf.
inline constexpr double kLogFloor = 1e-12;

/// Proportional-prize payoff: r / (r + others_total) * payment.
/// The empty-shard 0/0 case pays 0.
double shard_payoff(double r, double others_total, double payment);

/// Follower n's total utility: prize shares minus C_n times committed resources.
double follower_utility(std::size_t n, const AllocationMatrix& allocation,
                        const PaymentVector& payments,
                        const std::vector<FollowerSpec>& followers);

/// Partial derivatives of follower n's utility with respect to its own row:
/// d/dr_m = P_m * T_m / (r_m + T_m)^2 - C_n, zero on shards nobody funds.
std::vector<double> follower_utility_gradient(std::size_t n,
                                              const AllocationMatrix& allocation,
                                              const PaymentVector& payments,
                                              const std::vector<FollowerSpec>& followers);

/// Same gradient from a follower's local view (own row + opponents' totals).
std::vector<double> follower_gradient_local(const std::vector<double>& own,
                                            const std::vector<double>& opponents_totals,
                                            const PaymentVector& payments, double unit_cost);

/// Follower utility from the local view, without needing a full matrix.
double follower_utility_local(const std::vector<double>& own,
                              const std::vector<double>& opponents_totals,
                              const PaymentVector& payments, double unit_cost);

/// Leader utility over shard totals X_m. Log variant: sum of
/// alpha_m * ln(max(X_m, kLogFloor)) - P_m; linear variant: alpha_m * X_m - P_m.
double leader_utility(const AllocationMatrix& allocation, const PaymentVector& payments,
                      const std::vector<ShardSpec>& shards, LeaderVariant variant);

/// Leader utility straight from shard totals.
double leader_utility_from_totals(const std::vector<double>& shard_totals,
                                  const PaymentVector& payments,
                                  const std::vector<ShardSpec>& shards, LeaderVariant variant);

}  // namespace shardgame

#endif
