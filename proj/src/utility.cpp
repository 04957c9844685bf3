#include "shardgame/utility.hpp"

#include <cmath>

namespace shardgame {

double shard_payoff(double r, double others_total, double payment) {
    if (r < 0.0 || others_total < 0.0 || payment < 0.0)
        throw std::domain_error("shard_payoff: negative input");
    double pool = r + others_total;
    if (pool <= 0.0) return 0.0;
    return r / pool * payment;
}

double follower_utility_local(const std::vector<double>& own,
                              const std::vector<double>& opponents_totals,
                              const PaymentVector& payments, double unit_cost) {
    if (own.size() != opponents_totals.size() || own.size() != payments.size())
        throw std::domain_error("follower_utility: length mismatch");
    double utility = 0.0;
    for (std::size_t m = 0; m < own.size(); ++m)
        utility += shard_payoff(own[m], opponents_totals[m], payments[m]) - unit_cost * own[m];
    return utility;
}

double follower_utility(std::size_t n, const AllocationMatrix& allocation,
                        const PaymentVector& payments,
                        const std::vector<FollowerSpec>& followers) {
    if (n >= allocation.num_followers() || n >= followers.size())
        throw std::domain_error("follower_utility: follower index out of range");
    if (payments.size() != allocation.num_shards())
        throw std::domain_error("follower_utility: payments length mismatch");
    double utility = 0.0;
    for (std::size_t m = 0; m < allocation.num_shards(); ++m) {
        double r = allocation.at(n, m);
        double others = allocation.opponents_total(m, n);
        utility += shard_payoff(r, others, payments[m]) - followers[n].unit_cost * r;
    }
    return utility;
}

std::vector<double> follower_gradient_local(const std::vector<double>& own,
                                            const std::vector<double>& opponents_totals,
                                            const PaymentVector& payments, double unit_cost) {
    if (own.size() != opponents_totals.size() || own.size() != payments.size())
        throw std::domain_error("follower_gradient: length mismatch");
    std::vector<double> grad(own.size());
    for (std::size_t m = 0; m < own.size(); ++m) {
        double pool = own[m] + opponents_totals[m];
        double share_term = pool > 0.0 ? payments[m] * opponents_totals[m] / (pool * pool) : 0.0;
        grad[m] = share_term - unit_cost;
    }
    return grad;
}

std::vector<double> follower_utility_gradient(std::size_t n,
                                              const AllocationMatrix& allocation,
                                              const PaymentVector& payments,
                                              const std::vector<FollowerSpec>& followers) {
    if (n >= allocation.num_followers() || n >= followers.size())
        throw std::domain_error("follower_utility_gradient: follower index out of range");
    std::vector<double> opponents(allocation.num_shards());
    for (std::size_t m = 0; m < allocation.num_shards(); ++m)
        opponents[m] = allocation.opponents_total(m, n);
    return follower_gradient_local(allocation.row(n), opponents, payments,
                                   followers[n].unit_cost);
}

double leader_utility_from_totals(const std::vector<double>& shard_totals,
                                  const PaymentVector& payments,
                                  const std::vector<ShardSpec>& shards, LeaderVariant variant) {
    if (payments.size() != shards.size() || shard_totals.size() != shards.size())
        throw std::domain_error("leader_utility: payments/shards length mismatch");
    double utility = 0.0;
    for (std::size_t m = 0; m < shards.size(); ++m) {
        double x = shard_totals[m];
        if (variant == LeaderVariant::Log)
            utility += shards[m].alpha * std::log(std::max(x, kLogFloor)) - payments[m];
        else
            utility += shards[m].alpha * x - payments[m];
    }
    return utility;
}

double leader_utility(const AllocationMatrix& allocation, const PaymentVector& payments,
                      const std::vector<ShardSpec>& shards, LeaderVariant variant) {
    if (allocation.num_shards() != shards.size())
        throw std::domain_error("leader_utility: allocation/shards length mismatch");
    return leader_utility_from_totals(allocation.shard_totals(), payments, shards, variant);
}

}  // namespace shardgame
