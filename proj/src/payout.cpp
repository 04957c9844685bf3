#include "shardgame/payout.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "shardgame/utility.hpp"

namespace shardgame {

double PayoutLedger::worst_relative_error() const {
    double worst = 0.0;
    for (const auto& c : cells_) worst = std::max(worst, c.relative_error);
    return worst;
}

PayoutLedger simulate_pay_per_share(const AllocationMatrix& allocation,
                                    const PaymentVector& payments, double shares_per_unit,
                                    std::uint64_t rounds, std::uint64_t seed,
                                    bool deterministic) {
    const std::size_t n_count = allocation.num_followers();
    const std::size_t m_count = allocation.num_shards();
    if (payments.size() != m_count)
        throw std::domain_error("simulate_pay_per_share: payments length mismatch");
    if (!(shares_per_unit > 0.0))
        throw std::domain_error("simulate_pay_per_share: shares_per_unit must be > 0");
    if (rounds < 1) throw std::domain_error("simulate_pay_per_share: rounds must be >= 1");
    for (const double v : allocation.values())
        if (v < 0.0 || !std::isfinite(v))
            throw std::domain_error("simulate_pay_per_share: bad allocation entry");

    PayoutLedger ledger(n_count, m_count);
    std::mt19937_64 rng(seed);

    std::vector<double> paid_total(n_count * m_count, 0.0);
    std::vector<std::uint64_t> shares_total(n_count * m_count, 0);
    std::vector<double> round_shares(n_count, 0.0);

    // Draw order is fixed (round, shard, follower) so a seed pins the output.
    for (std::uint64_t round = 0; round < rounds; ++round) {
        for (std::size_t m = 0; m < m_count; ++m) {
            double total_shares = 0.0;
            for (std::size_t n = 0; n < n_count; ++n) {
                double mean = shares_per_unit * allocation.at(n, m);
                double s;
                if (deterministic) {
                    s = mean;
                } else if (mean > 0.0) {
                    std::poisson_distribution<long long> poisson(mean);
                    long long k = poisson(rng);
                    shares_total[n * m_count + m] += std::uint64_t(k);
                    s = double(k);
                } else {
                    s = 0.0;
                }
                round_shares[n] = s;
                total_shares += s;
            }
            if (total_shares <= 0.0) continue;  // nobody submitted, prize held back
            ledger.set_paying_rounds(m, ledger.paying_rounds(m) + 1);

            // Last contributor gets the remainder so each round pays out
            // exactly the shard's prize.
            double remaining = payments[m];
            std::size_t last = n_count;
            for (std::size_t n = n_count; n-- > 0;)
                if (round_shares[n] > 0.0) {
                    last = n;
                    break;
                }
            for (std::size_t n = 0; n < n_count; ++n) {
                if (round_shares[n] <= 0.0) continue;
                double pay = (n == last) ? remaining
                                         : payments[m] * round_shares[n] / total_shares;
                remaining -= pay;
                paid_total[n * m_count + m] += pay;
            }
        }
    }

    for (std::size_t n = 0; n < n_count; ++n) {
        for (std::size_t m = 0; m < m_count; ++m) {
            PayoutCell& cell = ledger.at(n, m);
            cell.expected_tokens =
                shard_payoff(allocation.at(n, m), allocation.opponents_total(m, n), payments[m]);
            cell.shares_observed = shares_total[n * m_count + m];
            std::uint64_t k = ledger.paying_rounds(m);
            cell.simulated_tokens = k > 0 ? paid_total[n * m_count + m] / double(k) : 0.0;
            cell.relative_error = std::fabs(cell.simulated_tokens - cell.expected_tokens) /
                                  std::max(cell.expected_tokens, 1e-12);
        }
    }
    return ledger;
}

}  // namespace shardgame
