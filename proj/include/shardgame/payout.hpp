#ifndef SHARDGAME_PAYOUT_HPP
#define SHARDGAME_PAYOUT_HPP

#include <cstdint>

#include "shardgame/types.hpp"

namespace shardgame {

struct PayoutCell {
    double expected_tokens = 0.0;    // proportional-share value
    double simulated_tokens = 0.0;   // mean payout over rounds that paid
    std::uint64_t shares_observed = 0;
    double relative_error = 0.0;     // |simulated - expected| / max(expected, 1e-12)
};

class PayoutLedger {
public:
    PayoutLedger() = default;
    PayoutLedger(std::size_t followers, std::size_t shards)
        : rows_(followers), cols_(shards), cells_(followers * shards),
          paying_rounds_(shards, 0) {}

    std::size_t num_followers() const { return rows_; }
    std::size_t num_shards() const { return cols_; }
    PayoutCell& at(std::size_t n, std::size_t m) { return cells_[n * cols_ + m]; }
    const PayoutCell& at(std::size_t n, std::size_t m) const { return cells_[n * cols_ + m]; }

    /// Rounds in which shard m had at least one share and paid its prize.
    std::uint64_t paying_rounds(std::size_t m) const { return paying_rounds_[m]; }
    void set_paying_rounds(std::size_t m, std::uint64_t v) { paying_rounds_[m] = v; }

    double worst_relative_error() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<PayoutCell> cells_;
    std::vector<std::uint64_t> paying_rounds_;
};

/// Monte-Carlo pay-per-share run. Each round every follower submits a
/// Poisson(shares_per_unit * r) number of shares per shard; each shard's
/// payment is split in proportion to that round's shares, the full prize
/// every round. With deterministic = true the expected share counts are used
/// directly instead of sampling, which reproduces the proportional payoff
/// exactly.
PayoutLedger simulate_pay_per_share(const AllocationMatrix& allocation,
                                    const PaymentVector& payments, double shares_per_unit,
                                    std::uint64_t rounds, std::uint64_t seed,
                                    bool deterministic = false);

}  // namespace shardgame

#endif
