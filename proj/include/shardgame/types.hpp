#ifndef SHARDGAME_TYPES_HPP
#define SHARDGAME_TYPES_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace shardgame {

/// One resource contributor: capacity R and per-unit operational cost C.
struct FollowerSpec {
    std::string id;
    double capacity = 0.0;   // R, resource units, > 0
    double unit_cost = 0.0;  // C, tokens per resource unit, > 0
};

/// One shard viewed as a prize pool with a priority weight.
struct ShardSpec {
    std::string id;
    double alpha = 0.0;  // priority weight, > 0
};

/// Leader strategy: one payment per shard, in tokens.
using PaymentVector = std::vector<double>;

enum class LeaderVariant { Log, Linear };

/// N x M matrix of per-follower, per-shard contributions (row-major).
class AllocationMatrix {
public:
    AllocationMatrix() = default;
    AllocationMatrix(std::size_t followers, std::size_t shards, double fill = 0.0)
        : rows_(followers), cols_(shards), data_(followers * shards, fill) {}

    std::size_t num_followers() const { return rows_; }
    std::size_t num_shards() const { return cols_; }

    double& at(std::size_t n, std::size_t m) { return data_[n * cols_ + m]; }
    double at(std::size_t n, std::size_t m) const { return data_[n * cols_ + m]; }

    /// Total committed by follower n across shards.
    double row_total(std::size_t n) const;
    /// Total contributed to shard m by everyone.
    double shard_total(std::size_t m) const;
    /// Total contributed to shard m by everyone except follower n.
    double opponents_total(std::size_t m, std::size_t n) const;

    std::vector<double> row(std::size_t n) const;
    void set_row(std::size_t n, const std::vector<double>& values);
    std::vector<double> shard_totals() const;
    double grand_total() const;

    /// Largest per-coordinate difference against another matrix of equal shape.
    double max_abs_diff(const AllocationMatrix& other) const;

    const std::vector<double>& values() const { return data_; }
    std::vector<double>& values() { return data_; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// Checks entries >= 0 and row totals within each follower's capacity
/// (slack factor 1e-9 * R per row). Throws std::domain_error naming the row.
void check_feasible(const AllocationMatrix& allocation,
                    const std::vector<FollowerSpec>& followers,
                    double slack_factor = 1e-9);

struct EquilibriumResult {
    AllocationMatrix allocation;
    int sweeps = 0;
    bool converged = false;
    double residual = 0.0;  // fixed-point residual after the final sweep
    std::vector<double> follower_utilities;
    double leader_utility = 0.0;
};

struct ScenarioConfig {
    std::vector<FollowerSpec> followers;
    std::vector<ShardSpec> shards;
    LeaderVariant leader_variant = LeaderVariant::Log;
    double epsilon_grain = 1e-6;   // entry grain for empty shards, resource units
    double br_tolerance = 0.0;     // <= 0 resolves to 1e-6 * max capacity
    int max_sweeps = 1000;
    int payment_grid_max = 100;    // upper bound of the integer payment grid
    std::uint64_t rng_seed = 0;
    std::optional<PaymentVector> payments;  // fixed payments for follower-stage-only runs

    std::size_t num_followers() const { return followers.size(); }
    std::size_t num_shards() const { return shards.size(); }

    double max_capacity() const;
    double effective_br_tolerance() const;

    /// Throws std::domain_error with a field-anchored message on the first violation.
    void validate() const;
};

}  // namespace shardgame

#endif
