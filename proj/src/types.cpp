#include "shardgame/types.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace shardgame {

double AllocationMatrix::row_total(std::size_t n) const {
    double sum = 0.0;
    for (std::size_t m = 0; m < cols_; ++m) sum += at(n, m);
    return sum;
}

double AllocationMatrix::shard_total(std::size_t m) const {
    double sum = 0.0;
    for (std::size_t n = 0; n < rows_; ++n) sum += at(n, m);
    return sum;
}

double AllocationMatrix::opponents_total(std::size_t m, std::size_t n) const {
    double sum = 0.0;
    for (std::size_t i = 0; i < rows_; ++i)
        if (i != n) sum += at(i, m);
    return sum;
}

std::vector<double> AllocationMatrix::row(std::size_t n) const {
    std::vector<double> out(cols_);
    for (std::size_t m = 0; m < cols_; ++m) out[m] = at(n, m);
    return out;
}

void AllocationMatrix::set_row(std::size_t n, const std::vector<double>& values) {
    if (values.size() != cols_) throw std::domain_error("set_row: length mismatch");
    for (std::size_t m = 0; m < cols_; ++m) at(n, m) = values[m];
}

std::vector<double> AllocationMatrix::shard_totals() const {
    std::vector<double> out(cols_, 0.0);
    for (std::size_t n = 0; n < rows_; ++n)
        for (std::size_t m = 0; m < cols_; ++m) out[m] += at(n, m);
    return out;
}

double AllocationMatrix::grand_total() const {
    double sum = 0.0;
    for (double v : data_) sum += v;
    return sum;
}

double AllocationMatrix::max_abs_diff(const AllocationMatrix& other) const {
    if (other.rows_ != rows_ || other.cols_ != cols_)
        throw std::domain_error("max_abs_diff: shape mismatch");
    double worst = 0.0;
    for (std::size_t i = 0; i < data_.size(); ++i)
        worst = std::max(worst, std::fabs(data_[i] - other.data_[i]));
    return worst;
}

void check_feasible(const AllocationMatrix& allocation,
                    const std::vector<FollowerSpec>& followers,
                    double slack_factor) {
    if (allocation.num_followers() != followers.size())
        throw std::domain_error("check_feasible: follower count mismatch");
    for (std::size_t n = 0; n < followers.size(); ++n) {
        double total = 0.0;
        for (std::size_t m = 0; m < allocation.num_shards(); ++m) {
            double v = allocation.at(n, m);
            if (v < 0.0 || !std::isfinite(v)) {
                std::ostringstream msg;
                msg << "allocation row for follower '" << followers[n].id
                    << "' has a negative or non-finite entry";
                throw std::domain_error(msg.str());
            }
            total += v;
        }
        double cap = followers[n].capacity;
        if (total > cap + slack_factor * cap) {
            std::ostringstream msg;
            msg << "allocation row for follower '" << followers[n].id << "' totals " << total
                << ", above capacity " << cap;
            throw std::domain_error(msg.str());
        }
    }
}

double ScenarioConfig::max_capacity() const {
    double cap = 0.0;
    for (const auto& f : followers) cap = std::max(cap, f.capacity);
    return cap;
}

double ScenarioConfig::effective_br_tolerance() const {
    if (br_tolerance > 0.0) return br_tolerance;
    return 1e-6 * max_capacity();
}

void ScenarioConfig::validate() const {
    if (followers.empty()) throw std::domain_error("scenario needs at least one follower");
    if (shards.empty()) throw std::domain_error("scenario needs at least one shard");
    for (std::size_t n = 0; n < followers.size(); ++n) {
        const auto& f = followers[n];
        if (!(f.capacity > 0.0))
            throw std::domain_error("follower '" + f.id + "': capacity must be > 0");
        if (!(f.unit_cost > 0.0))
            throw std::domain_error("follower '" + f.id + "': unit_cost must be > 0");
        for (std::size_t i = 0; i < n; ++i)
            if (followers[i].id == f.id)
                throw std::domain_error("duplicate follower id '" + f.id + "'");
    }
    for (std::size_t m = 0; m < shards.size(); ++m) {
        const auto& s = shards[m];
        if (!(s.alpha > 0.0))
            throw std::domain_error("shard '" + s.id + "': alpha must be > 0");
        for (std::size_t i = 0; i < m; ++i)
            if (shards[i].id == s.id) throw std::domain_error("duplicate shard id '" + s.id + "'");
    }
    if (!(epsilon_grain > 0.0)) throw std::domain_error("epsilon_grain must be > 0");
    if (br_tolerance < 0.0) throw std::domain_error("br_tolerance must be >= 0");
    if (max_sweeps < 1) throw std::domain_error("max_sweeps must be >= 1");
    if (payment_grid_max < 1) throw std::domain_error("payment_grid_max must be >= 1");
    if (payments) {
        if (payments->size() != shards.size())
            throw std::domain_error("payments length does not match shard count");
        for (std::size_t m = 0; m < payments->size(); ++m)
            if ((*payments)[m] < 0.0)
                throw std::domain_error("payment for shard '" + shards[m].id +
                                        "' must be >= 0");
    }
}

}  // namespace shardgame
