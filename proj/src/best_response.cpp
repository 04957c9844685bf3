#include "shardgame/best_response.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "shardgame/utility.hpp"

namespace shardgame {

namespace {

void validate_input(const BestResponseInput& in) {
    if (in.payments.size() != in.opponents_totals.size())
        throw std::domain_error("best_response: payments/opponents length mismatch");
    if (!(in.unit_cost > 0.0)) throw std::domain_error("best_response: unit_cost must be > 0");
    if (!(in.capacity > 0.0)) throw std::domain_error("best_response: capacity must be > 0");
    for (double p : in.payments)
        if (p < 0.0) throw std::domain_error("best_response: negative payment");
    for (double t : in.opponents_totals)
        if (t < 0.0) throw std::domain_error("best_response: negative opponents total");
}

// Stationarity solution at multiplier lambda, clipped at zero.
double fill_level(double payment, double others, double cost, double lambda) {
    double root = std::sqrt(payment * others / (cost + lambda));
    return std::max(0.0, root - others);
}

}  // namespace

std::vector<double> best_response(const BestResponseInput& in) {
    validate_input(in);
    const std::size_t m_count = in.payments.size();
    std::vector<double> row(m_count, 0.0);

    // Unfunded-but-paid shards get the entry grain; winner-takes-the-pot there,
    // so any positive amount beats staying out and the grain pins a unique choice.
    std::vector<std::size_t> contested;
    contested.reserve(m_count);
    std::size_t grains = 0;
    for (std::size_t m = 0; m < m_count; ++m) {
        if (in.payments[m] <= 0.0) continue;
        if (in.opponents_totals[m] > 0.0)
            contested.push_back(m);
        else
            ++grains;
    }
    double grain = grains > 0 ? std::min(in.epsilon_grain, in.capacity / (2.0 * double(grains)))
                              : 0.0;
    for (std::size_t m = 0; m < m_count; ++m)
        if (in.payments[m] > 0.0 && in.opponents_totals[m] <= 0.0) row[m] = grain;

    double budget = in.capacity - grain * double(grains);
    if (contested.empty() || budget <= 0.0) return row;

    auto demand = [&](double lambda) {
        double total = 0.0;
        for (std::size_t m : contested)
            total += fill_level(in.payments[m], in.opponents_totals[m], in.unit_cost, lambda);
        return total;
    };

    if (demand(0.0) <= budget) {
        for (std::size_t m : contested)
            row[m] = fill_level(in.payments[m], in.opponents_totals[m], in.unit_cost, 0.0);
        return row;
    }

    // Budget binds: bisect the multiplier. Demand is continuous and
    // non-increasing in lambda and vanishes as lambda grows.
    double root_max = 0.0;
    for (std::size_t m : contested)
        root_max = std::max(root_max, std::sqrt(in.payments[m] * in.opponents_totals[m]));
    double hi = in.unit_cost * (root_max / in.epsilon_grain - 1.0);
    hi = std::max(hi, 1.0);
    for (int i = 0; i < 200 && demand(hi) > budget; ++i) hi *= 2.0;

    const double tol = in.effective_tolerance();
    double lo = 0.0;
    double lambda = hi;
    bool matched = false;
    for (int iter = 0; iter < 200; ++iter) {
        lambda = 0.5 * (lo + hi);
        double total = demand(lambda);
        if (std::fabs(total - budget) <= tol) {
            matched = true;
            break;
        }
        if (total > budget)
            lo = lambda;
        else
            hi = lambda;
    }
    if (!matched) {
        lambda = hi;  // demand(hi) <= budget, keep the feasible side
        if (std::fabs(demand(lambda) - budget) > std::max(tol, 1e-9 * in.capacity))
            throw std::runtime_error("best_response: bisection failed to match the budget");
    }

    double total = 0.0;
    for (std::size_t m : contested) {
        row[m] = fill_level(in.payments[m], in.opponents_totals[m], in.unit_cost, lambda);
        total += row[m];
    }
    if (total > budget) {
        double scale = budget / total;
        for (std::size_t m : contested) row[m] *= scale;
    }
    return row;
}

std::vector<double> project_to_budget(const std::vector<double>& point, double budget) {
    std::vector<double> clipped(point.size());
    double clipped_sum = 0.0;
    for (std::size_t i = 0; i < point.size(); ++i) {
        clipped[i] = std::max(0.0, point[i]);
        clipped_sum += clipped[i];
    }
    if (clipped_sum <= budget) return clipped;

    // On the simplex face: threshold found from the sorted prefix sums.
    std::vector<double> sorted(point);
    std::sort(sorted.begin(), sorted.end(), std::greater<double>());
    double prefix = 0.0;
    double tau = 0.0;
    for (std::size_t j = 0; j < sorted.size(); ++j) {
        prefix += sorted[j];
        double candidate = (prefix - budget) / double(j + 1);
        if (j + 1 == sorted.size() || sorted[j + 1] <= candidate) {
            tau = candidate;
            break;
        }
    }
    std::vector<double> out(point.size());
    for (std::size_t i = 0; i < point.size(); ++i) out[i] = std::max(0.0, point[i] - tau);
    return out;
}

ProjectedGradientResult projected_gradient_oracle(const BestResponseInput& in, double step,
                                                  int max_iterations) {
    validate_input(in);
    const std::size_t m_count = in.payments.size();

    if (step <= 0.0) {
        // Curvature bound: |d2/dr2| = 2 P T / (r + T)^3 <= 2 P / T^2.
        double lipschitz = 0.0;
        for (std::size_t m = 0; m < m_count; ++m)
            if (in.opponents_totals[m] > 0.0)
                lipschitz = std::max(lipschitz, 2.0 * in.payments[m] /
                                                    (in.opponents_totals[m] *
                                                     in.opponents_totals[m]));
        step = lipschitz > 0.0 ? 1.0 / lipschitz : 1.0;
    }

    std::vector<double> iterate(m_count, in.capacity / (2.0 * double(m_count)));
    ProjectedGradientResult result;
    result.gradient_mapping_norm = std::numeric_limits<double>::infinity();
    int iter = 0;
    for (; iter < max_iterations; ++iter) {
        std::vector<double> grad =
            follower_gradient_local(iterate, in.opponents_totals, in.payments, in.unit_cost);
        std::vector<double> moved(m_count);
        for (std::size_t m = 0; m < m_count; ++m) moved[m] = iterate[m] + step * grad[m];
        std::vector<double> next = project_to_budget(moved, in.capacity);

        double mapping_sq = 0.0;
        for (std::size_t m = 0; m < m_count; ++m) {
            double g = (iterate[m] - next[m]) / step;
            mapping_sq += g * g;
        }
        iterate = std::move(next);
        result.gradient_mapping_norm = std::sqrt(mapping_sq);
        if (result.gradient_mapping_norm <= 1e-8) {
            result.converged = true;
            ++iter;
            break;
        }
    }
    result.iterations = iter;
    result.allocation = std::move(iterate);
    return result;
}

}  // namespace shardgame
