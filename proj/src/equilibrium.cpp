#include "shardgame/equilibrium.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "shardgame/best_response.hpp"
#include "shardgame/utility.hpp"

namespace shardgame {

namespace {

BestResponseInput make_input(const ScenarioConfig& config, const PaymentVector& payments,
                             const AllocationMatrix& state, std::size_t n) {
    BestResponseInput in;
    in.payments = payments;
    in.opponents_totals.resize(state.num_shards());
    for (std::size_t m = 0; m < state.num_shards(); ++m)
        in.opponents_totals[m] = state.opponents_total(m, n);
    in.unit_cost = config.followers[n].unit_cost;
    in.capacity = config.followers[n].capacity;
    in.epsilon_grain = config.epsilon_grain;
    in.tolerance = config.effective_br_tolerance();
    return in;
}

AllocationMatrix uniform_start(const ScenarioConfig& config) {
    const std::size_t m_count = config.num_shards();
    AllocationMatrix state(config.num_followers(), m_count);
    for (std::size_t n = 0; n < config.num_followers(); ++n) {
        double v = config.followers[n].capacity / (2.0 * double(m_count));
        for (std::size_t m = 0; m < m_count; ++m) state.at(n, m) = v;
    }
    return state;
}

// Simultaneous best-response gap against a frozen state. Zero means every
// follower is already playing a best response.
double fixed_point_residual(const ScenarioConfig& config, const PaymentVector& payments,
                            const AllocationMatrix& state) {
    double residual = 0.0;
    for (std::size_t n = 0; n < config.num_followers(); ++n) {
        std::vector<double> reply = best_response(make_input(config, payments, state, n));
        for (std::size_t m = 0; m < state.num_shards(); ++m)
            residual = std::max(residual, std::fabs(reply[m] - state.at(n, m)));
    }
    return residual;
}

AllocationMatrix random_feasible_start(const ScenarioConfig& config, std::mt19937_64& rng) {
    const std::size_t m_count = config.num_shards();
    AllocationMatrix state(config.num_followers(), m_count);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> load(0.05, 0.95);
    for (std::size_t n = 0; n < config.num_followers(); ++n) {
        std::vector<double> weights(m_count);
        double sum = 0.0;
        for (std::size_t m = 0; m < m_count; ++m) {
            weights[m] = 0.05 + unit(rng);
            sum += weights[m];
        }
        double total = load(rng) * config.followers[n].capacity;
        for (std::size_t m = 0; m < m_count; ++m)
            state.at(n, m) = total * weights[m] / sum;
    }
    return state;
}

// Interior sample for curvature probes: entries bounded away from zero, rows
// bounded away from capacity, so every shard is funded by everyone.
AllocationMatrix interior_sample(const ScenarioConfig& config, std::mt19937_64& rng) {
    const std::size_t m_count = config.num_shards();
    AllocationMatrix state(config.num_followers(), m_count);
    std::uniform_real_distribution<double> frac(0.05, 0.95);
    for (std::size_t n = 0; n < config.num_followers(); ++n)
        for (std::size_t m = 0; m < m_count; ++m)
            state.at(n, m) = frac(rng) * config.followers[n].capacity / double(m_count);
    return state;
}

double max_symmetric_eigenvalue(const Eigen::MatrixXd& sym) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym);
    return solver.eigenvalues().maxCoeff();
}

}  // namespace

EquilibriumResult solve_followers_equilibrium(const ScenarioConfig& config,
                                              const PaymentVector& payments,
                                              const std::optional<AllocationMatrix>& init,
                                              const SweepObserver& observer) {
    config.validate();
    if (payments.size() != config.num_shards())
        throw std::domain_error("solve_followers_equilibrium: payments length mismatch");
    for (double p : payments)
        if (p < 0.0) throw std::domain_error("solve_followers_equilibrium: negative payment");

    AllocationMatrix state = init ? *init : uniform_start(config);
    if (init) check_feasible(state, config.followers);

    const double tol = config.effective_br_tolerance();
    EquilibriumResult result;
    result.residual = std::numeric_limits<double>::infinity();
    if (observer) observer(0, state);

    for (int sweep = 1; sweep <= config.max_sweeps; ++sweep) {
        for (std::size_t n = 0; n < config.num_followers(); ++n)
            state.set_row(n, best_response(make_input(config, payments, state, n)));
        if (observer) observer(sweep, state);
        result.sweeps = sweep;
        result.residual = fixed_point_residual(config, payments, state);
        if (result.residual <= tol) {
            result.converged = true;
            break;
        }
    }

    result.allocation = std::move(state);
    result.follower_utilities.resize(config.num_followers());
    for (std::size_t n = 0; n < config.num_followers(); ++n)
        result.follower_utilities[n] =
            follower_utility(n, result.allocation, payments, config.followers);
    result.leader_utility =
        leader_utility(result.allocation, payments, config.shards, config.leader_variant);
    return result;
}

UniquenessReport uniqueness_probe(const ScenarioConfig& config, const PaymentVector& payments,
                                  int num_seeds) {
    if (num_seeds < 2) throw std::domain_error("uniqueness_probe: num_seeds must be >= 2");
    std::mt19937_64 rng(config.rng_seed ^ 0x9e3779b97f4a7c15ull);

    UniquenessReport report;
    report.num_runs = num_seeds;
    std::vector<AllocationMatrix> converged;
    for (int s = 0; s < num_seeds; ++s) {
        AllocationMatrix start = random_feasible_start(config, rng);
        EquilibriumResult run = solve_followers_equilibrium(config, payments, start);
        if (run.converged) converged.push_back(std::move(run.allocation));
    }
    report.num_converged = int(converged.size());
    report.all_converged = report.num_converged == num_seeds;
    for (std::size_t a = 0; a < converged.size(); ++a)
        for (std::size_t b = a + 1; b < converged.size(); ++b)
            report.max_deviation =
                std::max(report.max_deviation, converged[a].max_abs_diff(converged[b]));
    return report;
}

std::vector<std::vector<double>> numerical_own_hessian(
    std::size_t n, const AllocationMatrix& allocation, const PaymentVector& payments,
    const std::vector<FollowerSpec>& followers) {
    const std::size_t m_count = allocation.num_shards();
    const double h = 1e-4 * followers[n].capacity;

    AllocationMatrix work = allocation;
    auto eval = [&](std::size_t j, double dj, std::size_t k, double dk) {
        work.at(n, j) += dj;
        work.at(n, k) += dk;
        double u = follower_utility(n, work, payments, followers);
        work.at(n, j) -= dj;
        work.at(n, k) -= dk;
        return u;
    };

    std::vector<std::vector<double>> hess(m_count, std::vector<double>(m_count, 0.0));
    const double base = follower_utility(n, allocation, payments, followers);
    for (std::size_t j = 0; j < m_count; ++j) {
        hess[j][j] = (eval(j, h, j, 0.0) - 2.0 * base + eval(j, -h, j, 0.0)) / (h * h);
        for (std::size_t k = j + 1; k < m_count; ++k) {
            double v = (eval(j, h, k, h) - eval(j, h, k, -h) - eval(j, -h, k, h) +
                        eval(j, -h, k, -h)) /
                       (4.0 * h * h);
            hess[j][k] = v;
            hess[k][j] = v;
        }
    }
    return hess;
}

ConcavityReport concavity_check(const ScenarioConfig& config, const PaymentVector& payments,
                                int num_samples) {
    config.validate();
    if (payments.size() != config.num_shards())
        throw std::domain_error("concavity_check: payments length mismatch");
    std::mt19937_64 rng(config.rng_seed ^ 0xc2b2ae3d27d4eb4full);

    ConcavityReport report;
    report.samples = num_samples;
    report.max_eigenvalue = -std::numeric_limits<double>::infinity();
    const std::size_t m_count = config.num_shards();
    for (int s = 0; s < num_samples; ++s) {
        AllocationMatrix point = interior_sample(config, rng);
        for (std::size_t n = 0; n < config.num_followers(); ++n) {
            auto hess = numerical_own_hessian(n, point, payments, config.followers);
            Eigen::MatrixXd h(m_count, m_count);
            for (std::size_t j = 0; j < m_count; ++j)
                for (std::size_t k = 0; k < m_count; ++k) h(j, k) = hess[j][k];
            report.max_eigenvalue =
                std::max(report.max_eigenvalue, max_symmetric_eigenvalue(h));
        }
    }
    report.pass = report.max_eigenvalue <= 1e-6;
    return report;
}

RosenReport rosen_dsc_check(const ScenarioConfig& config, const PaymentVector& payments,
                            const std::vector<double>& weights, int num_samples) {
    config.validate();
    if (payments.size() != config.num_shards())
        throw std::domain_error("rosen_dsc_check: payments length mismatch");
    if (weights.size() != config.num_followers())
        throw std::domain_error("rosen_dsc_check: weights length mismatch");
    for (double w : weights)
        if (!(w > 0.0)) throw std::domain_error("rosen_dsc_check: weights must be > 0");

    std::mt19937_64 rng(config.rng_seed ^ 0x165667b19e3779f9ull);
    const std::size_t n_count = config.num_followers();
    const std::size_t m_count = config.num_shards();
    const std::size_t dim = n_count * m_count;

    // Weighted pseudo-gradient, stacked follower by follower.
    auto pseudo_gradient = [&](const AllocationMatrix& point) {
        Eigen::VectorXd g(dim);
        for (std::size_t n = 0; n < n_count; ++n) {
            auto grad = follower_utility_gradient(n, point, payments, config.followers);
            for (std::size_t m = 0; m < m_count; ++m) g(n * m_count + m) = weights[n] * grad[m];
        }
        return g;
    };

    RosenReport report;
    report.samples = num_samples;
    report.max_eigenvalue = -std::numeric_limits<double>::infinity();
    for (int s = 0; s < num_samples; ++s) {
        AllocationMatrix point = interior_sample(config, rng);
        Eigen::MatrixXd jac(dim, dim);
        for (std::size_t j = 0; j < dim; ++j) {
            std::size_t n = j / m_count;
            std::size_t m = j % m_count;
            double h = 1e-4 * config.followers[n].capacity;
            AllocationMatrix bumped = point;
            bumped.at(n, m) += h;
            Eigen::VectorXd plus = pseudo_gradient(bumped);
            bumped.at(n, m) -= 2.0 * h;
            Eigen::VectorXd minus = pseudo_gradient(bumped);
            jac.col(j) = (plus - minus) / (2.0 * h);
        }
        Eigen::MatrixXd sym = jac + jac.transpose();
        report.max_eigenvalue = std::max(report.max_eigenvalue, max_symmetric_eigenvalue(sym));
    }
    report.pass = report.max_eigenvalue < 0.0;
    report.degenerate = std::fabs(report.max_eigenvalue) <= 1e-8;
    return report;
}

}  // namespace shardgame
