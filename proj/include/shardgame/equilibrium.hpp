#ifndef SHARDGAME_EQUILIBRIUM_HPP
#define SHARDGAME_EQUILIBRIUM_HPP

#include <functional>
#include <optional>

#include "shardgame/types.hpp"

namespace shardgame {

/// Called after the initial state (sweep 0) and after every completed sweep.
using SweepObserver = std::function<void(int sweep, const AllocationMatrix&)>;

/// Gauss-Seidel best-response iteration for the followers' sub-game.
///
/// Rows are replaced in index order, each against the latest opponents' state.
/// After every sweep the fixed-point residual (largest coordinate change a
/// fresh best response against the frozen state would still make) is
/// measured; the solve stops once it drops to br_tolerance. Default start
/// is the interior point r = R / (2M).
EquilibriumResult solve_followers_equilibrium(
    const ScenarioConfig& config, const PaymentVector& payments,
    const std::optional<AllocationMatrix>& init = std::nullopt,
    const SweepObserver& observer = nullptr);

struct UniquenessReport {
    double max_deviation = 0.0;  // worst coordinate gap between converged runs
    int num_runs = 0;
    int num_converged = 0;
    bool all_converged = false;
};

/// Re-solves from random feasible starting points and reports how far apart
/// the converged allocations end up.
UniquenessReport uniqueness_probe(const ScenarioConfig& config, const PaymentVector& payments,
                                  int num_seeds);

struct ConcavityReport {
    double max_eigenvalue = 0.0;  // worst own-row Hessian eigenvalue observed
    bool pass = false;            // max_eigenvalue <= 1e-6
    int samples = 0;
};

/// Samples interior allocations and checks every follower's own-row Hessian
/// (central differences) is negative semidefinite.
ConcavityReport concavity_check(const ScenarioConfig& config, const PaymentVector& payments,
                                int num_samples);

struct RosenReport {
    double max_eigenvalue = 0.0;  // worst eigenvalue of G + G^T observed
    bool pass = false;            // max_eigenvalue < 0
    bool degenerate = false;      // |max_eigenvalue| within noise of zero
    int samples = 0;
};

/// Diagonal strict concavity probe: Jacobian of the weighted pseudo-gradient
/// at sampled interior points, symmetrized, largest eigenvalue must be negative.
RosenReport rosen_dsc_check(const ScenarioConfig& config, const PaymentVector& payments,
                            const std::vector<double>& weights, int num_samples);

/// Central-difference Hessian of follower n's utility in its own row.
/// Step is 1e-4 * R_n. Exposed for direct curvature checks.
std::vector<std::vector<double>> numerical_own_hessian(std::size_t n,
                                                       const AllocationMatrix& allocation,
                                                       const PaymentVector& payments,
                                                       const std::vector<FollowerSpec>& followers);

}  // namespace shardgame

#endif
