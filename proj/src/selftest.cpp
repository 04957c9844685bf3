#include "shardgame/selftest.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>
#include <sstream>
#include <vector>

#include "shardgame/best_response.hpp"
#include "shardgame/equilibrium.hpp"
#include "shardgame/experiments.hpp"
#include "shardgame/leader.hpp"
#include "shardgame/payout.hpp"
#include "shardgame/utility.hpp"

namespace shardgame {

namespace {

class Criterion {
public:
    Criterion(std::ostream& out, int number, const std::string& title)
        : out_(out), number_(number), title_(title),
          start_(std::chrono::steady_clock::now()) {}

    void require(bool ok, const std::string& detail) {
        if (!ok) failures_.push_back(detail);
    }

    void require_close(double actual, double expected, double tol, const std::string& what) {
        if (!(std::fabs(actual - expected) <= tol)) {
            std::ostringstream msg;
            msg << what << ": got " << actual << ", want " << expected << " +/- " << tol;
            failures_.push_back(msg.str());
        }
    }

    // Returns true when the criterion passed.
    bool finish(double max_seconds) {
        double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                                       start_)
                             .count();
        if (elapsed > max_seconds) {
            std::ostringstream msg;
            msg << "runtime " << elapsed << " s exceeds " << max_seconds << " s";
            failures_.push_back(msg.str());
        }
        char timing[32];
        std::snprintf(timing, sizeof(timing), "%.2f", elapsed);
        out_ << (failures_.empty() ? "[PASS]" : "[FAIL]") << " criterion " << number_ << ": "
             << title_ << " (" << timing << " s)\n";
        for (const auto& f : failures_) out_ << "       - " << f << "\n";
        return failures_.empty();
    }

private:
    std::ostream& out_;
    int number_;
    std::string title_;
    std::chrono::steady_clock::time_point start_;
    std::vector<std::string> failures_;
};

bool criterion1(std::ostream& out) {
    Criterion c(out, 1, "lone follower's best response and utility");
    BestResponseInput in = figure2_input();
    std::vector<double> r = best_response(in);
    c.require_close(r[0], 41.42, 0.01, "allocation to shard 1");
    c.require_close(r[1], 46.41, 0.01, "allocation to shard 2");
    double utility = follower_utility_local(r, in.opponents_totals, in.payments, in.unit_cost);
    c.require_close(utility, 121.68, 0.01, "optimal utility");

    // Independent route: the budget is slack here, so each shard solves
    // sqrt(P T / C) - T on its own.
    double spent = 0.0;
    for (std::size_t m = 0; m < r.size(); ++m) {
        double direct = std::max(
            0.0, std::sqrt(in.payments[m] * in.opponents_totals[m] / in.unit_cost) -
                     in.opponents_totals[m]);
        c.require_close(r[m], direct, 1e-9 * (1.0 + direct), "stationarity closed form");
        spent += r[m];
    }
    c.require(spent < in.capacity, "budget should be slack at this instance");
    return c.finish(1.0);
}

bool criterion2(std::ostream& out) {
    Criterion c(out, 2, "four-follower equilibrium at fixed payments");
    ScenarioConfig config = figure3_scenario();
    EquilibriumResult eq = solve_followers_equilibrium(config, *config.payments);
    c.require(eq.converged, "equilibrium did not converge");
    c.require(eq.sweeps <= 10, "took " + std::to_string(eq.sweeps) + " sweeps, want <= 10");
    double t1 = eq.allocation.row_total(0);
    double t2 = eq.allocation.row_total(1);
    double t3 = eq.allocation.row_total(2);
    double t4 = eq.allocation.row_total(3);
    c.require_close(t1, 100.0, 0.01, "follower 1 total (at capacity)");
    c.require_close(t2, 200.0, 0.01, "follower 2 total (at capacity)");
    c.require(t3 < 300.0 - 0.01, "follower 3 should stay under capacity, got " +
                                     std::to_string(t3));
    c.require(t4 < 500.0 - 0.01, "follower 4 should stay under capacity, got " +
                                     std::to_string(t4));
    c.require(t2 > t3, "follower 2 should out-contribute follower 3");
    return c.finish(5.0);
}

bool criterion3(std::ostream& out, double* fig4_total) {
    Criterion c(out, 3, "payment search with priorities [4, 6]");
    LeaderSearchResult search = algorithm1_search(figure4_scenario());
    c.require_close(search.best_payments[0], 4.0, 1.0, "best payment for shard 1");
    c.require_close(search.best_payments[1], 6.0, 1.0, "best payment for shard 2");
    c.require(search.best_utility >= 19.9 && search.best_utility <= 20.6,
              "best leader utility " + std::to_string(search.best_utility) +
                  " outside [19.9, 20.6]");
    *fig4_total = search.equilibrium.allocation.grand_total();
    return c.finish(60.0);
}

bool criterion4(std::ostream& out, double fig4_total) {
    Criterion c(out, 4, "payment search with priorities [10, 15]");
    LeaderSearchResult search = algorithm1_search(figure5_scenario());
    c.require_close(search.best_payments[0], 11.0, 1.0, "best payment for shard 1");
    c.require_close(search.best_payments[1], 15.0, 1.0, "best payment for shard 2");
    double total = search.equilibrium.allocation.grand_total();
    c.require(fig4_total > 0.0, "missing baseline total from criterion 3");
    if (fig4_total > 0.0)
        c.require(total >= 2.4 * fig4_total,
                  "attracted resources " + std::to_string(total) + " not >= 2.4x baseline " +
                      std::to_string(fig4_total));
    return c.finish(60.0);
}

bool criterion5(std::ostream& out) {
    Criterion c(out, 5, "oracle equivalence on random instances");

    // Gauss-Seidel equilibrium vs the closed-form contest, single shard,
    // capacities generous enough that they never bind.
    std::mt19937_64 rng(0x5eedu);
    std::uniform_int_distribution<int> n_dist(2, 6);
    std::uniform_real_distribution<double> cost_dist(0.25, 1.0);
    std::uniform_real_distribution<double> pay_dist(5.0, 500.0);
    int eq_mismatches = 0;
    int eq_nonconverged = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        int n = n_dist(rng);
        std::vector<double> costs(n);
        for (double& v : costs) v = cost_dist(rng);
        double payment = pay_dist(rng);
        TullockEquilibrium oracle = tullock_equilibrium_closed_form(payment, costs);

        ScenarioConfig config;
        config.shards = {{"s", 1.0}};
        for (int i = 0; i < n; ++i)
            config.followers.push_back(
                {"f" + std::to_string(i), 2.0 * oracle.total + 1.0, costs[i]});
        config.br_tolerance = 1e-6;
        config.max_sweeps = 5000;
        EquilibriumResult eq = solve_followers_equilibrium(config, {payment});
        if (!eq.converged) {
            ++eq_nonconverged;
            continue;
        }
        for (int i = 0; i < n; ++i)
            if (std::fabs(eq.allocation.at(i, 0) - oracle.contributions[i]) > 1e-3) {
                ++eq_mismatches;
                break;
            }
    }
    c.require(eq_nonconverged == 0,
              std::to_string(eq_nonconverged) + "/1000 equilibrium solves did not converge");
    c.require(eq_mismatches == 0,
              std::to_string(eq_mismatches) + "/1000 instances off the contest closed form");

    // Water-filling closed form vs the projected-gradient method.
    std::mt19937_64 rng2(0xace5u);
    std::uniform_int_distribution<int> m_dist(1, 5);
    std::uniform_real_distribution<double> p_dist(50.0, 2000.0);
    std::uniform_real_distribution<double> t_dist(5.0, 500.0);
    std::uniform_real_distribution<double> c_dist(0.1, 5.0);
    std::uniform_real_distribution<double> r_dist(10.0, 1000.0);
    int br_mismatches = 0;
    int br_nonconverged = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        BestResponseInput in;
        int m = m_dist(rng2);
        in.payments.resize(m);
        in.opponents_totals.resize(m);
        for (int j = 0; j < m; ++j) {
            in.payments[j] = p_dist(rng2);
            in.opponents_totals[j] = t_dist(rng2);
        }
        in.unit_cost = c_dist(rng2);
        in.capacity = r_dist(rng2);
        std::vector<double> kkt = best_response(in);
        ProjectedGradientResult pg = projected_gradient_oracle(in, 0.0, 1000000);
        if (!pg.converged) ++br_nonconverged;
        for (int j = 0; j < m; ++j)
            if (std::fabs(kkt[j] - pg.allocation[j]) > 1e-3) {
                ++br_mismatches;
                break;
            }
    }
    c.require(br_nonconverged == 0,
              std::to_string(br_nonconverged) + "/1000 gradient runs hit the iteration cap");
    c.require(br_mismatches == 0,
              std::to_string(br_mismatches) + "/1000 instances off the gradient oracle");
    return c.finish(60.0);
}

bool criterion6(std::ostream& out) {
    Criterion c(out, 6, "equilibrium structure checks (concavity, dsc, uniqueness)");
    ScenarioConfig config = figure3_scenario();
    const PaymentVector& payments = *config.payments;

    ConcavityReport concavity = concavity_check(config, payments, 100);
    c.require(concavity.pass, "own-row Hessian max eigenvalue " +
                                  std::to_string(concavity.max_eigenvalue) + " above 1e-6");

    RosenReport rosen = rosen_dsc_check(
        config, payments, std::vector<double>(config.num_followers(), 1.0), 100);
    c.require(rosen.pass, "symmetrized pseudo-gradient Jacobian max eigenvalue " +
                              std::to_string(rosen.max_eigenvalue) + " not negative");

    UniquenessReport uniq = uniqueness_probe(config, payments, 10);
    c.require(uniq.all_converged, "some probe runs did not converge");
    c.require(uniq.max_deviation <= 1e-3,
              "equilibria from different starts deviate by " +
                  std::to_string(uniq.max_deviation));
    return c.finish(30.0);
}

bool criterion7(std::ostream& out) {
    Criterion c(out, 7, "analytic gradient vs central differences");
    std::mt19937_64 rng(0x90adu);
    std::uniform_int_distribution<int> n_dist(2, 4);
    std::uniform_int_distribution<int> m_dist(1, 4);
    std::uniform_real_distribution<double> r_entry(0.5, 50.0);
    std::uniform_real_distribution<double> p_dist(1.0, 1000.0);
    std::uniform_real_distribution<double> c_dist(0.1, 5.0);

    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        int n_count = n_dist(rng);
        int m_count = m_dist(rng);
        AllocationMatrix alloc(n_count, m_count);
        for (auto& v : alloc.values()) v = r_entry(rng);
        PaymentVector payments(m_count);
        for (auto& p : payments) p = p_dist(rng);
        std::vector<FollowerSpec> followers;
        for (int i = 0; i < n_count; ++i)
            followers.push_back({"f" + std::to_string(i), 1e6, c_dist(rng)});

        std::uniform_int_distribution<int> pick(0, n_count - 1);
        int n = pick(rng);
        std::vector<double> grad = follower_utility_gradient(n, alloc, payments, followers);
        for (int m = 0; m < m_count; ++m) {
            double h = 1e-5 * (1.0 + alloc.at(n, m));
            AllocationMatrix bumped = alloc;
            bumped.at(n, m) += h;
            double up = follower_utility(n, bumped, payments, followers);
            bumped.at(n, m) -= 2.0 * h;
            double down = follower_utility(n, bumped, payments, followers);
            double fd = (up - down) / (2.0 * h);
            double rel = std::fabs(grad[m] - fd) / std::max({1.0, std::fabs(grad[m])});
            worst = std::max(worst, rel);
        }
    }
    c.require(worst <= 1e-6,
              "worst gradient mismatch " + std::to_string(worst) + " above 1e-6 relative");
    return c.finish(10.0);
}

bool criterion8(std::ostream& out) {
    Criterion c(out, 8, "pay-per-share simulation matches the proportional split");
    BestResponseInput in = figure2_input();
    std::vector<double> br = best_response(in);

    AllocationMatrix alloc(2, 2);
    alloc.at(0, 0) = br[0];
    alloc.at(0, 1) = br[1];
    alloc.at(1, 0) = in.opponents_totals[0];
    alloc.at(1, 1) = in.opponents_totals[1];

    PayoutLedger ledger =
        simulate_pay_per_share(alloc, in.payments, 10.0, 100000, 42);
    for (std::size_t n = 0; n < 2; ++n)
        for (std::size_t m = 0; m < 2; ++m) {
            const PayoutCell& cell = ledger.at(n, m);
            c.require(cell.relative_error <= 0.02,
                      "follower " + std::to_string(n) + ", shard " + std::to_string(m) +
                          ": relative error " + std::to_string(cell.relative_error));
        }
    for (std::size_t m = 0; m < 2; ++m) {
        double paid = ledger.at(0, m).simulated_tokens + ledger.at(1, m).simulated_tokens;
        c.require(std::fabs(paid - in.payments[m]) <= 1e-9 * in.payments[m],
                  "shard " + std::to_string(m) + ": per-round payout " + std::to_string(paid) +
                      " drifts from the prize " + std::to_string(in.payments[m]));
        c.require(ledger.paying_rounds(m) == 100000,
                  "shard " + std::to_string(m) + " skipped rounds unexpectedly");
    }
    return c.finish(30.0);
}

}  // namespace

int run_acceptance_suite(std::ostream& out) {
    auto start = std::chrono::steady_clock::now();
    int failures = 0;
    double fig4_total = 0.0;
    if (!criterion1(out)) ++failures;
    if (!criterion2(out)) ++failures;
    if (!criterion3(out, &fig4_total)) ++failures;
    if (!criterion4(out, fig4_total)) ++failures;
    if (!criterion5(out)) ++failures;
    if (!criterion6(out)) ++failures;
    if (!criterion7(out)) ++failures;
    if (!criterion8(out)) ++failures;
    double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    char timing[32];
    std::snprintf(timing, sizeof(timing), "%.2f", elapsed);
    out << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed")
        << " in " << timing << " s\n";
    return failures;
}

}  // namespace shardgame
