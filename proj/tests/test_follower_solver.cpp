#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "shardgame/best_response.hpp"
#include "shardgame/utility.hpp"

using namespace shardgame;

namespace {

BestResponseInput two_shard_input(double capacity) {
    BestResponseInput in;
    in.payments = {1000.0, 2000.0};
    in.opponents_totals = {100.0, 300.0};
    in.unit_cost = 5.0;
    in.capacity = capacity;
    return in;
}

BestResponseInput random_input(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> m_dist(1, 5);
    std::uniform_real_distribution<double> p_dist(50.0, 2000.0);
    std::uniform_real_distribution<double> t_dist(5.0, 500.0);
    std::uniform_real_distribution<double> c_dist(0.1, 5.0);
    std::uniform_real_distribution<double> r_dist(10.0, 1000.0);
    BestResponseInput in;
    int m = m_dist(rng);
    in.payments.resize(m);
    in.opponents_totals.resize(m);
    for (int j = 0; j < m; ++j) {
        in.payments[j] = p_dist(rng);
        in.opponents_totals[j] = t_dist(rng);
    }
    in.unit_cost = c_dist(rng);
    in.capacity = r_dist(rng);
    return in;
}

}  // namespace

TEST_CASE("best response with a slack budget hits the stationarity point") {
    BestResponseInput in = two_shard_input(100.0);
    std::vector<double> r = best_response(in);
    CHECK(r[0] == doctest::Approx(41.42).epsilon(1e-3));
    CHECK(r[1] == doctest::Approx(46.41).epsilon(1e-3));
    CHECK(r[0] + r[1] == doctest::Approx(87.83).epsilon(1e-3));  // budget left over

    // Slack budget means each shard solves sqrt(P T / C) - T independently.
    for (std::size_t m = 0; m < 2; ++m) {
        double direct =
            std::sqrt(in.payments[m] * in.opponents_totals[m] / in.unit_cost) -
            in.opponents_totals[m];
        CHECK(r[m] == doctest::Approx(direct).epsilon(1e-9));
    }
}

TEST_CASE("best response with a binding budget water-fills") {
    BestResponseInput in = two_shard_input(50.0);
    std::vector<double> r = best_response(in);
    CHECK(r[0] == doctest::Approx(30.45).epsilon(2e-3));
    CHECK(r[1] == doctest::Approx(19.55).epsilon(2e-3));
    CHECK(r[0] + r[1] == doctest::Approx(50.0).epsilon(1e-6));

    // Both shards must report the same positive multiplier; reconstruct it
    // from stationarity P T / (r + T)^2 = C + lambda.
    auto multiplier = [&](std::size_t m) {
        double pool = r[m] + in.opponents_totals[m];
        return in.payments[m] * in.opponents_totals[m] / (pool * pool) - in.unit_cost;
    };
    CHECK(multiplier(0) == doctest::Approx(0.876).epsilon(2e-3));
    CHECK(multiplier(1) == doctest::Approx(multiplier(0)).epsilon(1e-4));
}

TEST_CASE("zero payments mean zero contributions") {
    BestResponseInput in;
    in.payments = {0.0, 0.0};
    in.opponents_totals = {10.0, 20.0};
    in.unit_cost = 1.0;
    in.capacity = 100.0;
    std::vector<double> r = best_response(in);
    CHECK(r[0] == 0.0);
    CHECK(r[1] == 0.0);
}

TEST_CASE("entry is not worth it when rivals are too entrenched") {
    BestResponseInput in;
    in.payments = {100.0};
    in.opponents_totals = {1000.0};
    in.unit_cost = 1.0;
    in.capacity = 1e9;
    // Marginal value at zero is P/T = 0.1 < C.
    CHECK(best_response(in)[0] == 0.0);
}

TEST_CASE("unfunded shards with a prize get the entry grain") {
    BestResponseInput in;
    in.payments = {100.0, 50.0, 0.0};
    in.opponents_totals = {0.0, 10.0, 0.0};
    in.unit_cost = 1.0;
    in.capacity = 100.0;
    in.epsilon_grain = 1e-6;
    std::vector<double> r = best_response(in);
    CHECK(r[0] == doctest::Approx(1e-6).epsilon(1e-12));
    CHECK(r[1] == doctest::Approx(std::sqrt(500.0) - 10.0).epsilon(1e-9));
    CHECK(r[2] == 0.0);  // no prize, no entry
}

TEST_CASE("input validation") {
    BestResponseInput in;
    in.payments = {10.0};
    in.opponents_totals = {5.0, 5.0};
    in.unit_cost = 1.0;
    in.capacity = 10.0;
    CHECK_THROWS_AS(best_response(in), std::domain_error);
    in.opponents_totals = {5.0};
    in.unit_cost = 0.0;
    CHECK_THROWS_AS(best_response(in), std::domain_error);
    in.unit_cost = 1.0;
    in.payments = {-1.0};
    CHECK_THROWS_AS(best_response(in), std::domain_error);
}

TEST_CASE("output is always feasible") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 500; ++trial) {
        BestResponseInput in = random_input(rng);
        std::vector<double> r = best_response(in);
        double total = 0.0;
        for (double v : r) {
            CHECK(v >= 0.0);
            total += v;
        }
        CHECK(total <= in.capacity * (1.0 + 1e-9));
    }
}

TEST_CASE("single-shard closed form to machine precision") {
    std::mt19937_64 rng(22);
    std::uniform_real_distribution<double> p_dist(1.0, 2000.0);
    std::uniform_real_distribution<double> t_dist(0.5, 800.0);
    std::uniform_real_distribution<double> c_dist(0.05, 5.0);
    for (int trial = 0; trial < 500; ++trial) {
        BestResponseInput in;
        in.payments = {p_dist(rng)};
        in.opponents_totals = {t_dist(rng)};
        in.unit_cost = c_dist(rng);
        in.capacity = 1e9;  // never binds
        double expected = std::max(
            0.0, std::sqrt(in.payments[0] * in.opponents_totals[0] / in.unit_cost) -
                     in.opponents_totals[0]);
        CHECK(best_response(in)[0] == doctest::Approx(expected).epsilon(1e-9));
    }
}

TEST_CASE("raising a shard's payment never drives the follower away from it") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> bump(1.0, 200.0);
    for (int trial = 0; trial < 200; ++trial) {
        BestResponseInput in = random_input(rng);
        in.capacity = 1e7;  // keep the budget slack so shards stay decoupled
        std::vector<double> base = best_response(in);
        BestResponseInput raised = in;
        raised.payments[0] += bump(rng);
        CHECK(best_response(raised)[0] >= base[0] - 1e-9);
    }
}

TEST_CASE("no random feasible point beats the closed form") {
    std::mt19937_64 rng(24);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 5; ++trial) {
        BestResponseInput in = random_input(rng);
        std::vector<double> r = best_response(in);
        double best =
            follower_utility_local(r, in.opponents_totals, in.payments, in.unit_cost);
        std::size_t m = in.payments.size();
        std::vector<double> point(m);
        for (int probe = 0; probe < 10000; ++probe) {
            double budget = unit(rng) * in.capacity;
            double weight_sum = 0.0;
            for (auto& w : point) {
                w = unit(rng) + 1e-9;
                weight_sum += w;
            }
            for (auto& w : point) w = w / weight_sum * budget;
            double u =
                follower_utility_local(point, in.opponents_totals, in.payments, in.unit_cost);
            CHECK(u <= best + 1e-9 * (1.0 + std::fabs(best)));
        }
    }
}

TEST_CASE("gradient oracle agrees with the closed form") {
    BestResponseInput slack = two_shard_input(100.0);
    ProjectedGradientResult pg = projected_gradient_oracle(slack, 0.0, 1000000);
    CHECK(pg.converged);
    std::vector<double> kkt = best_response(slack);
    CHECK(pg.allocation[0] == doctest::Approx(kkt[0]).epsilon(1e-3));
    CHECK(pg.allocation[1] == doctest::Approx(kkt[1]).epsilon(1e-3));

    BestResponseInput binding = two_shard_input(50.0);
    pg = projected_gradient_oracle(binding, 0.0, 1000000);
    CHECK(pg.converged);
    CHECK(pg.allocation[0] == doctest::Approx(30.45).epsilon(1e-3));
    CHECK(pg.allocation[1] == doctest::Approx(19.55).epsilon(1e-3));

    BestResponseInput nothing;
    nothing.payments = {0.0, 0.0};
    nothing.opponents_totals = {5.0, 5.0};
    nothing.unit_cost = 1.0;
    nothing.capacity = 10.0;
    pg = projected_gradient_oracle(nothing, 0.0, 1000000);
    CHECK(pg.allocation[0] == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(pg.allocation[1] == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("closed form vs gradient oracle over random instances") {
    std::mt19937_64 rng(25);
    int mismatches = 0;
    int capped = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        BestResponseInput in = random_input(rng);
        std::vector<double> kkt = best_response(in);
        ProjectedGradientResult pg = projected_gradient_oracle(in, 0.0, 1000000);
        if (!pg.converged) ++capped;
        for (std::size_t j = 0; j < kkt.size(); ++j)
            if (std::fabs(kkt[j] - pg.allocation[j]) > 1e-3) {
                ++mismatches;
                break;
            }
    }
    CHECK(capped == 0);
    CHECK(mismatches == 0);
}

TEST_CASE("projection onto the capped simplex") {
    auto p = project_to_budget({3.0, 1.0}, 2.0);
    CHECK(p[0] == doctest::Approx(2.0));
    CHECK(p[1] == doctest::Approx(0.0));
    p = project_to_budget({3.0, 2.5}, 2.0);
    CHECK(p[0] == doctest::Approx(1.25));
    CHECK(p[1] == doctest::Approx(0.75));
    p = project_to_budget({-1.0, 0.5}, 2.0);
    CHECK(p[0] == 0.0);
    CHECK(p[1] == doctest::Approx(0.5));
}
