#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "shardgame/types.hpp"
#include "shardgame/utility.hpp"

using namespace shardgame;

namespace {

AllocationMatrix matrix_from_rows(const std::vector<std::vector<double>>& rows) {
    AllocationMatrix a(rows.size(), rows[0].size());
    for (std::size_t n = 0; n < rows.size(); ++n) a.set_row(n, rows[n]);
    return a;
}

}  // namespace

TEST_CASE("shard_payoff splits the prize proportionally") {
    CHECK(shard_payoff(10, 30, 100) == doctest::Approx(25.0));
    CHECK(shard_payoff(0, 50, 100) == 0.0);
    CHECK(shard_payoff(0, 0, 100) == 0.0);  // nobody contributes, nobody earns
    CHECK(shard_payoff(5, 0, 80) == doctest::Approx(80.0));
}

TEST_CASE("shard_payoff rejects negative inputs") {
    CHECK_THROWS_AS(shard_payoff(-1, 0, 10), std::domain_error);
    CHECK_THROWS_AS(shard_payoff(1, -2, 10), std::domain_error);
    CHECK_THROWS_AS(shard_payoff(1, 2, -10), std::domain_error);
}

TEST_CASE("shard_payoff is scale-free in the contributions") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> pos(0.01, 1000.0);
    for (int i = 0; i < 500; ++i) {
        double r = pos(rng), t = pos(rng), p = pos(rng), k = pos(rng);
        double base = shard_payoff(r, t, p);
        CHECK(shard_payoff(k * r, k * t, p) == doctest::Approx(base).epsilon(1e-12));
    }
}

TEST_CASE("a funded shard pays out its full prize") {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> pos(0.0, 50.0);
    for (int i = 0; i < 200; ++i) {
        std::vector<double> r(4);
        double total = 0.0;
        for (auto& v : r) {
            v = pos(rng);
            total += v;
        }
        if (total <= 0.0) continue;
        double paid = 0.0;
        for (double v : r) paid += shard_payoff(v, total - v, 123.0);
        CHECK(paid == doctest::Approx(123.0).epsilon(1e-9));
    }
}

TEST_CASE("follower utility at the bundled two-shard setting") {
    // One optimizer holding (41.42, 46.41) against rivals at (100, 300).
    auto a = matrix_from_rows({{41.42, 46.41}, {100.0, 300.0}});
    std::vector<FollowerSpec> followers = {{"mu", 100.0, 5.0}, {"rest", 400.0, 1.0}};
    PaymentVector payments = {1000.0, 2000.0};
    CHECK(follower_utility(0, a, payments, followers) == doctest::Approx(121.68).epsilon(1e-4));
}

TEST_CASE("follower utility edge cases") {
    auto a = matrix_from_rows({{0.0, 0.0}, {10.0, 20.0}});
    std::vector<FollowerSpec> followers = {{"a", 10.0, 2.0}, {"b", 100.0, 1.0}};
    PaymentVector payments = {50.0, 70.0};
    CHECK(follower_utility(0, a, payments, followers) == 0.0);

    auto sym = matrix_from_rows({{25.0}, {25.0}});
    std::vector<FollowerSpec> two = {{"a", 1000.0, 1.0}, {"b", 1000.0, 1.0}};
    CHECK(follower_utility(0, sym, {100.0}, two) == doctest::Approx(25.0));

    CHECK_THROWS_AS(follower_utility(2, a, payments, followers), std::domain_error);
    CHECK_THROWS_AS(follower_utility(0, a, {50.0}, followers), std::domain_error);
}

TEST_CASE("zero payments reduce utility to the cost term") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> pos(0.0, 30.0);
    for (int i = 0; i < 100; ++i) {
        AllocationMatrix a(3, 2);
        for (auto& v : a.values()) v = pos(rng);
        std::vector<FollowerSpec> followers = {
            {"a", 1000.0, 0.5}, {"b", 1000.0, 1.5}, {"c", 1000.0, 2.5}};
        for (std::size_t n = 0; n < 3; ++n) {
            double expected = -followers[n].unit_cost * a.row_total(n);
            CHECK(follower_utility(n, a, {0.0, 0.0}, followers) ==
                  doctest::Approx(expected).epsilon(1e-12));
        }
    }
}

TEST_CASE("leader utility, both variants") {
    auto a = matrix_from_rows({{16.0, 24.0}});
    std::vector<ShardSpec> shards = {{"s1", 4.0}, {"s2", 6.0}};
    PaymentVector payments = {4.0, 6.0};

    double expected_log = 4.0 * std::log(16.0) + 6.0 * std::log(24.0) - 10.0;
    CHECK(leader_utility(a, payments, shards, LeaderVariant::Log) ==
          doctest::Approx(expected_log).epsilon(1e-12));
    CHECK(leader_utility(a, payments, shards, LeaderVariant::Log) ==
          doctest::Approx(20.16).epsilon(1e-3));

    CHECK(leader_utility(a, payments, shards, LeaderVariant::Linear) ==
          doctest::Approx(4.0 * 16.0 + 6.0 * 24.0 - 10.0).epsilon(1e-12));
}

TEST_CASE("leader utility on empty shards is finite and deeply negative") {
    auto a = matrix_from_rows({{0.0, 0.0}});
    std::vector<ShardSpec> shards = {{"s1", 4.0}, {"s2", 6.0}};
    double u = leader_utility(a, {4.0, 6.0}, shards, LeaderVariant::Log);
    double expected = 10.0 * std::log(kLogFloor) - 10.0;
    CHECK(std::isfinite(u));
    CHECK(u == doctest::Approx(expected).epsilon(1e-12));
    CHECK(u < -200.0);
}

TEST_CASE("leader utility validates lengths") {
    auto a = matrix_from_rows({{1.0, 2.0}});
    std::vector<ShardSpec> shards = {{"s1", 4.0}, {"s2", 6.0}};
    CHECK_THROWS_AS(leader_utility(a, {4.0}, shards, LeaderVariant::Log), std::domain_error);
    std::vector<ShardSpec> one = {{"s1", 4.0}};
    CHECK_THROWS_AS(leader_utility(a, {4.0, 6.0}, one, LeaderVariant::Log), std::domain_error);
}

TEST_CASE("log leader utility rises with totals and falls with payments") {
    std::mt19937_64 rng(14);
    std::uniform_real_distribution<double> pos(0.5, 200.0);
    std::vector<ShardSpec> shards = {{"s1", 3.0}, {"s2", 7.0}};
    const double h = 1e-3;
    for (int i = 0; i < 100; ++i) {
        std::vector<double> totals = {pos(rng), pos(rng)};
        PaymentVector payments = {pos(rng), pos(rng)};
        double base = leader_utility_from_totals(totals, payments, shards, LeaderVariant::Log);
        for (std::size_t m = 0; m < 2; ++m) {
            auto up = totals;
            up[m] += h;
            CHECK(leader_utility_from_totals(up, payments, shards, LeaderVariant::Log) > base);
            auto pay = payments;
            pay[m] += h;
            CHECK(leader_utility_from_totals(totals, pay, shards, LeaderVariant::Log) < base);
        }
    }
}

TEST_CASE("scenario config validation names the offender") {
    ScenarioConfig config;
    config.followers = {{"good", 10.0, 1.0}, {"bad", -5.0, 1.0}};
    config.shards = {{"s", 1.0}};
    CHECK_THROWS_WITH_AS(config.validate(), "follower 'bad': capacity must be > 0",
                         std::domain_error);

    config.followers[1].capacity = 5.0;
    config.followers[1].id = "good";
    CHECK_THROWS_WITH_AS(config.validate(), "duplicate follower id 'good'", std::domain_error);

    config.followers[1].id = "bad";
    config.payments = PaymentVector{1.0, 2.0};
    CHECK_THROWS_AS(config.validate(), std::domain_error);
    config.payments = PaymentVector{1.0};
    CHECK_NOTHROW(config.validate());
}

TEST_CASE("allocation feasibility check") {
    std::vector<FollowerSpec> followers = {{"a", 10.0, 1.0}};
    AllocationMatrix ok(1, 2);
    ok.at(0, 0) = 4.0;
    ok.at(0, 1) = 6.0;
    CHECK_NOTHROW(check_feasible(ok, followers));
    ok.at(0, 1) = 6.1;
    CHECK_THROWS_AS(check_feasible(ok, followers), std::domain_error);
    ok.at(0, 1) = -0.1;
    CHECK_THROWS_AS(check_feasible(ok, followers), std::domain_error);
}

TEST_CASE("effective tolerance scales with the largest capacity") {
    ScenarioConfig config;
    config.followers = {{"a", 100.0, 1.0}, {"b", 500.0, 1.0}};
    config.shards = {{"s", 1.0}};
    CHECK(config.effective_br_tolerance() == doctest::Approx(5e-4));
    config.br_tolerance = 1e-7;
    CHECK(config.effective_br_tolerance() == 1e-7);
}
