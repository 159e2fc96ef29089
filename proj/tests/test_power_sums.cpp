#include <doctest.h>

#include "legmoment/power_sums.hpp"
#include "oracles.hpp"

#include <random>
#include <thread>

using namespace legmoment;
using oracle::Int;

namespace {

Int binomial(std::int64_t n, std::int64_t k) {
    Int r = 1;
    for (std::int64_t j = 1; j <= k; ++j) r = r * (n - k + j) / j;
    return r;
}

std::vector<std::int64_t> random_signal(std::mt19937_64& rng, std::size_t n) {
    std::uniform_int_distribution<int> d(-255, 255);
    std::vector<std::int64_t> g(n);
    for (auto& v : g) v = d(rng);
    return g;
}

} // namespace

TEST_SUITE("power_sums") {

TEST_CASE("closed forms") {
    CHECK(power_sum_closed(4, 1) == 10);
    CHECK(power_sum_closed(3, 2) == 14);
    CHECK(power_sum_closed(3, 4) == 98);
    CHECK(power_sum_closed(3, 4) == oracle::power_sum(3, 4));
    CHECK_THROWS_AS(power_sum_closed(3, 0), std::invalid_argument);
    CHECK_THROWS_AS(power_sum_closed(3, 5), std::invalid_argument);
}

TEST_CASE("recurrence examples") {
    const auto t = power_sum_recurrence(4, 1, Arithmetic::exact);
    CHECK(t.exact == std::vector<BigInt>{4, 10});
    CHECK(power_sum_recurrence(5, 7, Arithmetic::exact).exact[7] == 96825);
    const auto ten = power_sum_recurrence(10, 4, Arithmetic::exact);
    for (int a = 1; a <= 4; ++a) CHECK(ten.exact[a] == power_sum_closed(10, a));
    CHECK_THROWS_AS(power_sum_recurrence(3, -1, Arithmetic::exact), std::invalid_argument);
}

TEST_CASE("exact recurrence matches closed forms up to 10^4") {
    for (std::int64_t m = 1; m <= 10000; m += (m < 200 ? 1 : 97)) {
        const auto t = power_sum_recurrence(m, 4, Arithmetic::exact);
        CHECK(t.exact[0] == m);
        for (int a = 1; a <= 4; ++a) REQUIRE(t.exact[a] == power_sum_closed(m, a));
    }
}

TEST_CASE("approximate recurrence tracks the exact one") {
    for (std::int64_t m : {1, 2, 10, 128, 1000}) {
        const auto ex = power_sum_recurrence(m, 12, Arithmetic::exact);
        const auto ap = power_sum_recurrence(m, 12, Arithmetic::approximate);
        CHECK(ap.mode == Arithmetic::approximate);
        CHECK(ap.exact.empty());
        for (int a = 0; a <= 12; ++a) {
            const double ref = to_wide(ex.exact[a]);
            CHECK(std::abs(ap[a] - ref) <= 1e-9 * std::abs(ref));
            CHECK(ex[a] == ref);
        }
    }
}

TEST_CASE("signed range power sums") {
    CHECK(signed_range_power_sum(1, 3, 2) == 14);
    CHECK(signed_range_power_sum(-2, 1, 3) == -8);
    CHECK(signed_range_power_sum(0, 0, 0) == 1);
    CHECK_THROWS_AS(signed_range_power_sum(2, 1, 0), std::invalid_argument);

    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> d(-40, 40);
    for (int trial = 0; trial < 300; ++trial) {
        int c = d(rng), e = d(rng);
        if (c > e) std::swap(c, e);
        if (c == e) ++e;
        const int dd = c + static_cast<int>(rng() % static_cast<unsigned>(e - c));
        const int a = static_cast<int>(rng() % 9);
        Int brute = 0;
        for (int j = c; j <= e; ++j) brute += oracle::ipow(j, a);
        REQUIRE(signed_range_power_sum(c, e, a) == brute);
        CHECK(signed_range_power_sum(c, dd, a) + signed_range_power_sum(dd + 1, e, a) == signed_range_power_sum(c, e, a));
        if (c > 0) {
            const Int sign = a % 2 ? -1 : 1;
            CHECK(signed_range_power_sum(-e, -c, a) == sign * signed_range_power_sum(c, e, a));
        }
    }
}

TEST_CASE("power sum ladder") {
    const PowerSumLadder ladder(50, 10);
    CHECK(ladder.h(0, 0) == 0);
    for (std::int64_t m : {1, 7, 50})
        for (int a = 0; a <= 10; ++a) CHECK(ladder.h(m, a) == to_wide(oracle::power_sum(m, a)));
    for (auto [c, d] : {std::pair{-50, 50}, {-3, -1}, {0, 0}, {-7, 12}, {5, 9}})
        for (int a = 0; a <= 10; ++a) CHECK(ladder.range_sum(c, d, a) == to_wide(signed_range_power_sum(c, d, a)));
}

TEST_CASE("cascade examples") {
    const std::vector<double> ones{1, 1, 1, 1};
    const auto s = cascade_power_sums(ones, 1);
    CHECK(s == std::vector<Wide>{4, 10});
    CHECK(cascade_power_sums(std::vector<double>{5}, 3) == std::vector<Wide>{5, 5, 5, 5});
    CHECK(cascade_power_sums_exact(std::vector<std::int64_t>{2, 0, 1, 3}, 2) == std::vector<BigInt>{6, 17, 59});
    CHECK(cascade_power_sums(std::vector<double>{2, 0, 1, 3}, 2) == std::vector<Wide>{6, 17, 59});
    CHECK_THROWS_AS(cascade_power_sums(std::vector<double>{}, 2), std::invalid_argument);
    CHECK_THROWS_AS(cascade_power_sums_exact(std::vector<std::int64_t>{}, 2), std::invalid_argument);
}

TEST_CASE("stage one accumulators are rising-factorial sums") {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 40; ++trial) {
        const auto g = random_signal(rng, 1 + rng() % 30);
        const int a_max = static_cast<int>(rng() % 10);
        const auto st = cascade_accumulate_exact(g, a_max);
        REQUIRE(st.accumulators.size() == static_cast<std::size_t>(a_max) + 1);
        for (int k = 0; k <= a_max; ++k) {
            Int ref = 0;
            for (std::size_t i = 1; i <= g.size(); ++i)
                ref += binomial(static_cast<std::int64_t>(i) + k - 1, k) * g[i - 1];
            CHECK(st.accumulators[k] == ref);
        }
    }
}

TEST_CASE("exact cascade equals brute force and never multiplies") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 300; ++trial) {
        const auto g = random_signal(rng, 1 + rng() % 64);
        const int a_max = static_cast<int>(rng() % 13);
        OpCounter c;
        const auto s = cascade_power_sums_exact(g, a_max, &c);
        for (int a = 0; a <= a_max; ++a) REQUIRE(s[a] == oracle::weighted_power_sum(g, a));
        CHECK(c.stage("cascade.accumulate").multiplications == 0);
        CHECK(c.stage("cascade.accumulate").additions == g.size() * (a_max + 1u));
    }
}

TEST_CASE("floating cascade is accurate and addition-only") {
    std::mt19937_64 rng(22);
    for (int trial = 0; trial < 300; ++trial) {
        const auto g = random_signal(rng, 1 + rng() % 64);
        const int a_max = static_cast<int>(rng() % 13);
        std::vector<double> gd(g.begin(), g.end());
        OpCounter c;
        const auto s = cascade_power_sums(gd, a_max, &c);
        for (int a = 0; a <= a_max; ++a) {
            const Int ref = oracle::weighted_power_sum(g, a);
            const Wide r = to_wide(ref);
            Int scale = 0;
            for (std::size_t i = 0; i < g.size(); ++i) scale += oracle::ipow(static_cast<std::int64_t>(i + 1), a) * (g[i] < 0 ? -g[i] : g[i]);
            CHECK(std::abs(s[a] - r) <= 1e-15L * to_wide(scale));
        }
        CHECK(c.stage("cascade.accumulate").multiplications == 0);
        CHECK(c.stage("cascade.convert").multiplications > 0);
    }
}

TEST_CASE("conversion matrix") {
    const ConversionMatrix m(8);
    for (int a = 0; a <= 8; ++a) {
        Int fact = 1;
        for (int k = 2; k <= a; ++k) fact *= k;
        CHECK(m.exact(a, a) == fact);
        for (int k = 0; k <= a; ++k) CHECK(m.wide(a, k) == to_wide(m.exact(a, k)));
    }
    CHECK(m.exact(3, 1) == 1);
    CHECK(m.exact(3, 2) == -6);
    CHECK(ConversionMatrix::get(5)->a_max() >= 5);
    CHECK(ConversionMatrix::get(60)->a_max() >= 60);
}

TEST_CASE("conversion cache under concurrent use") {
    std::vector<std::jthread> pool;
    std::vector<int> got(8);
    for (int w = 0; w < 8; ++w)
        pool.emplace_back([w, &got] {
            int worst = 1 << 30;
            for (int k = 0; k < 50; ++k) worst = std::min(worst, ConversionMatrix::get(10 + 13 * w + k)->a_max() - (10 + 13 * w + k));
            got[w] = worst;
        });
    pool.clear();
    for (int v : got) CHECK(v >= 0);
}

}
