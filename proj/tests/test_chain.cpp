#include <sstream>

#include <doctest.h>

#include "polling/chain.hpp"
#include "polling/tails.hpp"

using namespace polling;

TEST_CASE("rule validation") {
    CHECK_THROWS_AS(RuleDistribution::single({2, 3}), std::invalid_argument);
    CHECK_THROWS_AS(RuleDistribution::single({3, 0}), std::invalid_argument);
    CHECK_THROWS_AS(RuleDistribution({{{2, 2}, 0.5}, {{1, 1}, 0.4}}),
                    std::invalid_argument);  // weights sum to 0.9
    CHECK_THROWS_AS(RuleDistribution({{{2, 2}, -0.5}, {{1, 1}, 1.5}}),
                    std::invalid_argument);
    CHECK(PollingRule{3, 2}.strict_majority());
    CHECK_FALSE(PollingRule{4, 2}.strict_majority());
}

TEST_CASE("rule distribution parsing") {
    const auto single = RuleDistribution::parse("3:2");
    CHECK(single.is_degenerate());
    CHECK(single.entries().front().rule == PollingRule{3, 2});
    CHECK(single.entries().front().weight == 1.0);

    const auto mix = RuleDistribution::parse("1:1@0.25,2:2@0.75");
    CHECK(mix.entries().size() == 2);
    CHECK(mix.strict_majority_all());
    CHECK(mix.max_poll_size() == 2);

    const auto from_json = RuleDistribution::from_json(
        nlohmann::json::parse(R"([{"m":1,"d":1,"weight":0.5},{"m":3,"d":2,"weight":0.5}])"));
    CHECK(from_json.entries().size() == 2);
    // single record implies weight 1
    const auto lone = RuleDistribution::from_json(nlohmann::json::parse(R"({"m":4,"d":3})"));
    CHECK(lone.entries().front().weight == 1.0);
}

TEST_CASE("voter rates on three nodes") {
    const auto chain = build_chain(3, RuleDistribution::single({1, 1}),
                                   SamplingMode::WithReplacement);
    CHECK(chain.up_rate[1] == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    CHECK(chain.down_rate[1] == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("(2,2) symmetric midpoint rates") {
    const auto chain = build_chain(4, RuleDistribution::single({2, 2}),
                                   SamplingMode::WithReplacement);
    CHECK(chain.up_rate[2] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(chain.down_rate[2] == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("absorbing boundaries have zero rates") {
    for (auto mode : {SamplingMode::WithReplacement, SamplingMode::WithoutReplacement}) {
        const auto chain = build_chain(20, RuleDistribution::parse("3:2"), mode);
        CHECK(chain.up_rate[0] == 0.0);
        CHECK(chain.down_rate[0] == 0.0);
        CHECK(chain.up_rate[20] == 0.0);
        CHECK(chain.down_rate[20] == 0.0);
    }
    // with replacement every interior rate is positive; without replacement a
    // state with fewer than d ones cannot move up (no repeats in the sample)
    const auto with = build_chain(20, RuleDistribution::parse("3:2"),
                                  SamplingMode::WithReplacement);
    for (int n = 1; n < 20; ++n) {
        CHECK(with.up_rate[n] > 0.0);
        CHECK(with.down_rate[n] > 0.0);
    }
    const auto without = build_chain(20, RuleDistribution::parse("3:2"),
                                     SamplingMode::WithoutReplacement);
    CHECK(without.up_rate[1] == 0.0);
    CHECK(without.down_rate[19] == 0.0);
    for (int n = 2; n < 19; ++n) {
        CHECK(without.up_rate[n] > 0.0);
        CHECK(without.down_rate[n] > 0.0);
    }
}

TEST_CASE("0-1 relabeling symmetry: up_rate[n] == down_rate[N-n]") {
    const auto rules = RuleDistribution::parse("1:1@0.2,3:2@0.5,5:4@0.3");
    for (auto mode : {SamplingMode::WithReplacement, SamplingMode::WithoutReplacement})
        for (bool excl : {false, true}) {
            if (mode == SamplingMode::WithReplacement && excl) continue;
            const auto chain = build_chain(37, rules, mode, excl);
            for (int n = 0; n <= 37; ++n)
                CHECK(chain.up_rate[n] ==
                      doctest::Approx(chain.down_rate[37 - n]).epsilon(1e-13));
        }
}

TEST_CASE("degenerate distribution reproduces the deterministic rate formulas") {
    const int N = 25, m = 3, d = 2;
    const auto chain =
        build_chain(N, RuleDistribution::single({m, d}), SamplingMode::WithReplacement);
    for (int n = 1; n < N; ++n) {
        const double x = static_cast<double>(n) / N;
        CHECK(chain.up_rate[n] ==
              doctest::Approx((N - n) * binomial_tail_ge(m, x, d)).epsilon(1e-14));
        CHECK(chain.down_rate[n] ==
              doctest::Approx(n * binomial_tail_ge(m, 1.0 - x, d)).epsilon(1e-13));
    }
}

TEST_CASE("mixture rates are the weighted rule average") {
    const int N = 12;
    const auto mix = RuleDistribution::parse("1:1@0.3,2:2@0.7");
    const auto c_mix = build_chain(N, mix, SamplingMode::WithReplacement);
    const auto c_11 = build_chain(N, RuleDistribution::single({1, 1}),
                                  SamplingMode::WithReplacement);
    const auto c_22 = build_chain(N, RuleDistribution::single({2, 2}),
                                  SamplingMode::WithReplacement);
    for (int n = 0; n <= N; ++n) {
        CHECK(c_mix.up_rate[n] ==
              doctest::Approx(0.3 * c_11.up_rate[n] + 0.7 * c_22.up_rate[n]).epsilon(1e-13));
        CHECK(c_mix.down_rate[n] ==
              doctest::Approx(0.3 * c_11.down_rate[n] + 0.7 * c_22.down_rate[n]).epsilon(1e-13));
    }
}

TEST_CASE("without-replacement preconditions") {
    CHECK_THROWS_AS(build_chain(3, RuleDistribution::single({3, 2}),
                                SamplingMode::WithoutReplacement),
                    std::invalid_argument);
    CHECK_THROWS_AS(build_chain(10, RuleDistribution::single({2, 2}),
                                SamplingMode::WithReplacement, /*exclude_self=*/true),
                    std::invalid_argument);
}
