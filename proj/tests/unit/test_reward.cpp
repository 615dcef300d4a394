#include <gtest/gtest.h>

#include <chrono>
#include <string>

#include "colsnn/errors.hpp"
#include "colsnn/reward.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace colsnn;

namespace {

Connection rstdp_conn(std::size_t rows, std::size_t cols, double w) {
    Connection c(0, 1, rows, cols, Sign::Excitatory, PlasticityMode::Rstdp);
    c.fill(w);
    return c;
}

}  // namespace

TEST(Reward, AllSixtySixHistoriesExact) {
    const auto t0 = std::chrono::steady_clock::now();
    int pairs = 0;
    for (int hc = 0; hc <= 10; ++hc) {
        for (int hic = 0; hc + hic <= 10; ++hic) {
            ++pairs;
            const TrialHistory h{hc, hic};
            const auto s = compute_reward_simple(h);
            EXPECT_EQ(s.reward, gen::exact_fraction(hic, 10));
            EXPECT_EQ(s.punishment, gen::exact_fraction(hc, 10));
            EXPECT_EQ(s.k, 1.0);

            const int gap = hc > hic ? hc - hic : hic - hc;
            const auto w = compute_reward_weighted(h);
            EXPECT_EQ(w.k, gen::exact_fraction(gap, 10));
            EXPECT_EQ(w.reward, gen::exact_fraction(gap * hic, 100)) << hc << "," << hic;
            EXPECT_EQ(w.punishment, gen::exact_fraction(gap * hc, 100)) << hc << "," << hic;
            EXPECT_NO_THROW(w.validate());
        }
    }
    EXPECT_EQ(pairs, 66);
    EXPECT_LT(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(), 1.0);
}

TEST(Reward, Examples) {
    const auto s = compute_reward_simple({7, 3});
    EXPECT_EQ(s.reward, 0.3);
    EXPECT_EQ(s.punishment, 0.7);
    const auto w = compute_reward_weighted({7, 3});
    EXPECT_EQ(w.k, 0.4);
    EXPECT_EQ(w.reward, 0.12);
    EXPECT_EQ(w.punishment, 0.28);
    EXPECT_TRUE(compute_reward_weighted({5, 5}).is_zero());
    EXPECT_TRUE(compute_reward_simple({0, 0}).is_zero());
    EXPECT_EQ(compute_reward(RewardScheme::Weighted, {10, 0}).punishment, 1.0);
}

TEST(Reward, RejectsImpossibleHistories) {
    EXPECT_THROW(compute_reward_simple({6, 5}), DomainError);
    EXPECT_THROW(compute_reward_weighted({-1, 0}), DomainError);
    RewardSignal bad{1.5, 0.0, 1.0};
    EXPECT_THROW(bad.validate(), DomainError);
}

TEST(Rstdp, MovesCorrectUpAndWrongDown) {
    auto wc = rstdp_conn(1, 2, 0.5);
    auto ww = rstdp_conn(1, 2, 0.5);
    EligibilityTrace ec(1, 2), ew(1, 2);
    ec.add_terms({{0, 0, 0.1, 0.0}, {0, 1, -0.2, 0.0}});
    ew.add_terms({{0, 0, 0.1, 0.0}, {0, 1, -0.2, 0.0}});
    apply_rstdp(wc, ww, ec, ew, {0.5, 0.25, 1.0});
    EXPECT_DOUBLE_EQ(wc.weight(0, 0), 0.55);
    EXPECT_DOUBLE_EQ(wc.weight(0, 1), 0.4);
    EXPECT_DOUBLE_EQ(ww.weight(0, 0), 0.475);
    EXPECT_DOUBLE_EQ(ww.weight(0, 1), 0.55);
    EXPECT_TRUE(ec.is_zero());
    EXPECT_TRUE(ew.is_zero());
}

TEST(Rstdp, ClampsIntoBounds) {
    auto wc = rstdp_conn(1, 1, 0.95);
    auto ww = rstdp_conn(1, 1, 0.05);
    EligibilityTrace ec(1, 1), ew(1, 1);
    ec.add_terms({{0, 0, 1.0, 0.0}});
    ew.add_terms({{0, 0, 1.0, 0.0}});
    apply_rstdp(wc, ww, ec, ew, {1.0, 1.0, 1.0});
    EXPECT_EQ(wc.weight(0, 0), 1.0);
    EXPECT_EQ(ww.weight(0, 0), 0.0);
}

TEST(Rstdp, RequiresRstdpMode) {
    Connection plain(0, 1, 1, 1, Sign::Excitatory, PlasticityMode::Stdp);
    auto ok = rstdp_conn(1, 1, 0.5);
    EligibilityTrace a(1, 1), b(1, 1);
    EXPECT_THROW(apply_rstdp(plain, ok, a, b, {0.1, 0.1, 1.0}), ConfigError);
    EligibilityTrace wrong(2, 1);
    EXPECT_THROW(apply_rstdp(ok, ok, wrong, b, {0.1, 0.1, 1.0}), ConfigError);
}

TEST(Rstdp, BalancedHistoryLeavesWeightsBitIdentical) {
    auto rng = derive_rng(5150, 0);
    for (int trial = 0; trial < 100; ++trial) {
        const int half = static_cast<int>(gen::uniform_index(rng, 0, 5));
        const auto signal = compute_reward_weighted({half, half});
        auto wc = rstdp_conn(4, 3, 0.0);
        auto ww = rstdp_conn(4, 3, 0.0);
        wc.assign(gen::random_weights(rng, 12, 0.0, 1.0));
        ww.assign(gen::random_weights(rng, 12, 0.0, 1.0));
        const auto before_c = wc;
        const auto before_w = ww;
        EligibilityTrace ec(4, 3), ew(4, 3);
        accumulate_eligibility(ec, gen::random_train(rng, 4, 30, 20), gen::random_train(rng, 3, 30, 20),
                               StdpParams{});
        accumulate_eligibility(ew, gen::random_train(rng, 4, 30, 20), gen::random_train(rng, 3, 30, 20),
                               StdpParams{});
        apply_rstdp(wc, ww, ec, ew, signal);
        ASSERT_EQ(wc, before_c);
        ASSERT_EQ(ww, before_w);
    }
}
