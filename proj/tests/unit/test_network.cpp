#include <gtest/gtest.h>

#include "colsnn/errors.hpp"
#include "colsnn/network.hpp"

using namespace colsnn;

namespace {

NeuronParams quiet() {
    NeuronParams p;
    p.i_background = 0.0;
    return p;
}

// Input (1) -> relay (1) with a connection strong enough to fire in one step.
Network relay_chain() {
    Network net;
    net.add_population(1, quiet());
    net.add_population(1, quiet());
    Connection c(0, 1, 1, 1, Sign::Excitatory, PlasticityMode::None, {0.0, 1.0}, 100.0);
    c.fill(1.0);
    net.add_connection(c);
    net.set_input(0, 100.0);
    return net;
}

}  // namespace

TEST(Network, SpikesArriveOneStepLater) {
    auto net = relay_chain();
    auto rng = derive_rng(1, 0);
    const auto train = SpikeTrain::from_events(1, 6, {{0, 2}});
    const auto h = simulate(net, train, rng);
    ASSERT_EQ(h.size(), 2u);
    ASSERT_EQ(h[0].size(), 1u);
    EXPECT_EQ(h[0].events()[0].step, 2);
    ASSERT_EQ(h[1].size(), 1u);
    EXPECT_EQ(h[1].events()[0].step, 3);
}

TEST(Network, SilenceInSilenceOut) {
    auto net = relay_chain();
    auto rng = derive_rng(2, 0);
    const auto h = simulate(net, SpikeTrain(1, 50), rng);
    EXPECT_TRUE(h[0].empty());
    EXPECT_TRUE(h[1].empty());
    for (const auto& pop : net.populations()) {
        for (double u : pop.potentials) EXPECT_DOUBLE_EQ(u, -67.0);
    }
}

TEST(Network, NoiseSkipsInputPopulation) {
    auto net = relay_chain();
    auto rng = derive_rng(3, 0);
    const auto h = simulate(net, SpikeTrain(1, 200), rng, 200.0);
    EXPECT_TRUE(h[0].empty());
    EXPECT_FALSE(h[1].empty());
}

TEST(Network, SameSeedSameHistory) {
    auto net = relay_chain();
    const auto train = SpikeTrain::from_events(1, 40, {{0, 3}, {0, 20}});
    auto r1 = derive_rng(4, 0);
    auto r2 = derive_rng(4, 0);
    EXPECT_EQ(simulate(net, train, r1, 30.0), simulate(net, train, r2, 30.0));
}

TEST(Network, InhibitionSuppressesTarget) {
    Network net;
    net.add_population(1, quiet());
    net.add_population(1, quiet());
    Connection c(0, 1, 1, 1, Sign::Inhibitory, PlasticityMode::None, {0.0, 1.0}, 100.0);
    c.fill(1.0);
    net.add_connection(c);
    net.set_input(0, 100.0);
    auto rng = derive_rng(5, 0);
    const auto h = simulate(net, SpikeTrain::from_events(1, 5, {{0, 0}}), rng);
    EXPECT_TRUE(h[1].empty());
    EXPECT_LT(net.population(1).potentials[0], -67.0);
    EXPECT_GE(net.population(1).potentials[0], -75.0);
}

TEST(Network, WiringErrors) {
    Network net;
    net.add_population(2, quiet());
    EXPECT_THROW(net.add_population(0, quiet()), ConfigError);
    EXPECT_THROW(net.add_connection(Connection(0, 5, 2, 2, Sign::Excitatory)), ConfigError);
    EXPECT_THROW(net.add_connection(Connection(0, 0, 3, 2, Sign::Excitatory)), ConfigError);
    EXPECT_THROW(net.set_input(4, 1.0), ConfigError);
    EXPECT_THROW(net.set_input(0, -1.0), ConfigError);
    EXPECT_THROW(Network(0.0), ConfigError);
    auto rng = derive_rng(6, 0);
    EXPECT_THROW(simulate(net, SpikeTrain(3, 5), rng), ConfigError);
    EXPECT_THROW(simulate(net, SpikeTrain(2, 0), rng), InputError);
}
