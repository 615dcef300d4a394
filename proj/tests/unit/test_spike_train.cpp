#include <gtest/gtest.h>

#include <sstream>

#include "colsnn/errors.hpp"
#include "colsnn/spike_train.hpp"
#include "support/generators.hpp"

using namespace colsnn;

TEST(SpikeTrain, FromEventsSortsAndDeduplicates) {
    auto t = SpikeTrain::from_events(3, 10, {{2, 5}, {0, 5}, {1, 1}, {0, 5}});
    ASSERT_EQ(t.size(), 3u);
    EXPECT_EQ(t.events()[0], (SpikeEvent{1, 1}));
    EXPECT_EQ(t.events()[1], (SpikeEvent{0, 5}));
    EXPECT_EQ(t.events()[2], (SpikeEvent{2, 5}));
}

TEST(SpikeTrain, RejectsOutOfRangeEvents) {
    EXPECT_THROW(SpikeTrain::from_events(3, 10, {{3, 0}}), InputError);
    EXPECT_THROW(SpikeTrain::from_events(3, 10, {{0, 10}}), InputError);
    EXPECT_THROW(SpikeTrain::from_events(3, 10, {{0, -1}}), InputError);
    EXPECT_THROW(SpikeTrain(3, -1), InputError);
}

TEST(SpikeTrain, PushBackEnforcesOrder) {
    SpikeTrain t(4, 10);
    t.push_back({1, 2});
    t.push_back({3, 2});
    t.push_back({0, 3});
    EXPECT_THROW(t.push_back({0, 3}), InputError);
    EXPECT_THROW(t.push_back({2, 1}), InputError);
    EXPECT_EQ(t.size(), 3u);
}

TEST(SpikeTrain, AtStepAndByNeuron) {
    auto t = SpikeTrain::from_events(3, 10, {{0, 1}, {2, 1}, {1, 4}, {0, 9}});
    EXPECT_EQ(t.at_step(1).size(), 2u);
    EXPECT_EQ(t.at_step(2).size(), 0u);
    EXPECT_EQ(t.at_step(9).front().neuron, 0u);
    const auto per = t.by_neuron();
    EXPECT_EQ(per[0], (std::vector<Step>{1, 9}));
    EXPECT_EQ(per[1], (std::vector<Step>{4}));
    EXPECT_EQ(per[2], (std::vector<Step>{1}));
}

TEST(SpikeCsv, RoundTripsRandomTrains) {
    auto rng = derive_rng(21, 0);
    for (int trial = 0; trial < 200; ++trial) {
        const auto neurons = gen::uniform_index(rng, 1, 12);
        const auto horizon = static_cast<Step>(gen::uniform_index(rng, 1, 50));
        const auto train = gen::random_train(rng, neurons, horizon, 40);
        std::stringstream ss;
        write_spike_csv(ss, train);
        EXPECT_EQ(read_spike_csv(ss, neurons, horizon), train);
    }
}

TEST(SpikeCsv, RejectsMalformedInput) {
    auto parse = [](const std::string& text) {
        std::istringstream in(text);
        return read_spike_csv(in, 4, 10);
    };
    EXPECT_THROW(parse("step,neuron\n"), ParseError);
    EXPECT_THROW(parse("neuron,step\n1;2\n"), ParseError);
    EXPECT_THROW(parse("neuron,step\n1,x\n"), ParseError);
    EXPECT_THROW(parse("neuron,step\n1,2\n1,2\n"), ParseError);
    EXPECT_THROW(parse("neuron,step\n1,5\n1,2\n"), ParseError);
    EXPECT_THROW(parse("neuron,step\n9,2\n"), InputError);
    try {
        parse("neuron,step\n1,2\n3,abc\n");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 3u);
    }
}

TEST(DenseGrid, OneRowPerNeuronOneColumnPerStep) {
    auto t = SpikeTrain::from_events(2, 4, {{0, 0}, {1, 3}});
    std::ostringstream out;
    write_dense_grid_csv(out, t);
    EXPECT_EQ(out.str(), "1,0,0,0\n0,0,0,1\n");
}
