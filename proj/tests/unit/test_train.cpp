#include <gtest/gtest.h>

#include <algorithm>
#include <sstream>

#include "colsnn/errors.hpp"
#include "colsnn/train.hpp"
#include "support/generators.hpp"

using namespace colsnn;

namespace {

TrainConfig quick(std::uint64_t seed = 7) {
    TrainConfig c;
    c.seed = seed;
    c.epochs = 3;
    c.encoding.window = 40;
    c.encoding.n_word_neurons = 30;
    c.encoding.n_pos_neurons = 20;
    c.network.n_hidden = 20;
    c.network.n_column = 5;
    c.network.repetitions = 4;
    return c;
}

std::vector<Sample> four_samples() {
    const auto& ref = reference_samples();
    std::vector<Sample> pos;
    std::vector<Sample> neg;
    for (const auto& s : ref) (s.label == Label::Positive ? pos : neg).push_back(s);
    return {pos[0], neg[0], pos[1], neg[1]};
}

std::string metrics_csv(const TrainConfig& c) {
    const auto samples = four_samples();
    TextEncoder enc(samples, c);
    ColumnNet net(network_config_for(c, enc));
    auto rng = derive_rng(c.seed, stream::kNoise);
    const auto m = train_epochs(net, samples, enc, c, rng);
    std::ostringstream out;
    write_metrics_csv(out, m);
    return out.str();
}

}  // namespace

TEST(TrainConfigTest, RejectsZeroEpochs) {
    auto c = quick();
    c.epochs = 0;
    EXPECT_THROW(c.validate(), ConfigError);
    c = quick();
    c.encoder = EncoderKind::Ttfs;
    EXPECT_THROW(c.validate(), ConfigError);
    c = quick();
    c.tau_e = 0.0;
    EXPECT_THROW(c.validate(), ConfigError);
    EXPECT_NO_THROW(quick().validate());
}

TEST(TrainSample, OneRewardEventPerSample) {
    auto c = quick();
    const auto samples = four_samples();
    TextEncoder enc(samples, c);
    ColumnNet net(network_config_for(c, enc));
    auto rng = derive_rng(1, stream::kNoise);
    TrainLog log;
    train_sample(net, samples[0], enc, c, rng, &log);
    EXPECT_EQ(log.trials, 1u);
    EXPECT_EQ(log.rewards.size(), 1u);
    EXPECT_EQ(log.stdp_updates, c.network.repetitions);
}

TEST(TrainSample, DisabledPlasticityChangesNothing) {
    auto c = quick();
    c.plasticity = false;
    const auto samples = four_samples();
    TextEncoder enc(samples, c);
    ColumnNet net(network_config_for(c, enc));
    const auto before = weights_hash(net);
    auto rng = derive_rng(1, stream::kNoise);
    TrainLog log;
    for (const auto& s : samples) train_sample(net, s, enc, c, rng, &log);
    EXPECT_EQ(weights_hash(net), before);
    EXPECT_TRUE(log.rewards.empty());
}

TEST(TrainSample, TiedHistoryLeavesOutputWeightsAlone) {
    // Fuzz configurations until 100 tied trials have been observed.
    const auto samples = four_samples();
    auto pick = derive_rng(123, 0);
    int tied = 0;
    int attempts = 0;
    while (tied < 100 && attempts < 5000) {
        ++attempts;
        auto c = quick(attempts);
        c.network.repetitions = 2 * gen::uniform_index(pick, 1, 3);
        c.network.noise_sigma = gen::uniform_real(pick, 0.0, 12.0);
        c.network.output_gain = gen::uniform_real(pick, 2.0, 20.0);
        c.network.decision_threshold = 0.0;
        TextEncoder enc(samples, c);
        ColumnNet net(network_config_for(c, enc));
        auto rng = derive_rng(attempts, stream::kNoise);
        const auto& s = samples[gen::uniform_index(pick, 0, samples.size() - 1)];
        const auto pos = net.hidden_to(Decision::Positive);
        const auto neg = net.hidden_to(Decision::Negative);
        TrainLog log;
        train_sample(net, s, enc, c, rng, &log);
        const auto& h = log.rewards.at(0).history;
        if (h.h_correct != h.h_incorrect) continue;
        ++tied;
        ASSERT_EQ(net.hidden_to(Decision::Positive), pos);
        ASSERT_EQ(net.hidden_to(Decision::Negative), neg);
    }
    EXPECT_EQ(tied, 100);
}

TEST(TrainEpochs, OneMetricsRowPerEpoch) {
    auto c = quick();
    const auto samples = four_samples();
    TextEncoder enc(samples, c);
    ColumnNet net(network_config_for(c, enc));
    auto rng = derive_rng(2, stream::kNoise);
    const auto m = train_epochs(net, samples, enc, c, rng);
    ASSERT_EQ(m.size(), 3u);
    for (std::size_t e = 0; e < m.size(); ++e) {
        EXPECT_EQ(m[e].epoch, e);
        EXPECT_EQ(m[e].correct + m[e].incorrect + m[e].undecided, samples.size());
        EXPECT_DOUBLE_EQ(m[e].accuracy, static_cast<double>(m[e].correct) / static_cast<double>(samples.size()));
        EXPECT_EQ(m[e].decisions.size(), samples.size());
    }
}

TEST(TrainEpochs, MetricsCsvIsReproducible) {
    const auto a = metrics_csv(quick(11));
    const auto b = metrics_csv(quick(11));
    EXPECT_EQ(a, b);
    std::istringstream in(a);
    std::string header;
    std::getline(in, header);
    EXPECT_EQ(header.rfind("epoch,correct,incorrect,undecided,accuracy", 0), 0u);
    EXPECT_EQ(std::count(a.begin(), a.end(), '\n'), 4);
}

TEST(Evaluate, FrozenAndRepeatable) {
    auto c = quick();
    const auto samples = four_samples();
    TextEncoder enc(samples, c);
    ColumnNet net(network_config_for(c, enc));
    const auto before = weights_hash(net);
    auto r1 = derive_rng(3, stream::kEval);
    auto r2 = derive_rng(3, stream::kEval);
    const auto a = evaluate(net, samples, enc, c, r1);
    const auto b = evaluate(net, samples, enc, c, r2);
    EXPECT_EQ(weights_hash(net), before);
    EXPECT_EQ(a.decisions, b.decisions);
    EXPECT_EQ(a.correct + a.incorrect + a.undecided, samples.size());
    EXPECT_EQ(a.pos_total, 2u);
    EXPECT_EQ(a.neg_total, 2u);
}

TEST(Evaluate, ZeroOutputWeightsAreAllUndecided) {
    auto c = quick();
    c.network.noise_sigma = 0.0;
    const auto samples = four_samples();
    TextEncoder enc(samples, c);
    ColumnNet net(network_config_for(c, enc));
    net.hidden_to(Decision::Positive).fill(0.0);
    net.hidden_to(Decision::Negative).fill(0.0);
    auto rng = derive_rng(3, stream::kEval);
    const auto r = evaluate(net, samples, enc, c, rng);
    EXPECT_EQ(r.undecided, samples.size());
    EXPECT_EQ(r.accuracy, 0.0);
}

TEST(Evaluate, HandSetSeparatingWeightsScorePerfectly) {
    const std::vector<Sample> samples{{"good", Label::Positive}, {"bad", Label::Negative}};
    TrainConfig c;
    c.encoding.window = 20;
    c.encoding.max_tokens = 2;
    c.encoding.n_word_neurons = 20;
    c.encoding.n_pos_neurons = 10;
    c.network.noise_sigma = 0.0;
    c.network.decision_fraction = 1.0;
    c.network.lateral_inhibition_weight = 0.0;
    c.network.input_gain = 100.0;
    c.network.output_gain = 100.0;

    // Find a codebook whose two word codes are disjoint.
    std::optional<TextEncoder> enc;
    for (std::uint64_t seed = 0; !enc; ++seed) {
        c.seed = seed;
        TextEncoder candidate(samples, c);
        const auto& cb = *candidate.codebook();
        const auto& d = candidate.dictionary();
        auto g = cb.word_code(*d.index_of("good"));
        auto b = cb.word_code(*d.index_of("bad"));
        std::sort(g.begin(), g.end());
        std::sort(b.begin(), b.end());
        std::vector<NeuronIndex> both;
        std::set_intersection(g.begin(), g.end(), b.begin(), b.end(), std::back_inserter(both));
        if (both.empty()) enc.emplace(std::move(candidate));
    }

    auto net_config = network_config_for(c, *enc);
    net_config.n_hidden = net_config.n_input;
    ColumnNet net(net_config);
    auto& in = net.input_to_hidden();
    in.fill(0.0);
    for (std::size_t i = 0; i < in.pre_size(); ++i) in.set(i, i, 1.0);
    auto& to_pos = net.hidden_to(Decision::Positive);
    auto& to_neg = net.hidden_to(Decision::Negative);
    to_pos.fill(0.0);
    to_neg.fill(0.0);
    const auto& cb = *enc->codebook();
    for (auto n : cb.word_code(*enc->dictionary().index_of("good"))) {
        for (std::size_t j = 0; j < to_pos.post_size(); ++j) to_pos.set(n, j, 1.0);
    }
    for (auto n : cb.word_code(*enc->dictionary().index_of("bad"))) {
        for (std::size_t j = 0; j < to_neg.post_size(); ++j) to_neg.set(n, j, 1.0);
    }

    auto rng = derive_rng(0, stream::kEval);
    const auto r = evaluate(net, samples, *enc, c, rng);
    EXPECT_EQ(r.accuracy, 1.0);
    EXPECT_EQ(r.pos_correct, 1u);
    EXPECT_EQ(r.neg_correct, 1u);
}

TEST(Experiment, KindNamesRoundTrip) {
    for (auto k : {ExperimentKind::Single, ExperimentKind::Four, ExperimentKind::Ten}) {
        EXPECT_EQ(parse_experiment_kind(to_string(k)), k);
    }
    EXPECT_FALSE(parse_experiment_kind("eleven"));
}

TEST(Experiment, TraceCsvShape) {
    std::ostringstream out;
    write_trace_csv(out, {{0, 0.5, 0.25, Decision::Positive}, {1, 0.0, 0.75, Decision::Negative}});
    const auto s = out.str();
    EXPECT_EQ(s.rfind("round,act_group1,act_group2,decision\n", 0), 0u);
    EXPECT_NE(s.find("0,0.5,0.25,Positive"), std::string::npos);
    EXPECT_NE(s.find("1,0,0.75,Negative"), std::string::npos);
}
