#include "colsnn/train.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>

#include "colsnn/errors.hpp"
#include "colsnn/text_format.hpp"

namespace colsnn {

void TrainConfig::validate() const {
    if (epochs < 1) throw ConfigError("train.epochs must be >= 1");
    if (encoder == EncoderKind::Ttfs) throw ConfigError("train.encoder must be a text encoder, not ttfs");
    encoding.validate();
    hidden_stdp.validate();
    eligibility_stdp.validate();
    if (!(tau_e > 0.0)) throw ConfigError("train.tau_e must be > 0");
    if (vocabulary < 1) throw ConfigError("train.vocabulary must be >= 1");
    if (!(bias_factor > 0.0)) throw ConfigError("experiment.bias_factor must be > 0");
    if (single_round_cap < 1 || four_epoch_cap < 1 || ten_epochs < 1) {
        throw ConfigError("experiment caps must be >= 1");
    }
    // n_input and seed are filled in from the encoder, so check the rest with placeholders.
    auto net = network;
    net.n_input = std::max<std::size_t>(net.n_input, 1);
    net.validate();
}

TextEncoder::TextEncoder(const std::vector<Sample>& vocabulary_source, const TrainConfig& config)
    : TextEncoder(build_dictionary(vocabulary_source, config.vocabulary), config) {}

TextEncoder::TextEncoder(Dictionary dictionary, const TrainConfig& config)
    : kind_(config.encoder), config_(config.encoding), dict_(std::move(dictionary)) {
    if (kind_ == EncoderKind::Ttfs) throw ConfigError("ttfs cannot encode text");
    config_.seed = derive_seed(config.seed, stream::kCodebook);
    config_.validate();
    if (kind_ == EncoderKind::Codebook || kind_ == EncoderKind::GaussPosWord) codebook_.emplace(dict_.size(), config_);
    neurons_ = encoder_neuron_space(kind_, dict_.size(), config_);
}

SpikeTrain TextEncoder::encode(const std::string& text, Rng& rng) const {
    return encode_text(kind_, tokenize(text), dict_, codebook(), config_, rng);
}

ColumnNetConfig network_config_for(const TrainConfig& config, const TextEncoder& encoder) {
    auto net = config.network;
    net.n_input = encoder.neuron_space();
    net.seed = derive_seed(config.seed, stream::kWeights);
    return net;
}

namespace {

double mean_of(const std::vector<PresentationOutcome>& outcomes, bool positive) {
    if (outcomes.empty()) return 0.0;
    double sum = 0.0;
    for (const auto& o : outcomes) sum += positive ? o.act_pos : o.act_neg;
    return sum / static_cast<double>(outcomes.size());
}

Decision other(Decision d) {
    return d == Decision::Positive ? Decision::Negative : Decision::Positive;
}

}  // namespace

SampleResult train_sample(ColumnNet& net, const Sample& sample, const TextEncoder& encoder, const TrainConfig& config,
                          Rng& rng, TrainLog* log) {
    const auto train = encoder.encode(sample.text, rng);

    RepeatOptions opts;
    if (config.plasticity) opts.hidden_stdp = config.hidden_stdp;
    opts.eligibility = config.eligibility_stdp;
    opts.tau_e = config.tau_e;

    auto trial = repeated_presentation(net, train, sample.label, rng, opts);
    SampleResult out{trial.report, RewardSignal{0.0, 0.0, 0.0}, mean_of(trial.outcomes, true),
                     mean_of(trial.outcomes, false)};

    if (log) {
        ++log->trials;
        if (config.plasticity) log->stdp_updates += trial.outcomes.size();
    }
    if (!config.plasticity) return out;

    out.signal = compute_reward(config.scheme, trial.history);
    const Decision correct = decision_of(sample.label);
    const Decision wrong = other(correct);
    apply_rstdp(net.hidden_to(correct), net.hidden_to(wrong), trial.trace_for(correct), trial.trace_for(wrong),
                out.signal);
    if (log) log->rewards.push_back({log->trials - 1, trial.history, out.signal});
    return out;
}

std::vector<EpochMetrics> train_epochs(ColumnNet& net, const std::vector<Sample>& samples,
                                       const TextEncoder& encoder, const TrainConfig& config, Rng& rng,
                                       TrainLog* log, const TrialObserver& observer, std::size_t first_epoch) {
    config.validate();
    std::vector<EpochMetrics> metrics;
    metrics.reserve(config.epochs);
    std::vector<std::size_t> order(samples.size());
    for (std::size_t e = 0; e < config.epochs; ++e) {
        std::iota(order.begin(), order.end(), 0);
        std::shuffle(order.begin(), order.end(), rng);

        EpochMetrics m;
        m.epoch = first_epoch + e;
        m.decisions.assign(samples.size(), Decision::Undecided);
        double act_correct = 0.0;
        double act_wrong = 0.0;
        for (auto idx : order) {
            const auto& sample = samples[idx];
            const auto r = train_sample(net, sample, encoder, config, rng, log);
            m.decisions[idx] = r.report.majority;
            const bool pos = sample.label == Label::Positive;
            act_correct += pos ? r.mean_act_pos : r.mean_act_neg;
            act_wrong += pos ? r.mean_act_neg : r.mean_act_pos;
            if (observer) observer(m.epoch, idx, r);
        }
        for (std::size_t i = 0; i < samples.size(); ++i) {
            if (m.decisions[i] == Decision::Undecided) {
                ++m.undecided;
            } else if (m.decisions[i] == decision_of(samples[i].label)) {
                ++m.correct;
            } else {
                ++m.incorrect;
            }
        }
        const auto n = static_cast<double>(std::max<std::size_t>(samples.size(), 1));
        m.accuracy = static_cast<double>(m.correct) / n;
        m.mean_act_correct = act_correct / n;
        m.mean_act_wrong = act_wrong / n;
        metrics.push_back(std::move(m));
    }
    return metrics;
}

EvalReport evaluate(ColumnNet& net, const std::vector<Sample>& samples, const TextEncoder& encoder,
                    const TrainConfig& config, Rng& rng) {
    RepeatOptions frozen;
    frozen.eligibility = config.eligibility_stdp;
    frozen.tau_e = config.tau_e;

    EvalReport rep;
    for (const auto& sample : samples) {
        const auto train = encoder.encode(sample.text, rng);
        const auto trial = repeated_presentation(net, train, sample.label, rng, frozen);
        const auto d = trial.report.majority;
        rep.decisions.push_back(d);
        const bool pos = sample.label == Label::Positive;
        (pos ? rep.pos_total : rep.neg_total) += 1;
        if (d == Decision::Undecided) {
            ++rep.undecided;
        } else if (d == decision_of(sample.label)) {
            ++rep.correct;
            (pos ? rep.pos_correct : rep.neg_correct) += 1;
        } else {
            ++rep.incorrect;
        }
    }
    rep.accuracy = samples.empty() ? 0.0 : static_cast<double>(rep.correct) / static_cast<double>(samples.size());
    return rep;
}

void write_metrics_csv(std::ostream& out, const std::vector<EpochMetrics>& metrics) {
    out << "epoch,correct,incorrect,undecided,accuracy\n";
    for (const auto& m : metrics) {
        out << m.epoch << ',' << m.correct << ',' << m.incorrect << ',' << m.undecided << ','
            << format_exact(m.accuracy) << '\n';
    }
}

std::string_view to_string(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::Single: return "single";
        case ExperimentKind::Four: return "four";
        case ExperimentKind::Ten: return "ten";
    }
    return "single";
}

std::optional<ExperimentKind> parse_experiment_kind(std::string_view name) {
    if (name == "single") return ExperimentKind::Single;
    if (name == "four") return ExperimentKind::Four;
    if (name == "ten") return ExperimentKind::Ten;
    return std::nullopt;
}

namespace {

std::vector<Sample> pick(const std::vector<Sample>& pool, std::size_t n_pos, std::size_t n_neg) {
    std::vector<Sample> pos;
    std::vector<Sample> neg;
    for (const auto& s : pool) (s.label == Label::Positive ? pos : neg).push_back(s);
    if (pos.size() < n_pos || neg.size() < n_neg) throw ConfigError("experiment pool has too few samples");
    std::vector<Sample> out;
    for (std::size_t i = 0; i < std::max(n_pos, n_neg); ++i) {
        if (i < n_pos) out.push_back(pos[i]);
        if (i < n_neg) out.push_back(neg[i]);
    }
    return out;
}

TraceRow row_for(std::size_t round, const Sample& sample, const SampleResult& r) {
    const bool pos = sample.label == Label::Positive;
    return {round, pos ? r.mean_act_pos : r.mean_act_neg, pos ? r.mean_act_neg : r.mean_act_pos, r.report.majority};
}

}  // namespace

ExperimentReport run_experiment(ExperimentKind kind, const TrainConfig& config, const std::vector<Sample>& pool) {
    config.validate();
    ExperimentReport report;
    report.kind = kind;
    report.seed = config.seed;

    const TextEncoder encoder(pool, config);
    ColumnNet net(network_config_for(config, encoder));
    auto rng = derive_rng(config.seed, stream::kNoise);
    auto eval_rng = derive_rng(config.seed, stream::kEval);

    auto observe = [&](const std::vector<Sample>& samples) {
        return [&report, &samples](std::size_t, std::size_t idx, const SampleResult& r) {
            report.trace.push_back(row_for(report.trace.size(), samples[idx], r));
        };
    };

    switch (kind) {
        case ExperimentKind::Single: {
            const auto samples = pick(pool, 0, 1);
            bias_weights(net, Decision::Positive, config.bias_factor);
            for (std::size_t round = 0; round < config.single_round_cap; ++round) {
                const auto r = train_sample(net, samples[0], encoder, config, rng);
                report.trace.push_back(row_for(round, samples[0], r));
                if (round == 0) report.initial_decision = r.report.majority;
                if (r.report.majority == Decision::Negative) {
                    report.flipped_round = round;
                    break;
                }
            }
            report.final_eval = evaluate(net, samples, encoder, config, eval_rng);
            break;
        }
        case ExperimentKind::Four: {
            const auto samples = pick(pool, 2, 2);
            auto one_epoch = config;
            one_epoch.epochs = 1;
            const auto obs = observe(samples);
            for (std::size_t e = 0; e < config.four_epoch_cap; ++e) {
                auto m = train_epochs(net, samples, encoder, one_epoch, rng, nullptr, obs, e);
                const bool all = m.front().correct == samples.size();
                report.metrics.push_back(std::move(m.front()));
                if (all) {
                    report.criterion_epoch = e;
                    break;
                }
            }
            report.final_eval = evaluate(net, samples, encoder, config, eval_rng);
            break;
        }
        case ExperimentKind::Ten: {
            const auto samples = pick(pool, 5, 5);
            auto run = config;
            run.epochs = config.ten_epochs;
            report.metrics = train_epochs(net, samples, encoder, run, rng, nullptr, observe(samples));
            const std::size_t n = report.metrics.size();
            const std::size_t q = std::max<std::size_t>(1, n / 5);
            double first = 0.0;
            double last = 0.0;
            double acc = 0.0;
            for (std::size_t i = 0; i < q; ++i) {
                first += static_cast<double>(report.metrics[i].correct);
                last += static_cast<double>(report.metrics[n - q + i].correct);
                acc += report.metrics[n - q + i].accuracy;
            }
            report.first_quintile_correct = first / static_cast<double>(q);
            report.last_quintile_correct = last / static_cast<double>(q);
            report.increasing_trend = report.last_quintile_correct > report.first_quintile_correct;
            report.final_accuracy = acc / static_cast<double>(q);
            report.final_eval = evaluate(net, samples, encoder, config, eval_rng);
            break;
        }
    }
    if (!report.initial_decision && !report.trace.empty()) report.initial_decision = report.trace.front().decision;
    return report;
}

void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& trace) {
    out << "round,act_group1,act_group2,decision\n";
    for (const auto& r : trace) {
        out << r.round << ',' << format_exact(r.act_group1) << ',' << format_exact(r.act_group2) << ','
            << to_string(r.decision) << '\n';
    }
}

}  // namespace colsnn
