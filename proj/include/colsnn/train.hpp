#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "colsnn/column_net.hpp"
#include "colsnn/corpus.hpp"
#include "colsnn/encoders.hpp"
#include "colsnn/reward.hpp"

namespace colsnn {

struct TrainConfig {
    std::size_t epochs{50};
    RewardScheme scheme{RewardScheme::Weighted};
    EncoderKind encoder{EncoderKind::Codebook};
    EncoderConfig encoding{.window = 80, .n_pos_neurons = 30};
    ColumnNetConfig network{
        .input_gain = 10.0, .lateral_gain = 0.5, .output_gain = 6.0, .mutual_gain = 0.5, .noise_sigma = 6.0};
    StdpParams hidden_stdp{.a_plus = 0.0, .a_minus = 0.0};
    StdpParams eligibility_stdp{.a_plus = 0.03, .a_minus = 0.0};
    double tau_e{30.0};
    bool plasticity{true};
    std::size_t vocabulary{1000};  // dictionary size cap

    // Experiment settings.
    double bias_factor{5.0};
    std::size_t single_round_cap{200};
    std::size_t four_epoch_cap{100};
    std::size_t ten_epochs{200};

    std::uint64_t seed{0};

    void validate() const;
};

// Dictionary, codebook and encoder settings that turn text into input trains.
class TextEncoder {
public:
    TextEncoder(const std::vector<Sample>& vocabulary_source, const TrainConfig& config);
    TextEncoder(Dictionary dictionary, const TrainConfig& config);

    const Dictionary& dictionary() const noexcept { return dict_; }
    const Codebook* codebook() const noexcept { return codebook_ ? &*codebook_ : nullptr; }
    EncoderKind kind() const noexcept { return kind_; }
    const EncoderConfig& config() const noexcept { return config_; }
    std::size_t neuron_space() const noexcept { return neurons_; }

    SpikeTrain encode(const std::string& text, Rng& rng) const;

private:
    EncoderKind kind_;
    EncoderConfig config_;
    Dictionary dict_;
    std::optional<Codebook> codebook_;
    std::size_t neurons_;
};

// Network config with n_input and seed filled in for `encoder`.
ColumnNetConfig network_config_for(const TrainConfig& config, const TextEncoder& encoder);

struct RewardEvent {
    std::size_t trial{0};
    TrialHistory history;
    RewardSignal signal;
};

// Plasticity events of a run, in order.
struct TrainLog {
    std::size_t trials{0};
    std::size_t stdp_updates{0};
    std::vector<RewardEvent> rewards;
};

struct SampleResult {
    ConfidenceReport report;
    RewardSignal signal;
    double mean_act_pos{0.0};
    double mean_act_neg{0.0};
};

// Encode, present config.network.repetitions times (hidden STDP online),
// then convert the eligibility traces through the configured reward scheme.
SampleResult train_sample(ColumnNet& net, const Sample& sample, const TextEncoder& encoder, const TrainConfig& config,
                          Rng& rng, TrainLog* log = nullptr);

struct EpochMetrics {
    std::size_t epoch{0};
    std::vector<Decision> decisions;  // per sample, in corpus order
    std::size_t correct{0};
    std::size_t incorrect{0};
    std::size_t undecided{0};
    double accuracy{0.0};
    double mean_act_correct{0.0};  // activity of the label's column
    double mean_act_wrong{0.0};
};

// Called after every train_sample with (epoch, sample index, result).
using TrialObserver = std::function<void(std::size_t, std::size_t, const SampleResult&)>;

std::vector<EpochMetrics> train_epochs(ColumnNet& net, const std::vector<Sample>& samples,
                                       const TextEncoder& encoder, const TrainConfig& config, Rng& rng,
                                       TrainLog* log = nullptr, const TrialObserver& observer = {},
                                       std::size_t first_epoch = 0);

struct EvalReport {
    std::vector<Decision> decisions;
    std::size_t correct{0};
    std::size_t incorrect{0};
    std::size_t undecided{0};
    double accuracy{0.0};
    std::size_t pos_total{0};
    std::size_t pos_correct{0};
    std::size_t neg_total{0};
    std::size_t neg_correct{0};
};

// Majority vote over repeated presentations with all plasticity frozen.
EvalReport evaluate(ColumnNet& net, const std::vector<Sample>& samples, const TextEncoder& encoder,
                    const TrainConfig& config, Rng& rng);

void write_metrics_csv(std::ostream& out, const std::vector<EpochMetrics>& metrics);

enum class ExperimentKind { Single, Four, Ten };
std::string_view to_string(ExperimentKind kind);
std::optional<ExperimentKind> parse_experiment_kind(std::string_view name);

struct TraceRow {
    std::size_t round{0};
    double act_group1{0.0};  // column of the presented input's label
    double act_group2{0.0};  // competing column
    Decision decision{Decision::Undecided};
};

struct ExperimentReport {
    ExperimentKind kind{ExperimentKind::Single};
    std::uint64_t seed{0};
    std::vector<TraceRow> trace;
    std::vector<EpochMetrics> metrics;

    std::optional<Decision> initial_decision;
    std::optional<std::size_t> flipped_round;   // single
    std::optional<std::size_t> criterion_epoch;  // four

    double first_quintile_correct{0.0};  // ten
    double last_quintile_correct{0.0};
    bool increasing_trend{false};
    double final_accuracy{0.0};  // mean accuracy over the last fifth of epochs

    std::optional<EvalReport> final_eval;
};

// The three canned protocols on the reference samples:
//  single: positive column biased by bias_factor, one negative input trained
//          until its majority decision flips or single_round_cap rounds;
//  four:   two positive and two negative inputs until an epoch has all four
//          correct, at most four_epoch_cap epochs;
//  ten:    five and five inputs for ten_epochs epochs with the trend summary.
ExperimentReport run_experiment(ExperimentKind kind, const TrainConfig& config,
                                const std::vector<Sample>& pool = reference_samples());

void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& trace);

}  // namespace colsnn
