#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "colsnn/corpus.hpp"
#include "colsnn/network.hpp"
#include "colsnn/reward.hpp"
#include "colsnn/stdp.hpp"

namespace colsnn {

enum class Decision { Positive, Negative, Undecided };

std::string_view to_string(Decision d);
Decision decision_of(Label label);

// Sizes, wiring strengths and readout settings of the two-column classifier.
//
// Weights are magnitudes in [bounds.w_min, bounds.w_max]; each connection
// turns a unit weight into `*_gain` units of input current.
// When presentation noise is on: after the first Undecided answer of a
// trial, or for every presentation.
enum class NoiseMode { Escalate, Always };

struct ColumnNetConfig {
    std::size_t n_input{200};
    std::size_t n_hidden{100};
    std::size_t n_column{25};
    NeuronParams neuron{};
    double dt{1.0};

    double init_lo{0.1};
    double init_hi{0.3};
    double lateral_inhibition_weight{0.3};
    double mutual_inhibition_weight{0.5};
    WeightBounds bounds{};

    double input_gain{12.0};
    double lateral_gain{1.0};
    double output_gain{12.0};
    double mutual_gain{4.0};
    // Current injected per external spike; by default twice what lifts a
    // neuron from u_reset over threshold in one step.
    std::optional<double> input_drive{};

    double decision_fraction{0.2};
    double decision_threshold{0.02};
    std::size_t repetitions{10};
    double noise_sigma{8.0};
    NoiseMode noise_mode{NoiseMode::Escalate};

    std::uint64_t seed{0};

    void validate() const;
    double resolved_input_drive() const;
};

// NG_In -> NG_1 -> {NG_pos, NG_neg} with hidden lateral inhibition and
// mutual inhibition between the two output columns.
class ColumnNet {
public:
    static constexpr PopulationId kInput = 0;
    static constexpr PopulationId kHidden = 1;
    static constexpr PopulationId kPositive = 2;
    static constexpr PopulationId kNegative = 3;

    explicit ColumnNet(const ColumnNetConfig& config);

    const ColumnNetConfig& config() const noexcept { return config_; }
    Network& network() noexcept { return net_; }
    const Network& network() const noexcept { return net_; }

    Connection& input_to_hidden() { return net_.connection(in_hidden_); }
    Connection& lateral() { return net_.connection(lateral_); }
    Connection& hidden_to(Decision column);
    Connection& inhibition_from(Decision column);
    const Connection& input_to_hidden() const { return net_.connection(in_hidden_); }
    const Connection& lateral() const { return net_.connection(lateral_); }
    const Connection& hidden_to(Decision column) const;
    const Connection& inhibition_from(Decision column) const;

    // Weight-file stems, in connection order.
    static const std::vector<std::string>& connection_names();

    void save(const std::filesystem::path& dir) const;
    static ColumnNet load(const std::filesystem::path& dir);

private:
    ColumnNetConfig config_;
    Network net_;
    std::size_t in_hidden_{0};
    std::size_t lateral_{0};
    std::size_t hidden_pos_{0};
    std::size_t hidden_neg_{0};
    std::size_t pos_neg_{0};
    std::size_t neg_pos_{0};
};

ColumnNet build_network(const ColumnNetConfig& config);

// SHA-1 over every weight of the network, hex encoded.
std::string weights_hash(const ColumnNet& net);

// Gap rule: |a_pos - a_neg| < threshold is Undecided, otherwise the larger side.
Decision decide(double act_pos, double act_neg, double threshold);

struct Presentation {
    std::vector<SpikeTrain> history;  // one train per population
    double act_pos{0.0};
    double act_neg{0.0};
    Decision decision{Decision::Undecided};
};

// Resets potentials, runs the whole train and reads activity over the final
// decision window of the horizon.
Presentation present(ColumnNet& net, const SpikeTrain& train, Rng& rng, double noise_sigma);

struct ConfidenceReport {
    int h_correct{0};
    int h_incorrect{0};
    int undecided{0};
    Decision majority{Decision::Undecided};
    double confidence_fraction{0.0};
};

struct PresentationOutcome {
    double act_pos;
    double act_neg;
    Decision decision;
    bool noisy;
};

struct RepeatOptions {
    // Online hidden-layer STDP after every presentation; frozen when empty.
    std::optional<StdpParams> hidden_stdp{};
    StdpParams eligibility{};
    double tau_e{250.0};
};

struct TrialResult {
    ConfidenceReport report;
    TrialHistory history;  // last ten presentations
    EligibilityTrace trace_pos;
    EligibilityTrace trace_neg;
    std::vector<PresentationOutcome> outcomes;

    EligibilityTrace& trace_for(Decision column) { return column == Decision::Positive ? trace_pos : trace_neg; }
};

// Presents `train` config.repetitions times and tallies the answers. Noise
// of config.noise_sigma follows config.noise_mode. Eligibility traces of
// both output connections accumulate over all presentations. The report
// counts every presentation; `history` only the last ten.
TrialResult repeated_presentation(ColumnNet& net, const SpikeTrain& train, Label label, Rng& rng,
                                  const RepeatOptions& options = {});

// Multiplies every hidden -> `column` weight by `factor` (clamped).
void bias_weights(ColumnNet& net, Decision column, double factor);

}  // namespace colsnn
