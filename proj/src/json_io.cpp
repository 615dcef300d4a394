#include "colsnn/json_io.hpp"

#include "colsnn/errors.hpp"

namespace colsnn {

void to_json(nlohmann::json& j, const NeuronParams& p) {
    j = {{"tau", p.tau},         {"resistance", p.resistance},   {"u_reset", p.u_reset},
         {"u_rest", p.u_rest},   {"u_threshold", p.u_threshold}, {"i_background", p.i_background}};
}

void from_json(const nlohmann::json& j, NeuronParams& p) {
    j.at("tau").get_to(p.tau);
    j.at("resistance").get_to(p.resistance);
    j.at("u_reset").get_to(p.u_reset);
    j.at("u_rest").get_to(p.u_rest);
    j.at("u_threshold").get_to(p.u_threshold);
    j.at("i_background").get_to(p.i_background);
}

void to_json(nlohmann::json& j, const StdpParams& p) {
    j = {{"a_plus", p.a_plus},     {"a_minus", p.a_minus}, {"tau_plus", p.tau_plus},
         {"tau_minus", p.tau_minus}, {"w_min", p.w_min},   {"w_max", p.w_max}};
}

void from_json(const nlohmann::json& j, StdpParams& p) {
    j.at("a_plus").get_to(p.a_plus);
    j.at("a_minus").get_to(p.a_minus);
    j.at("tau_plus").get_to(p.tau_plus);
    j.at("tau_minus").get_to(p.tau_minus);
    j.at("w_min").get_to(p.w_min);
    j.at("w_max").get_to(p.w_max);
}

void to_json(nlohmann::json& j, const EncoderConfig& c) {
    j = {{"window", c.window},
         {"max_tokens", c.max_tokens},
         {"n_word_neurons", c.n_word_neurons},
         {"n_pos_neurons", c.n_pos_neurons},
         {"poisson_rate", c.poisson_rate},
         {"sparsity", c.sparsity},
         {"gaussian_sigma", c.gaussian_sigma},
         {"seed", c.seed}};
}

void from_json(const nlohmann::json& j, EncoderConfig& c) {
    j.at("window").get_to(c.window);
    j.at("max_tokens").get_to(c.max_tokens);
    j.at("n_word_neurons").get_to(c.n_word_neurons);
    j.at("n_pos_neurons").get_to(c.n_pos_neurons);
    j.at("poisson_rate").get_to(c.poisson_rate);
    j.at("sparsity").get_to(c.sparsity);
    j.at("gaussian_sigma").get_to(c.gaussian_sigma);
    j.at("seed").get_to(c.seed);
}

void to_json(nlohmann::json& j, const ColumnNetConfig& c) {
    j = {{"n_input", c.n_input},
         {"n_hidden", c.n_hidden},
         {"n_column", c.n_column},
         {"neuron", c.neuron},
         {"dt", c.dt},
         {"init_lo", c.init_lo},
         {"init_hi", c.init_hi},
         {"lateral_inhibition_weight", c.lateral_inhibition_weight},
         {"mutual_inhibition_weight", c.mutual_inhibition_weight},
         {"w_min", c.bounds.w_min},
         {"w_max", c.bounds.w_max},
         {"input_gain", c.input_gain},
         {"lateral_gain", c.lateral_gain},
         {"output_gain", c.output_gain},
         {"mutual_gain", c.mutual_gain},
         {"input_drive", c.resolved_input_drive()},
         {"decision_fraction", c.decision_fraction},
         {"decision_threshold", c.decision_threshold},
         {"repetitions", c.repetitions},
         {"noise_sigma", c.noise_sigma},
         {"noise_mode", c.noise_mode == NoiseMode::Always ? "always" : "escalate"},
         {"seed", c.seed}};
}

void from_json(const nlohmann::json& j, ColumnNetConfig& c) {
    j.at("n_input").get_to(c.n_input);
    j.at("n_hidden").get_to(c.n_hidden);
    j.at("n_column").get_to(c.n_column);
    j.at("neuron").get_to(c.neuron);
    j.at("dt").get_to(c.dt);
    j.at("init_lo").get_to(c.init_lo);
    j.at("init_hi").get_to(c.init_hi);
    j.at("lateral_inhibition_weight").get_to(c.lateral_inhibition_weight);
    j.at("mutual_inhibition_weight").get_to(c.mutual_inhibition_weight);
    j.at("w_min").get_to(c.bounds.w_min);
    j.at("w_max").get_to(c.bounds.w_max);
    j.at("input_gain").get_to(c.input_gain);
    j.at("lateral_gain").get_to(c.lateral_gain);
    j.at("output_gain").get_to(c.output_gain);
    j.at("mutual_gain").get_to(c.mutual_gain);
    c.input_drive = j.at("input_drive").get<double>();
    j.at("decision_fraction").get_to(c.decision_fraction);
    j.at("decision_threshold").get_to(c.decision_threshold);
    j.at("repetitions").get_to(c.repetitions);
    j.at("noise_sigma").get_to(c.noise_sigma);
    const auto mode = j.at("noise_mode").get<std::string>();
    if (mode != "always" && mode != "escalate") throw ConfigError("unknown noise_mode '" + mode + "'");
    c.noise_mode = mode == "always" ? NoiseMode::Always : NoiseMode::Escalate;
    j.at("seed").get_to(c.seed);
}

void to_json(nlohmann::json& j, const TrainConfig& c) {
    j = {{"epochs", c.epochs},
         {"scheme", c.scheme == RewardScheme::Simple ? "simple" : "weighted"},
         {"encoder", std::string(to_string(c.encoder))},
         {"encoding", c.encoding},
         {"network", c.network},
         {"hidden_stdp", c.hidden_stdp},
         {"eligibility_stdp", c.eligibility_stdp},
         {"tau_e", c.tau_e},
         {"plasticity", c.plasticity},
         {"vocabulary", c.vocabulary},
         {"bias_factor", c.bias_factor},
         {"single_round_cap", c.single_round_cap},
         {"four_epoch_cap", c.four_epoch_cap},
         {"ten_epochs", c.ten_epochs},
         {"seed", c.seed}};
}

namespace {

nlohmann::json decisions_json(const std::vector<Decision>& decisions) {
    auto out = nlohmann::json::array();
    for (auto d : decisions) out.push_back(std::string(to_string(d)));
    return out;
}

}  // namespace

void to_json(nlohmann::json& j, const EpochMetrics& m) {
    j = {{"epoch", m.epoch},
         {"correct", m.correct},
         {"incorrect", m.incorrect},
         {"undecided", m.undecided},
         {"accuracy", m.accuracy},
         {"mean_act_correct", m.mean_act_correct},
         {"mean_act_wrong", m.mean_act_wrong},
         {"decisions", decisions_json(m.decisions)}};
}

void to_json(nlohmann::json& j, const EvalReport& r) {
    j = {{"accuracy", r.accuracy},
         {"correct", r.correct},
         {"incorrect", r.incorrect},
         {"undecided", r.undecided},
         {"positive", {{"total", r.pos_total}, {"correct", r.pos_correct}}},
         {"negative", {{"total", r.neg_total}, {"correct", r.neg_correct}}},
         {"decisions", decisions_json(r.decisions)}};
}

void to_json(nlohmann::json& j, const ExperimentReport& r) {
    j = {{"kind", std::string(to_string(r.kind))}, {"seed", r.seed}, {"rounds", r.trace.size()}};
    j["initial_decision"] = r.initial_decision ? nlohmann::json(std::string(to_string(*r.initial_decision))) : nlohmann::json(nullptr);
    switch (r.kind) {
        case ExperimentKind::Single:
            j["flipped"] = r.flipped_round.has_value();
            j["flipped_round"] = r.flipped_round ? nlohmann::json(*r.flipped_round) : nlohmann::json(nullptr);
            break;
        case ExperimentKind::Four:
            j["criterion_reached"] = r.criterion_epoch.has_value();
            j["criterion_epoch"] = r.criterion_epoch ? nlohmann::json(*r.criterion_epoch) : nlohmann::json(nullptr);
            j["epochs"] = r.metrics.size();
            break;
        case ExperimentKind::Ten:
            j["epochs"] = r.metrics.size();
            j["first_quintile_correct"] = r.first_quintile_correct;
            j["last_quintile_correct"] = r.last_quintile_correct;
            j["increasing_trend"] = r.increasing_trend;
            j["final_accuracy"] = r.final_accuracy;
            break;
    }
    j["final_eval"] = r.final_eval ? nlohmann::json(*r.final_eval) : nlohmann::json(nullptr);
}

}  // namespace colsnn
