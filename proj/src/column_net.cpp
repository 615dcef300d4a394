#include "colsnn/column_net.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "colsnn/activity.hpp"
#include "colsnn/errors.hpp"
#include "colsnn/hash.hpp"
#include "colsnn/json_io.hpp"

namespace colsnn {

std::string_view to_string(Decision d) {
    switch (d) {
        case Decision::Positive: return "Positive";
        case Decision::Negative: return "Negative";
        case Decision::Undecided: return "Undecided";
    }
    return "Undecided";
}

Decision decision_of(Label label) {
    return label == Label::Positive ? Decision::Positive : Decision::Negative;
}

void ColumnNetConfig::validate() const {
    if (n_input < 1 || n_hidden < 1 || n_column < 1) throw ConfigError("network sizes must be >= 1");
    neuron.validate();
    if (!(dt > 0.0)) throw ConfigError("network.dt must be > 0");
    if (!(bounds.w_min >= 0.0 && bounds.w_min < bounds.w_max)) {
        throw ConfigError("network weight bounds must satisfy 0 <= w_min < w_max");
    }
    if (!(init_lo <= init_hi) || init_lo < bounds.w_min || init_hi > bounds.w_max) {
        throw ConfigError("network.init_lo/init_hi must be ordered and inside the weight bounds");
    }
    if (lateral_inhibition_weight < 0.0 || mutual_inhibition_weight < 0.0) {
        throw ConfigError("inhibition weights must be >= 0");
    }
    for (double g : {input_gain, lateral_gain, output_gain, mutual_gain}) {
        if (!(g > 0.0) || !std::isfinite(g)) throw ConfigError("connection gains must be > 0");
    }
    if (input_drive && !(*input_drive >= 0.0)) throw ConfigError("network.input_drive must be >= 0");
    if (!(decision_fraction > 0.0 && decision_fraction <= 1.0)) {
        throw ConfigError("network.decision_fraction must lie in (0, 1]");
    }
    if (!(decision_threshold >= 0.0)) throw ConfigError("network.decision_threshold must be >= 0");
    if (repetitions < 1) throw ConfigError("network.repetitions must be >= 1");
    if (!(noise_sigma >= 0.0)) throw ConfigError("network.noise_sigma must be >= 0");
}

double ColumnNetConfig::resolved_input_drive() const {
    if (input_drive) return *input_drive;
    const auto& p = neuron;
    const double needed = ((p.u_threshold - p.u_reset) * p.tau / dt + (p.u_reset - p.u_rest)) / p.resistance;
    return 2.0 * std::max(needed - p.i_background, 0.0);
}

ColumnNet::ColumnNet(const ColumnNetConfig& config) : config_(config), net_(config.dt) {
    config_.validate();
    config_.input_drive = config_.resolved_input_drive();

    net_.add_population(config_.n_input, config_.neuron);
    net_.add_population(config_.n_hidden, config_.neuron);
    net_.add_population(config_.n_column, config_.neuron);
    net_.add_population(config_.n_column, config_.neuron);
    net_.set_input(kInput, *config_.input_drive);

    const auto b = config_.bounds;
    auto rng = derive_rng(config_.seed, stream::kWeights);
    std::uniform_real_distribution<double> init(config_.init_lo, config_.init_hi);
    auto random_fill = [&](Connection& c) {
        std::vector<double> w(c.pre_size() * c.post_size());
        for (auto& v : w) v = config_.init_lo == config_.init_hi ? config_.init_lo : init(rng);
        c.assign(w);
    };

    Connection in_hidden(kInput, kHidden, config_.n_input, config_.n_hidden, Sign::Excitatory, PlasticityMode::Stdp,
                         b, config_.input_gain);
    random_fill(in_hidden);
    in_hidden_ = net_.add_connection(std::move(in_hidden));

    Connection lateral(kHidden, kHidden, config_.n_hidden, config_.n_hidden, Sign::Inhibitory, PlasticityMode::None,
                       b, config_.lateral_gain);
    lateral.fill(config_.lateral_inhibition_weight);
    for (std::size_t i = 0; i < config_.n_hidden; ++i) lateral.set(i, i, 0.0);
    lateral_ = net_.add_connection(std::move(lateral));

    for (auto column : {kPositive, kNegative}) {
        Connection out(kHidden, column, config_.n_hidden, config_.n_column, Sign::Excitatory, PlasticityMode::Rstdp, b,
                       config_.output_gain);
        random_fill(out);
        (column == kPositive ? hidden_pos_ : hidden_neg_) = net_.add_connection(std::move(out));
    }

    Connection pos_neg(kPositive, kNegative, config_.n_column, config_.n_column, Sign::Inhibitory,
                       PlasticityMode::None, b, config_.mutual_gain);
    pos_neg.fill(config_.mutual_inhibition_weight);
    pos_neg_ = net_.add_connection(std::move(pos_neg));

    Connection neg_pos(kNegative, kPositive, config_.n_column, config_.n_column, Sign::Inhibitory,
                       PlasticityMode::None, b, config_.mutual_gain);
    neg_pos.fill(config_.mutual_inhibition_weight);
    neg_pos_ = net_.add_connection(std::move(neg_pos));
}

Connection& ColumnNet::hidden_to(Decision column) {
    if (column == Decision::Undecided) throw DomainError("no output column for Undecided");
    return net_.connection(column == Decision::Positive ? hidden_pos_ : hidden_neg_);
}

const Connection& ColumnNet::hidden_to(Decision column) const {
    if (column == Decision::Undecided) throw DomainError("no output column for Undecided");
    return net_.connection(column == Decision::Positive ? hidden_pos_ : hidden_neg_);
}

Connection& ColumnNet::inhibition_from(Decision column) {
    if (column == Decision::Undecided) throw DomainError("no output column for Undecided");
    return net_.connection(column == Decision::Positive ? pos_neg_ : neg_pos_);
}

const Connection& ColumnNet::inhibition_from(Decision column) const {
    if (column == Decision::Undecided) throw DomainError("no output column for Undecided");
    return net_.connection(column == Decision::Positive ? pos_neg_ : neg_pos_);
}

const std::vector<std::string>& ColumnNet::connection_names() {
    static const std::vector<std::string> names = {"input_hidden", "hidden_lateral", "hidden_pos",
                                                   "hidden_neg",   "pos_neg",        "neg_pos"};
    return names;
}

void ColumnNet::save(const std::filesystem::path& dir) const {
    std::filesystem::create_directories(dir);
    const auto& names = connection_names();
    for (std::size_t c = 0; c < names.size(); ++c) save_connection(net_.connection(c), dir, names[c]);
    nlohmann::json manifest = {
        {"config", config_},
        {"seed", config_.seed},
        {"populations",
         {{"input", config_.n_input}, {"hidden", config_.n_hidden}, {"pos", config_.n_column}, {"neg", config_.n_column}}},
        {"connections", names},
    };
    std::ofstream out(dir / "manifest.json");
    if (!out) throw FileError("cannot write " + (dir / "manifest.json").string());
    out << manifest.dump(2) << '\n';
}

ColumnNet ColumnNet::load(const std::filesystem::path& dir) {
    std::ifstream in(dir / "manifest.json");
    if (!in) throw FileError("cannot open " + (dir / "manifest.json").string());
    ColumnNetConfig config;
    try {
        config = nlohmann::json::parse(in).at("config").get<ColumnNetConfig>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("network manifest: ") + e.what(), 0);
    }
    ColumnNet net(config);
    const auto& names = connection_names();
    for (std::size_t c = 0; c < names.size(); ++c) {
        auto loaded = load_connection(dir, names[c]);
        auto& target = net.net_.connection(c);
        if (loaded.pre() != target.pre() || loaded.post() != target.post() || loaded.sign() != target.sign() ||
            loaded.mode() != target.mode() || loaded.pre_size() != target.pre_size() ||
            loaded.post_size() != target.post_size()) {
            throw ConfigError("snapshot connection '" + names[c] + "' does not match the network layout");
        }
        target = std::move(loaded);
    }
    return net;
}

ColumnNet build_network(const ColumnNetConfig& config) {
    return ColumnNet(config);
}

std::string weights_hash(const ColumnNet& net) {
    std::vector<unsigned char> bytes;
    for (std::size_t c = 0; c < net.network().connection_count(); ++c) {
        const auto w = net.network().connection(c).weights();
        const auto* p = reinterpret_cast<const unsigned char*>(w.data());
        bytes.insert(bytes.end(), p, p + w.size_bytes());
    }
    return sha1_hex(bytes);
}

Decision decide(double act_pos, double act_neg, double threshold) {
    if (std::abs(act_pos - act_neg) < threshold) return Decision::Undecided;
    if (act_pos == act_neg) return Decision::Undecided;
    return act_pos > act_neg ? Decision::Positive : Decision::Negative;
}

Presentation present(ColumnNet& net, const SpikeTrain& train, Rng& rng, double noise_sigma) {
    if (train.horizon() < 1) throw InputError("presentation horizon must be >= 1");
    if (train.neurons() != net.config().n_input) {
        throw ConfigError("train neuron space " + std::to_string(train.neurons()) + " != n_input " +
                          std::to_string(net.config().n_input));
    }
    Presentation p;
    p.history = simulate(net.network(), train, rng, noise_sigma);

    const Step horizon = train.horizon();
    const Step len = std::clamp<Step>(
        static_cast<Step>(std::ceil(net.config().decision_fraction * static_cast<double>(horizon) - 1e-9)), 1, horizon);
    const Step start = horizon - len;
    const auto n = net.config().n_column;
    p.act_pos = measure_activity(p.history[ColumnNet::kPositive], n, start, len);
    p.act_neg = measure_activity(p.history[ColumnNet::kNegative], n, start, len);
    p.decision = decide(p.act_pos, p.act_neg, net.config().decision_threshold);
    return p;
}

TrialResult repeated_presentation(ColumnNet& net, const SpikeTrain& train, Label label, Rng& rng,
                                  const RepeatOptions& options) {
    const auto& cfg = net.config();
    TrialResult result{{}, {}, EligibilityTrace(cfg.n_hidden, cfg.n_column, options.tau_e),
                       EligibilityTrace(cfg.n_hidden, cfg.n_column, options.tau_e), {}};
    const Decision wanted = decision_of(label);
    const double dt = cfg.dt;

    bool noisy = cfg.noise_mode == NoiseMode::Always;
    double offset = 0.0;
    for (std::size_t r = 0; r < cfg.repetitions; ++r) {
        auto p = present(net, train, rng, noisy ? cfg.noise_sigma : 0.0);
        if (options.hidden_stdp) {
            apply_stdp(net.input_to_hidden(), p.history[ColumnNet::kInput], p.history[ColumnNet::kHidden],
                       *options.hidden_stdp, dt);
        }
        const auto& hidden = p.history[ColumnNet::kHidden];
        accumulate_eligibility(result.trace_pos, hidden, p.history[ColumnNet::kPositive], options.eligibility, dt,
                               offset);
        accumulate_eligibility(result.trace_neg, hidden, p.history[ColumnNet::kNegative], options.eligibility, dt,
                               offset);
        offset += static_cast<double>(train.horizon()) * dt;
        result.outcomes.push_back({p.act_pos, p.act_neg, p.decision, noisy});
        if (p.decision == Decision::Undecided) noisy = true;
    }

    auto& rep = result.report;
    const std::size_t recent_from = result.outcomes.size() > 10 ? result.outcomes.size() - 10 : 0;
    int pos_votes = 0;
    int neg_votes = 0;
    for (std::size_t i = 0; i < result.outcomes.size(); ++i) {
        const auto d = result.outcomes[i].decision;
        const bool recent = i >= recent_from;
        if (d == Decision::Undecided) {
            ++rep.undecided;
            continue;
        }
        (d == Decision::Positive ? pos_votes : neg_votes) += 1;
        if (d == wanted) {
            ++rep.h_correct;
            if (recent) ++result.history.h_correct;
        } else {
            ++rep.h_incorrect;
            if (recent) ++result.history.h_incorrect;
        }
    }
    rep.majority = pos_votes == neg_votes ? Decision::Undecided
                                          : (pos_votes > neg_votes ? Decision::Positive : Decision::Negative);
    rep.confidence_fraction = static_cast<double>(rep.h_correct) / static_cast<double>(cfg.repetitions);
    return result;
}

void bias_weights(ColumnNet& net, Decision column, double factor) {
    if (!(factor > 0.0) || !std::isfinite(factor)) throw DomainError("bias factor must be > 0");
    net.hidden_to(column).scale(factor);
}

}  // namespace colsnn
