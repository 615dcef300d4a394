#include "colsnn/network.hpp"

#include <cmath>
#include <string>

#include "colsnn/errors.hpp"

namespace colsnn {

Network::Network(double dt) : dt_(dt) {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("dt must be > 0");
}

PopulationId Network::add_population(std::size_t size, const NeuronParams& params) {
    if (size == 0) throw ConfigError("population size must be >= 1");
    params.validate();
    const auto id = static_cast<PopulationId>(populations_.size());
    populations_.emplace_back(id, size, params);
    fired_.emplace_back();
    previous_.emplace_back();
    currents_.emplace_back(size, 0.0);
    return id;
}

std::size_t Network::add_connection(Connection conn) {
    const auto n = populations_.size();
    if (conn.pre() >= n || conn.post() >= n) {
        throw ConfigError("connection references unknown population " +
                          std::to_string(conn.pre() >= n ? conn.pre() : conn.post()));
    }
    if (conn.pre_size() != populations_[conn.pre()].size() || conn.post_size() != populations_[conn.post()].size()) {
        throw ConfigError("connection shape does not match its populations");
    }
    connections_.push_back(std::move(conn));
    return connections_.size() - 1;
}

void Network::set_input(PopulationId population, double drive) {
    if (population >= populations_.size()) throw ConfigError("unknown input population");
    if (!std::isfinite(drive) || drive < 0.0) throw ConfigError("input drive must be finite and >= 0");
    input_ = population;
    drive_ = drive;
}

void Network::reset_state() {
    for (auto& p : populations_) p.reset_state();
    for (auto& f : fired_) f.clear();
    for (auto& f : previous_) f.clear();
}

const std::vector<std::vector<NeuronIndex>>& Network::step(const SpikeTrain& external, Step step, Rng& rng,
                                                           double noise_sigma) {
    if (step < 0 || step >= external.horizon()) {
        throw InputError("step " + std::to_string(step) + " outside presentation horizon");
    }
    if (!populations_.empty() && external.neurons() != populations_[input_].size()) {
        throw ConfigError("external train neuron space does not match the input population");
    }

    std::swap(previous_, fired_);

    for (std::size_t p = 0; p < populations_.size(); ++p) {
        std::fill(currents_[p].begin(), currents_[p].end(), populations_[p].params.i_background);
    }

    for (const auto& conn : connections_) {
        const auto& spikes = previous_[conn.pre()];
        if (spikes.empty()) continue;
        auto& cur = currents_[conn.post()];
        const double k = conn.efficacy();
        for (auto i : spikes) {
            const auto row = conn.row(i);
            for (std::size_t j = 0; j < row.size(); ++j) cur[j] += k * row[j];
        }
    }

    if (noise_sigma > 0.0) {
        std::normal_distribution<double> noise(0.0, noise_sigma);
        for (std::size_t p = 0; p < populations_.size(); ++p) {
            if (p == input_) continue;
            for (auto& c : currents_[p]) c += noise(rng);
        }
    }

    if (!populations_.empty()) {
        auto& cur = currents_[input_];
        for (const auto& e : external.at_step(step)) cur[e.neuron] += drive_;
    }

    for (std::size_t p = 0; p < populations_.size(); ++p) {
        auto& pop = populations_[p];
        auto& out = fired_[p];
        out.clear();
        const auto& cur = currents_[p];
        for (std::size_t n = 0; n < pop.potentials.size(); ++n) {
            const auto r = lif_step(pop.potentials[n], cur[n], pop.params, dt_, step);
            pop.potentials[n] = r.potential;
            if (r.spiked) out.push_back(static_cast<NeuronIndex>(n));
        }
    }
    return fired_;
}

std::vector<std::vector<SpikeEvent>> step_network(Network& net, const SpikeTrain& external, Step step, Rng& rng,
                                                  double noise_sigma) {
    const auto& fired = net.step(external, step, rng, noise_sigma);
    std::vector<std::vector<SpikeEvent>> out(fired.size());
    for (std::size_t p = 0; p < fired.size(); ++p) {
        out[p].reserve(fired[p].size());
        for (auto n : fired[p]) out[p].push_back({n, step});
    }
    return out;
}

std::vector<SpikeTrain> simulate(Network& net, const SpikeTrain& external, Rng& rng, double noise_sigma) {
    if (external.horizon() < 1) throw InputError("presentation horizon must be >= 1");
    net.reset_state();
    std::vector<SpikeTrain> history;
    history.reserve(net.population_count());
    for (std::size_t p = 0; p < net.population_count(); ++p) {
        history.emplace_back(net.population(static_cast<PopulationId>(p)).size(), external.horizon(),
                             static_cast<PopulationId>(p));
    }
    for (Step s = 0; s < external.horizon(); ++s) {
        const auto& fired = net.step(external, s, rng, noise_sigma);
        for (std::size_t p = 0; p < fired.size(); ++p) {
            for (auto n : fired[p]) history[p].push_back({n, s});
        }
    }
    return history;
}

}  // namespace colsnn
