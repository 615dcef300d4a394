#pragma once

#include <vector>

#include "colsnn/connection.hpp"
#include "colsnn/lif.hpp"
#include "colsnn/rng.hpp"
#include "colsnn/spike_train.hpp"

namespace colsnn {

// Clock-driven network of LIF populations joined by dense connections.
//
// A spike emitted at step s reaches its targets as current at step s + 1.
// External train events inject `input_drive` into the input population at
// the event's own step. Wiring errors surface when a connection is added.
class Network {
public:
    explicit Network(double dt = 1.0);

    PopulationId add_population(std::size_t size, const NeuronParams& params);
    std::size_t add_connection(Connection conn);
    void set_input(PopulationId population, double drive);

    double dt() const noexcept { return dt_; }
    PopulationId input_population() const noexcept { return input_; }
    double input_drive() const noexcept { return drive_; }

    std::size_t population_count() const noexcept { return populations_.size(); }
    const Population& population(PopulationId id) const { return populations_.at(id); }
    Population& population(PopulationId id) { return populations_.at(id); }
    const std::vector<Population>& populations() const noexcept { return populations_; }

    std::size_t connection_count() const noexcept { return connections_.size(); }
    const Connection& connection(std::size_t index) const { return connections_.at(index); }
    Connection& connection(std::size_t index) { return connections_.at(index); }

    // Potentials back to u_rest and in-flight spikes dropped.
    void reset_state();

    // Advances every neuron by one step and returns the indices that fired,
    // per population. Gaussian current noise of `noise_sigma` is added to
    // every non-input neuron when sigma > 0.
    const std::vector<std::vector<NeuronIndex>>& step(const SpikeTrain& external, Step step, Rng& rng,
                                                      double noise_sigma = 0.0);

private:
    double dt_;
    PopulationId input_{0};
    double drive_{0.0};
    std::vector<Population> populations_;
    std::vector<Connection> connections_;
    std::vector<std::vector<NeuronIndex>> fired_;
    std::vector<std::vector<NeuronIndex>> previous_;
    std::vector<std::vector<double>> currents_;
};

// Emitted events of one step, tagged with the step index, per population.
std::vector<std::vector<SpikeEvent>> step_network(Network& net, const SpikeTrain& external, Step step, Rng& rng,
                                                  double noise_sigma = 0.0);

// Runs a fresh presentation of `external` over its whole horizon and returns
// the spike history of every population.
std::vector<SpikeTrain> simulate(Network& net, const SpikeTrain& external, Rng& rng, double noise_sigma = 0.0);

}  // namespace colsnn
