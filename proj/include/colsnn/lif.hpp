#pragma once

#include <cstdint>
#include <vector>

#include "colsnn/spike_train.hpp"

namespace colsnn {

// Discretization of a presentation: step size and window length.
struct SimClock {
    double dt{1.0};     // ms
    Step horizon{1};    // steps

    void validate() const;
};

// Leaky integrate-and-fire constants. Voltages in mV, tau in ms.
struct NeuronParams {
    double tau{10.0};
    double resistance{5.0};
    double u_reset{-75.0};
    double u_rest{-67.0};
    double u_threshold{-37.0};
    double i_background{0.7};

    void validate() const;
};

struct LifUpdate {
    double potential;
    bool spiked;
};

// One forward-Euler step of tau dU/dt = -(U - u_rest) + R I.
//
// Crossing u_threshold resets to u_reset and reports a spike. The potential
// never drops below u_reset, which acts as the floor under strong inhibition.
// `step` only labels a SimulationFault raised for non-finite inputs.
LifUpdate lif_step(double potential, double input_current, const NeuronParams& params, double dt,
                   Step step = -1);

// A group of identical LIF neurons.
struct Population {
    PopulationId id{0};
    NeuronParams params;
    std::vector<double> potentials;

    Population() = default;
    Population(PopulationId id, std::size_t size, const NeuronParams& params);

    std::size_t size() const noexcept { return potentials.size(); }
    void reset_state();
};

}  // namespace colsnn
