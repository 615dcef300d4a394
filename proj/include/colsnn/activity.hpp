#pragma once

#include <cstddef>

#include "colsnn/spike_train.hpp"

namespace colsnn {

// Population activity over [start, start + length): n_act / (N * length).
struct ActivityWindow {
    Step start{0};
    Step length{1};
    std::size_t spike_count{0};
    std::size_t population_size{1};

    double activity() const;
};

ActivityWindow count_window(const SpikeTrain& train, std::size_t population_size, Step window_start,
                            Step window_len);

// Spikes per neuron per step inside the window.
double measure_activity(const SpikeTrain& train, std::size_t population_size, Step window_start, Step window_len);

}  // namespace colsnn
