#include "colsnn/activity.hpp"

#include <algorithm>
#include <string>

#include "colsnn/errors.hpp"

namespace colsnn {

double ActivityWindow::activity() const {
    return static_cast<double>(spike_count) / (static_cast<double>(population_size) * static_cast<double>(length));
}

ActivityWindow count_window(const SpikeTrain& train, std::size_t population_size, Step window_start,
                            Step window_len) {
    if (population_size == 0) throw DomainError("activity of an empty population");
    if (window_len < 1) throw DomainError("activity window must span at least one step");
    if (window_start < 0 || window_start + window_len > train.horizon()) {
        throw DomainError("activity window [" + std::to_string(window_start) + ", " +
                          std::to_string(window_start + window_len) + ") outside horizon");
    }
    const auto& ev = train.events();
    auto lo = std::lower_bound(ev.begin(), ev.end(), window_start,
                               [](const SpikeEvent& e, Step s) { return e.step < s; });
    auto hi = std::lower_bound(lo, ev.end(), window_start + window_len,
                               [](const SpikeEvent& e, Step s) { return e.step < s; });
    return {window_start, window_len, static_cast<std::size_t>(hi - lo), population_size};
}

double measure_activity(const SpikeTrain& train, std::size_t population_size, Step window_start, Step window_len) {
    return count_window(train, population_size, window_start, window_len).activity();
}

}  // namespace colsnn
