#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

namespace colsnn {

using NeuronIndex = std::uint32_t;
using Step = std::int64_t;
using PopulationId = std::uint32_t;

struct SpikeEvent {
    NeuronIndex neuron{0};
    Step step{0};

    friend bool operator==(const SpikeEvent&, const SpikeEvent&) = default;
};

// Ordering used by every train: by step, then by neuron.
inline bool event_before(const SpikeEvent& a, const SpikeEvent& b) {
    return a.step != b.step ? a.step < b.step : a.neuron < b.neuron;
}

// Spikes of one neuron space over a fixed horizon of steps.
//
// Events are kept sorted by (step, neuron) with no duplicate pair; every
// event satisfies neuron < neurons() and 0 <= step < horizon().
class SpikeTrain {
public:
    SpikeTrain() = default;
    SpikeTrain(std::size_t neurons, Step horizon, PopulationId population = 0);

    // Sorts, drops duplicate (neuron, step) pairs and validates ranges.
    static SpikeTrain from_events(std::size_t neurons, Step horizon, std::vector<SpikeEvent> events,
                                  PopulationId population = 0);

    // Appends an event that must sort after every stored event.
    void push_back(SpikeEvent event);

    std::size_t neurons() const noexcept { return neurons_; }
    Step horizon() const noexcept { return horizon_; }
    PopulationId population() const noexcept { return population_; }
    void set_population(PopulationId id) noexcept { population_ = id; }

    const std::vector<SpikeEvent>& events() const noexcept { return events_; }
    std::size_t size() const noexcept { return events_.size(); }
    bool empty() const noexcept { return events_.empty(); }

    // Events whose step equals `step`, as a contiguous view.
    std::span<const SpikeEvent> at_step(Step step) const;

    // Per-neuron sorted spike steps.
    std::vector<std::vector<Step>> by_neuron() const;

    friend bool operator==(const SpikeTrain&, const SpikeTrain&) = default;

private:
    std::size_t neurons_{0};
    Step horizon_{0};
    PopulationId population_{0};
    std::vector<SpikeEvent> events_;
};

// `neuron,step` CSV, one sorted event per row.
void write_spike_csv(std::ostream& out, const SpikeTrain& train);
void write_spike_csv(const std::filesystem::path& path, const SpikeTrain& train);
SpikeTrain read_spike_csv(std::istream& in, std::size_t neurons, Step horizon);
SpikeTrain read_spike_csv(const std::filesystem::path& path, std::size_t neurons, Step horizon);

// Dense 0/1 raster: one row per neuron, one column per step.
void write_dense_grid_csv(std::ostream& out, const SpikeTrain& train);
void write_dense_grid_csv(const std::filesystem::path& path, const SpikeTrain& train);

}  // namespace colsnn
