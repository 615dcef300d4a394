#include "colsnn/spike_train.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <string>

#include "colsnn/errors.hpp"

namespace colsnn {

namespace {

void check_event(const SpikeEvent& e, std::size_t neurons, Step horizon) {
    if (e.neuron >= neurons) {
        throw InputError("spike neuron " + std::to_string(e.neuron) + " outside neuron space of " +
                         std::to_string(neurons));
    }
    if (e.step < 0 || e.step >= horizon) {
        throw InputError("spike step " + std::to_string(e.step) + " outside horizon " +
                         std::to_string(horizon));
    }
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw FileError("cannot open " + path.string() + " for writing");
    return out;
}

}  // namespace

SpikeTrain::SpikeTrain(std::size_t neurons, Step horizon, PopulationId population)
    : neurons_(neurons), horizon_(horizon), population_(population) {
    if (horizon < 0) throw InputError("negative horizon");
}

SpikeTrain SpikeTrain::from_events(std::size_t neurons, Step horizon, std::vector<SpikeEvent> events,
                                   PopulationId population) {
    SpikeTrain train(neurons, horizon, population);
    for (const auto& e : events) check_event(e, neurons, horizon);
    std::sort(events.begin(), events.end(), event_before);
    events.erase(std::unique(events.begin(), events.end()), events.end());
    train.events_ = std::move(events);
    return train;
}

void SpikeTrain::push_back(SpikeEvent event) {
    check_event(event, neurons_, horizon_);
    if (!events_.empty() && !event_before(events_.back(), event)) {
        throw InputError("events must be appended in (step, neuron) order");
    }
    events_.push_back(event);
}

std::span<const SpikeEvent> SpikeTrain::at_step(Step step) const {
    auto lo = std::lower_bound(events_.begin(), events_.end(), step,
                               [](const SpikeEvent& e, Step s) { return e.step < s; });
    auto hi = std::upper_bound(lo, events_.end(), step,
                               [](Step s, const SpikeEvent& e) { return s < e.step; });
    return {lo, hi};
}

std::vector<std::vector<Step>> SpikeTrain::by_neuron() const {
    std::vector<std::vector<Step>> out(neurons_);
    for (const auto& e : events_) out[e.neuron].push_back(e.step);
    return out;
}

void write_spike_csv(std::ostream& out, const SpikeTrain& train) {
    out << "neuron,step\n";
    for (const auto& e : train.events()) out << e.neuron << ',' << e.step << '\n';
}

void write_spike_csv(const std::filesystem::path& path, const SpikeTrain& train) {
    auto out = open_out(path);
    write_spike_csv(out, train);
}

SpikeTrain read_spike_csv(std::istream& in, std::size_t neurons, Step horizon) {
    std::string line;
    std::size_t line_no = 1;
    if (!std::getline(in, line) || line != "neuron,step") {
        throw ParseError("expected header 'neuron,step'", 1);
    }
    std::vector<SpikeEvent> events;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        auto comma = line.find(',');
        if (comma == std::string::npos) throw ParseError("missing comma", line_no);
        try {
            std::size_t used = 0;
            const auto neuron = std::stoull(line.substr(0, comma), &used);
            if (used != comma) throw ParseError("bad neuron field", line_no);
            const auto rest = line.substr(comma + 1);
            const auto step = std::stoll(rest, &used);
            if (used != rest.size()) throw ParseError("bad step field", line_no);
            events.push_back({static_cast<NeuronIndex>(neuron), step});
        } catch (const std::logic_error&) {
            throw ParseError("non-numeric field", line_no);
        }
    }
    auto train = SpikeTrain::from_events(neurons, horizon, events);
    if (train.size() != events.size()) throw ParseError("duplicate (neuron, step) event", 0);
    if (!std::is_sorted(events.begin(), events.end(), event_before)) {
        throw ParseError("events not sorted by (step, neuron)", 0);
    }
    return train;
}

SpikeTrain read_spike_csv(const std::filesystem::path& path, std::size_t neurons, Step horizon) {
    std::ifstream in(path);
    if (!in) throw FileError("cannot open " + path.string());
    return read_spike_csv(in, neurons, horizon);
}

void write_dense_grid_csv(std::ostream& out, const SpikeTrain& train) {
    const auto steps = static_cast<std::size_t>(train.horizon());
    std::vector<char> grid(train.neurons() * steps, '0');
    for (const auto& e : train.events()) grid[e.neuron * steps + static_cast<std::size_t>(e.step)] = '1';
    std::string row;
    for (std::size_t n = 0; n < train.neurons(); ++n) {
        row.clear();
        for (std::size_t s = 0; s < steps; ++s) {
            if (s) row.push_back(',');
            row.push_back(grid[n * steps + s]);
        }
        out << row << '\n';
    }
}

void write_dense_grid_csv(const std::filesystem::path& path, const SpikeTrain& train) {
    auto out = open_out(path);
    write_dense_grid_csv(out, train);
}

}  // namespace colsnn
