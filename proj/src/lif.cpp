#include "colsnn/lif.hpp"

#include <cmath>

#include "colsnn/errors.hpp"

namespace colsnn {

void SimClock::validate() const {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("clock.dt must be > 0");
    if (horizon < 1) throw ConfigError("clock.horizon must be >= 1");
}

void NeuronParams::validate() const {
    if (!(tau > 0.0)) throw ConfigError("neuron.tau must be > 0");
    if (!(resistance > 0.0)) throw ConfigError("neuron.resistance must be > 0");
    if (!(u_reset <= u_rest && u_rest < u_threshold)) {
        throw ConfigError("neuron potentials must satisfy u_reset <= u_rest < u_threshold");
    }
    if (!std::isfinite(i_background)) throw ConfigError("neuron.i_background must be finite");
}

LifUpdate lif_step(double potential, double input_current, const NeuronParams& p, double dt, Step step) {
    if (!std::isfinite(potential)) throw SimulationFault("non-finite membrane potential", step);
    if (!std::isfinite(input_current)) throw SimulationFault("non-finite input current", step);

    const double du = (-(potential - p.u_rest) + p.resistance * input_current) * (dt / p.tau);
    const double next = potential + du;
    if (next >= p.u_threshold) return {p.u_reset, true};
    return {next < p.u_reset ? p.u_reset : next, false};
}

Population::Population(PopulationId pid, std::size_t size, const NeuronParams& np)
    : id(pid), params(np), potentials(size, np.u_rest) {}

void Population::reset_state() {
    std::fill(potentials.begin(), potentials.end(), params.u_rest);
}

}  // namespace colsnn
