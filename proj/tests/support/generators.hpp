#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <utility>
#include <vector>

#include "colsnn/connection.hpp"
#include "colsnn/rng.hpp"
#include "colsnn/spike_train.hpp"
#include "colsnn/stdp.hpp"

namespace colsnn::gen {

inline std::size_t uniform_index(Rng& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline double uniform_real(Rng& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// Random train with up to max_spikes events (duplicates collapse).
inline SpikeTrain random_train(Rng& rng, std::size_t neurons, Step horizon, std::size_t max_spikes) {
    std::vector<SpikeEvent> events;
    const auto n = uniform_index(rng, 0, max_spikes);
    for (std::size_t k = 0; k < n; ++k) {
        events.push_back({static_cast<NeuronIndex>(uniform_index(rng, 0, neurons - 1)),
                          static_cast<Step>(uniform_index(rng, 0, static_cast<std::size_t>(horizon - 1)))});
    }
    return SpikeTrain::from_events(neurons, horizon, std::move(events));
}

inline std::vector<double> random_weights(Rng& rng, std::size_t count, double lo, double hi) {
    std::vector<double> w(count);
    for (auto& v : w) v = uniform_real(rng, lo, hi);
    return w;
}

// Every nearest-neighbour pair found by scanning all spike pairs of a
// synapse: for each post spike the closest strictly earlier pre spike, for
// each pre spike the closest strictly earlier post spike.
struct OraclePair {
    std::size_t pre;
    std::size_t post;
    Step delta;  // t_post - t_pre
    Step at;     // later spike of the pair
};

inline std::vector<OraclePair> brute_force_pairs(const SpikeTrain& pre, const SpikeTrain& post) {
    std::vector<OraclePair> out;
    for (std::size_t i = 0; i < pre.neurons(); ++i) {
        std::vector<Step> ti;
        for (const auto& e : pre.events()) {
            if (e.neuron == i) ti.push_back(e.step);
        }
        for (std::size_t j = 0; j < post.neurons(); ++j) {
            std::vector<Step> tj;
            for (const auto& e : post.events()) {
                if (e.neuron == j) tj.push_back(e.step);
            }
            for (auto tp : tj) {
                Step best = -1;
                for (auto t : ti) {
                    if (t < tp && t > best) best = t;
                }
                if (best >= 0) out.push_back({i, j, tp - best, tp});
            }
            for (auto tq : ti) {
                Step best = -1;
                for (auto t : tj) {
                    if (t < tq && t > best) best = t;
                }
                if (best >= 0) out.push_back({i, j, best - tq, tq});
            }
        }
    }
    return out;
}

// Summed STDP change per synapse from the brute-force pairing.
inline std::map<std::pair<std::size_t, std::size_t>, double> oracle_stdp_sums(const SpikeTrain& pre,
                                                                             const SpikeTrain& post,
                                                                             const StdpParams& p, double dt) {
    std::map<std::pair<std::size_t, std::size_t>, double> sums;
    for (const auto& pr : brute_force_pairs(pre, post)) {
        const double d = static_cast<double>(pr.delta) * dt;
        double v = 0.0;
        if (d > 0) v = p.a_plus * std::exp(-d / p.tau_plus);
        if (d < 0) v = -p.a_minus * std::exp(d / p.tau_minus);
        sums[{pr.pre, pr.post}] += v;
    }
    return sums;
}

}  // namespace colsnn::gen
