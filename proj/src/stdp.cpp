#include "colsnn/stdp.hpp"

#include <algorithm>
#include <cmath>

#include "colsnn/errors.hpp"

namespace colsnn {

void StdpParams::validate() const {
    if (!(a_plus >= 0.0) || !(a_minus >= 0.0)) throw ConfigError("stdp amplitudes must be >= 0");
    if (!(tau_plus > 0.0) || !(tau_minus > 0.0)) throw ConfigError("stdp time constants must be > 0");
    if (!(w_min < w_max)) throw ConfigError("stdp bounds must satisfy w_min < w_max");
}

double stdp_delta(double delta_t, const StdpParams& p) {
    if (delta_t > 0.0) return p.a_plus * std::exp(-delta_t / p.tau_plus);
    if (delta_t < 0.0) return -p.a_minus * std::exp(delta_t / p.tau_minus);
    return 0.0;
}

namespace {

void check_shapes(std::size_t rows, std::size_t cols, const SpikeTrain& pre, const SpikeTrain& post) {
    if (pre.neurons() != rows || post.neurons() != cols) {
        throw ConfigError("spike trains do not match the synapse matrix dimensions");
    }
    if (pre.horizon() != post.horizon()) throw ConfigError("pre and post trains have different horizons");
}

}  // namespace

void apply_stdp(Connection& conn, const SpikeTrain& pre, const SpikeTrain& post, const StdpParams& params,
                double dt) {
    if (conn.mode() != PlasticityMode::Stdp) throw ConfigError("apply_stdp on a connection not in stdp mode");
    check_shapes(conn.pre_size(), conn.post_size(), pre, post);

    const auto pre_times = pre.by_neuron();
    const auto post_times = post.by_neuron();
    std::vector<double> delta(conn.pre_size() * conn.post_size(), 0.0);
    std::vector<char> touched(delta.size(), 0);
    for_each_nearest_pair(pre_times, post_times, [&](std::size_t i, std::size_t j, Step d, Step) {
        const auto k = i * conn.post_size() + j;
        delta[k] += stdp_delta(static_cast<double>(d) * dt, params);
        touched[k] = 1;
    });

    const double lo = std::max(params.w_min, conn.bounds().w_min);
    const double hi = std::min(params.w_max, conn.bounds().w_max);
    for (std::size_t i = 0; i < conn.pre_size(); ++i) {
        for (std::size_t j = 0; j < conn.post_size(); ++j) {
            const auto k = i * conn.post_size() + j;
            if (!touched[k]) continue;
            conn.set(i, j, std::clamp(conn.weight(i, j) + delta[k], lo, hi));
        }
    }
}

EligibilityTrace::EligibilityTrace(std::size_t rows, std::size_t cols, double tau_e)
    : rows_(rows), cols_(cols), tau_e_(tau_e), values_(rows * cols, 0.0) {
    if (!(tau_e > 0.0)) throw ConfigError("eligibility tau_e must be > 0");
}

bool EligibilityTrace::is_zero() const {
    return std::all_of(values_.begin(), values_.end(), [](double v) { return v == 0.0; });
}

void EligibilityTrace::reset() {
    std::fill(values_.begin(), values_.end(), 0.0);
    time_.reset();
}

void EligibilityTrace::add_terms(const std::vector<Term>& terms) {
    if (terms.empty()) return;
    double latest = time_.value_or(terms.front().time);
    for (const auto& t : terms) latest = std::max(latest, t.time);

    if (time_ && latest > *time_) {
        const double decay = std::exp(-(latest - *time_) / tau_e_);
        for (auto& v : values_) v *= decay;
    }
    for (const auto& t : terms) {
        const double age = latest - t.time;
        values_[t.row * cols_ + t.col] += age > 0.0 ? t.value * std::exp(-age / tau_e_) : t.value;
    }
    time_ = latest;
}

void accumulate_eligibility(EligibilityTrace& trace, const SpikeTrain& pre, const SpikeTrain& post,
                            const StdpParams& params, double dt, double time_offset) {
    check_shapes(trace.rows(), trace.cols(), pre, post);
    std::vector<EligibilityTrace::Term> terms;
    for_each_nearest_pair(pre.by_neuron(), post.by_neuron(), [&](std::size_t i, std::size_t j, Step d, Step at) {
        const double value = stdp_delta(static_cast<double>(d) * dt, params);
        if (value != 0.0) terms.push_back({i, j, value, time_offset + static_cast<double>(at) * dt});
    });
    trace.add_terms(terms);
}

}  // namespace colsnn
