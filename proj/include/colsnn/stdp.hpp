#pragma once

#include <optional>
#include <vector>

#include "colsnn/connection.hpp"
#include "colsnn/spike_train.hpp"

namespace colsnn {

struct StdpParams {
    double a_plus{0.05};
    double a_minus{0.055};
    double tau_plus{20.0};   // ms
    double tau_minus{20.0};  // ms
    double w_min{0.0};
    double w_max{1.0};

    void validate() const;
};

// Pair-based window, delta_t = t_post - t_pre in ms. Zero at delta_t == 0.
double stdp_delta(double delta_t, const StdpParams& params);

// Calls fn(pre, post, delta_t_steps, pair_step) for every nearest-neighbour
// pair: each post spike with the latest strictly earlier pre spike, and each
// pre spike with the latest strictly earlier post spike. pair_step is the
// step of the later spike of the pair.
template <typename Fn>
void for_each_nearest_pair(const std::vector<std::vector<Step>>& pre_times,
                           const std::vector<std::vector<Step>>& post_times, Fn&& fn);

// Nearest-neighbour STDP summed per synapse, then clamped into bounds.
// `dt` converts steps to ms. The connection must be in Stdp mode.
void apply_stdp(Connection& conn, const SpikeTrain& pre, const SpikeTrain& post, const StdpParams& params,
                double dt = 1.0);

// Per-synapse decaying store of would-be STDP updates.
//
// Values are referenced to `time()`, the latest contribution time in ms;
// older content decays by exp(-elapsed / tau_e) when newer terms arrive.
class EligibilityTrace {
public:
    EligibilityTrace(std::size_t rows, std::size_t cols, double tau_e = 250.0);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    double tau_e() const noexcept { return tau_e_; }
    std::optional<double> time() const noexcept { return time_; }

    double at(std::size_t i, std::size_t j) const { return values_[i * cols_ + j]; }
    const std::vector<double>& values() const noexcept { return values_; }
    bool is_zero() const;

    void reset();

    // Adds terms at absolute times (ms); each term is (row, col, value, time).
    struct Term {
        std::size_t row;
        std::size_t col;
        double value;
        double time;
    };
    void add_terms(const std::vector<Term>& terms);

private:
    std::size_t rows_;
    std::size_t cols_;
    double tau_e_;
    std::optional<double> time_;
    std::vector<double> values_;
};

// Stores the apply_stdp pairing terms of one presentation in the trace.
// `time_offset` (ms) places the presentation on the trace's clock.
void accumulate_eligibility(EligibilityTrace& trace, const SpikeTrain& pre, const SpikeTrain& post,
                            const StdpParams& params, double dt = 1.0, double time_offset = 0.0);

// ---------------------------------------------------------------------------

template <typename Fn>
void for_each_nearest_pair(const std::vector<std::vector<Step>>& pre_times,
                           const std::vector<std::vector<Step>>& post_times, Fn&& fn) {
    std::vector<std::size_t> active_post;
    for (std::size_t j = 0; j < post_times.size(); ++j) {
        if (!post_times[j].empty()) active_post.push_back(j);
    }
    if (active_post.empty()) return;

    for (std::size_t i = 0; i < pre_times.size(); ++i) {
        const auto& pre = pre_times[i];
        if (pre.empty()) continue;
        for (auto j : active_post) {
            const auto& post = post_times[j];
            // Potentiation: post spike with latest earlier pre spike.
            std::size_t a = 0;
            for (auto t_post : post) {
                while (a < pre.size() && pre[a] < t_post) ++a;
                if (a > 0) fn(i, j, t_post - pre[a - 1], t_post);
            }
            // Depression: pre spike with latest earlier post spike.
            std::size_t b = 0;
            for (auto t_pre : pre) {
                while (b < post.size() && post[b] < t_pre) ++b;
                if (b > 0) fn(i, j, post[b - 1] - t_pre, t_pre);
            }
        }
    }
}

}  // namespace colsnn
