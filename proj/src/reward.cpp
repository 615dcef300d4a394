#include "colsnn/reward.hpp"

#include <cmath>
#include <cstdlib>

#include "colsnn/errors.hpp"

namespace colsnn {

void TrialHistory::validate() const {
    if (h_correct < 0 || h_incorrect < 0 || h_correct + h_incorrect > 10) {
        throw DomainError("trial history needs 0 <= h_correct, h_incorrect and a sum <= 10");
    }
}

void RewardSignal::validate() const {
    auto unit = [](double v) { return v >= 0.0 && v <= 1.0; };
    if (!unit(reward) || !unit(punishment) || !unit(k)) {
        throw DomainError("reward signal fields must lie in [0, 1]");
    }
}

RewardSignal compute_reward_simple(const TrialHistory& h) {
    h.validate();
    return {h.h_incorrect / 10.0, h.h_correct / 10.0, 1.0};
}

RewardSignal compute_reward_weighted(const TrialHistory& h) {
    h.validate();
    const int gap = std::abs(h.h_correct - h.h_incorrect);
    // Products are formed in integers so each field is rounded once.
    return {static_cast<double>(gap * h.h_incorrect) / 100.0, static_cast<double>(gap * h.h_correct) / 100.0,
            gap / 10.0};
}

RewardSignal compute_reward(RewardScheme scheme, const TrialHistory& history) {
    return scheme == RewardScheme::Simple ? compute_reward_simple(history) : compute_reward_weighted(history);
}

namespace {

void apply_scaled(Connection& conn, const EligibilityTrace& trace, double scale) {
    if (trace.rows() != conn.pre_size() || trace.cols() != conn.post_size()) {
        throw ConfigError("eligibility trace does not match its connection");
    }
    if (scale == 0.0) return;
    for (std::size_t i = 0; i < conn.pre_size(); ++i) {
        for (std::size_t j = 0; j < conn.post_size(); ++j) {
            const double e = trace.at(i, j);
            if (e != 0.0) conn.add(i, j, scale * e);
        }
    }
}

}  // namespace

void apply_rstdp(Connection& to_correct, Connection& to_wrong, EligibilityTrace& trace_correct,
                 EligibilityTrace& trace_wrong, const RewardSignal& signal) {
    signal.validate();
    if (to_correct.mode() != PlasticityMode::Rstdp || to_wrong.mode() != PlasticityMode::Rstdp) {
        throw ConfigError("apply_rstdp on a connection not in rstdp mode");
    }
    apply_scaled(to_correct, trace_correct, signal.reward);
    apply_scaled(to_wrong, trace_wrong, -signal.punishment);
    trace_correct.reset();
    trace_wrong.reset();
}

}  // namespace colsnn
