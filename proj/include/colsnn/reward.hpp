#pragma once

#include "colsnn/connection.hpp"
#include "colsnn/stdp.hpp"

namespace colsnn {

// Outcome counts over the last ten presentations of one input.
struct TrialHistory {
    int h_correct{0};
    int h_incorrect{0};

    void validate() const;
};

struct RewardSignal {
    double reward{0.0};
    double punishment{0.0};
    double k{1.0};  // confidence coefficient

    bool is_zero() const noexcept { return reward == 0.0 && punishment == 0.0; }
    void validate() const;
};

enum class RewardScheme { Simple, Weighted };

// reward = H_IC / 10, punishment = H_C / 10, k = 1.
RewardSignal compute_reward_simple(const TrialHistory& history);

// k = |H_C - H_IC| / 10; reward and punishment scaled by k.
RewardSignal compute_reward_weighted(const TrialHistory& history);

RewardSignal compute_reward(RewardScheme scheme, const TrialHistory& history);

// Converts both eligibility traces into weight changes and clears them.
// Afferents of the correct column move by +reward * trace, those of the
// wrong column by -punishment * trace. A zero signal leaves weights
// bit-identical.
void apply_rstdp(Connection& to_correct, Connection& to_wrong, EligibilityTrace& trace_correct,
                 EligibilityTrace& trace_wrong, const RewardSignal& signal);

}  // namespace colsnn
