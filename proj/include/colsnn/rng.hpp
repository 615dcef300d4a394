#pragma once

#include <cstdint>
#include <random>

namespace colsnn {

using Rng = std::mt19937_64;

// Independent stream for (master seed, stream id, index); used for
// replicate runs and for splitting one run seed across subsystems.
inline Rng derive_rng(std::uint64_t master, std::uint64_t stream, std::uint64_t index = 0) {
    std::seed_seq seq{static_cast<std::uint32_t>(master), static_cast<std::uint32_t>(master >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(index),
                      static_cast<std::uint32_t>(index >> 32)};
    return Rng(seq);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t index = 0) {
    auto rng = derive_rng(master, stream, index);
    return rng();
}

// Stream ids, one per consumer of randomness.
namespace stream {
inline constexpr std::uint64_t kWeights = 1;
inline constexpr std::uint64_t kCodebook = 2;
inline constexpr std::uint64_t kShuffle = 3;
inline constexpr std::uint64_t kNoise = 4;
inline constexpr std::uint64_t kEncoder = 5;
inline constexpr std::uint64_t kReplicate = 6;
inline constexpr std::uint64_t kEval = 7;
}  // namespace stream

}  // namespace colsnn
