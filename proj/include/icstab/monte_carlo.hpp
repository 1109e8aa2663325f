#pragma once

#include <cstdint>

#include "icstab/channel.hpp"
#include "icstab/parallel.hpp"

namespace icstab {

struct LinkQuery {
  StrategyPair strategy;
  Link link = Link::One;
  Scenario scenario = Scenario::Both;
  ChannelParams params;
};

// Samples are split into fixed blocks; block b draws from stream
// derive_seed(seed, b). The estimate is therefore a pure function of
// (query, samples, seed) for either execution path.
inline constexpr std::uint64_t kMonteCarloBlock = 1u << 15;

std::uint64_t mc_success_count(const LinkQuery& query, std::uint64_t samples, std::uint64_t seed,
                               Execution exec = Execution::Parallel);

// Empirical frequency of the decoding event over `samples` fading draws.
double mc_success(const LinkQuery& query, std::uint64_t samples, std::uint64_t seed,
                  Execution exec = Execution::Parallel);

}  // namespace icstab
