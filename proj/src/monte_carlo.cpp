#include "icstab/monte_carlo.hpp"

#include <algorithm>
#include <cstdint>

#include "icstab/errors.hpp"
#include "icstab/fading.hpp"
#include "icstab/rng.hpp"

namespace icstab {
namespace {

std::uint64_t count_block(const LinkQuery& q, std::uint64_t block, std::uint64_t draws,
                          std::uint64_t seed) {
  Rng rng = make_stream(seed, block);
  FadingSampler sampler(q.strategy.antennas);
  const bool both = q.scenario == Scenario::Both;
  const Decoder decoder = q.strategy.decoder(q.link);
  std::uint64_t hits = 0;
  for (std::uint64_t s = 0; s < draws; ++s) {
    const SlotGains g = sampler.draw(rng);
    hits += decodes(q.link, both, decoder, g, q.params) ? 1 : 0;
  }
  return hits;
}

}  // namespace

std::uint64_t mc_success_count(const LinkQuery& query, std::uint64_t samples, std::uint64_t seed,
                               Execution exec) {
  if (samples == 0) throw DomainError("sample count must be positive");
  query.params.validate();
  query.strategy.validate();

  const std::uint64_t blocks = (samples + kMonteCarloBlock - 1) / kMonteCarloBlock;
  auto draws_in = [&](std::uint64_t b) {
    const std::uint64_t start = b * kMonteCarloBlock;
    return std::min(kMonteCarloBlock, samples - start);
  };

  std::uint64_t hits = 0;
  if (exec == Execution::Serial) {
    for (std::uint64_t b = 0; b < blocks; ++b) hits += count_block(query, b, draws_in(b), seed);
    return hits;
  }

  const auto n = static_cast<std::int64_t>(blocks);
#pragma omp parallel for schedule(dynamic, 1) reduction(+ : hits)
  for (std::int64_t b = 0; b < n; ++b) {
    const auto ub = static_cast<std::uint64_t>(b);
    hits += count_block(query, ub, draws_in(ub), seed);
  }
  return hits;
}

double mc_success(const LinkQuery& query, std::uint64_t samples, std::uint64_t seed, Execution exec) {
  const std::uint64_t hits = mc_success_count(query, samples, seed, exec);
  return static_cast<double>(hits) / static_cast<double>(samples);
}

}  // namespace icstab
