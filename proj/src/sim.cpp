#include "icstab/sim.hpp"

#include <cmath>
#include <random>
#include <string>

#include "icstab/errors.hpp"
#include "icstab/fading.hpp"
#include "icstab/rng.hpp"

namespace icstab {

std::string_view to_string(DominantMode m) {
  switch (m) {
    case DominantMode::None: return "none";
    case DominantMode::Source1Dummy: return "source1-dummy";
    case DominantMode::Source2Dummy: return "source2-dummy";
    case DominantMode::BothSaturated: return "both-saturated";
  }
  return "none";
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Stable: return "stable";
    case Verdict::Unstable: return "unstable";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

DominantMode parse_dominant_mode(std::string_view name) {
  if (name == "none") return DominantMode::None;
  if (name == "source1-dummy") return DominantMode::Source1Dummy;
  if (name == "source2-dummy") return DominantMode::Source2Dummy;
  if (name == "both-saturated") return DominantMode::BothSaturated;
  throw ConfigError("unknown dominant mode '" + std::string(name) +
                    "' (expected none|source1-dummy|source2-dummy|both-saturated)");
}

void SimConfig::validate() const {
  channel.validate();
  strategy.validate();
  access.validate();
  for (double l : {arrivals.lambda1, arrivals.lambda2})
    if (!(l >= 0.0 && l <= 1.0)) throw DomainError("arrival rates must lie in [0, 1]");
  if (horizon < 1) throw DomainError("horizon must be at least one slot");
}

Verdict verdict(const TrajectoryStats& stats, const VerdictThresholds& th) {
  if (stats.horizon < th.min_horizon) return Verdict::Inconclusive;
  const double cap = th.queue_cap_factor * std::sqrt(static_cast<double>(stats.horizon));
  if (stats.drift <= th.stable_drift && static_cast<double>(stats.final_length) <= cap) return Verdict::Stable;
  if (stats.drift >= th.unstable_drift) return Verdict::Unstable;
  return Verdict::Inconclusive;
}

Verdict SimResult::system_verdict() const {
  const Verdict a = queues[0].verdict, b = queues[1].verdict;
  if (a == Verdict::Unstable || b == Verdict::Unstable) return Verdict::Unstable;
  if (a == Verdict::Stable && b == Verdict::Stable) return Verdict::Stable;
  return Verdict::Inconclusive;
}

SimResult run(const SimConfig& cfg, const VerdictThresholds& th, const SlotObserver& observer) {
  cfg.validate();
  Rng rng = make_stream(cfg.seed, 0);
  FadingSampler sampler(cfg.strategy.antennas);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  const std::array<bool, 2> dummy{
      cfg.mode == DominantMode::Source1Dummy || cfg.mode == DominantMode::BothSaturated,
      cfg.mode == DominantMode::Source2Dummy || cfg.mode == DominantMode::BothSaturated};
  const std::array<double, 2> access{cfg.access.q1, cfg.access.q2};
  const std::array<double, 2> rate{cfg.arrivals.lambda1, cfg.arrivals.lambda2};
  const std::array<Link, 2> links{Link::One, Link::Two};

  std::array<std::uint64_t, 2> queue{0, 0}, opportunities{0, 0}, successes{0, 0};
  std::array<double, 2> length_sum{0.0, 0.0}, weighted{0.0, 0.0};

  // Slope regression over the second half with time centred on its midpoint.
  const std::uint64_t half_start = cfg.horizon / 2;
  const double half_n = static_cast<double>(cfg.horizon - half_start);
  const double centre = static_cast<double>(half_start) + (half_n - 1.0) / 2.0;
  const double time_var = half_n * (half_n * half_n - 1.0) / 12.0;

  SlotRecord rec;
  for (std::uint64_t t = 0; t < cfg.horizon; ++t) {
    std::array<bool, 2> has{}, tx{}, ok{};
    for (std::size_t i = 0; i < 2; ++i) {
      has[i] = queue[i] > 0 || dummy[i];
      tx[i] = has[i] && (access[i] >= 1.0 || unit(rng) < access[i]);
    }
    if (tx[0] || tx[1]) {
      const SlotGains gains = sampler.draw(rng);
      for (std::size_t i = 0; i < 2; ++i)
        ok[i] = tx[i] && decodes(links[i], tx[1 - i], cfg.strategy.decoder(links[i]), gains, cfg.channel);
    }
    if (observer) {
      rec.slot = t;
      rec.queue_before = queue;
      rec.has_packet = has;
      rec.transmitted = tx;
      rec.decoded = ok;
    }
    std::array<int, 2> departed{0, 0}, arrived{0, 0};
    for (std::size_t i = 0; i < 2; ++i) {
      opportunities[i] += has[i] ? 1 : 0;
      successes[i] += ok[i] ? 1 : 0;
      if (ok[i] && queue[i] > 0) {
        --queue[i];
        departed[i] = 1;
      }
      if (rate[i] > 0.0 && (rate[i] >= 1.0 || unit(rng) < rate[i])) {
        ++queue[i];
        arrived[i] = 1;
      }
      const auto q = static_cast<double>(queue[i]);
      length_sum[i] += q;
      if (t >= half_start) weighted[i] += (static_cast<double>(t) - centre) * q;
    }
    if (observer) {
      rec.queue_after = queue;
      rec.departures = departed;
      rec.arrivals = arrived;
      observer(rec);
    }
  }

  SimResult result;
  result.seed = cfg.seed;
  result.horizon = cfg.horizon;
  for (std::size_t i = 0; i < 2; ++i) {
    QueueStats& s = result.queues[i];
    s.service_rate = opportunities[i] > 0
                         ? static_cast<double>(successes[i]) / static_cast<double>(opportunities[i])
                         : 0.0;
    s.mean_length = length_sum[i] / static_cast<double>(cfg.horizon);
    s.final_length = queue[i];
    s.drift = time_var > 0.0 ? weighted[i] / time_var : 0.0;
    s.verdict = verdict({cfg.horizon, s.final_length, s.drift}, th);
  }
  return result;
}

std::vector<SimResult> run_seeds(const SimConfig& config, std::span<const std::uint64_t> seeds,
                                 const VerdictThresholds& thresholds, Execution exec) {
  config.validate();
  std::vector<SimResult> results(seeds.size());
  auto one = [&](std::size_t i) {
    SimConfig c = config;
    c.seed = seeds[i];
    results[i] = run(c, thresholds);
  };
  if (exec == Execution::Serial) {
    for (std::size_t i = 0; i < seeds.size(); ++i) one(i);
    return results;
  }
  const auto n = static_cast<std::int64_t>(seeds.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < n; ++i) one(static_cast<std::size_t>(i));
  return results;
}

std::array<double, 2> saturated_service(const SimConfig& config) {
  if (config.mode != DominantMode::BothSaturated)
    throw DomainError("saturated_service needs the both-saturated dominant mode");
  const SimResult r = run(config);
  return {r.queues[0].service_rate, r.queues[1].service_rate};
}

std::vector<std::uint64_t> seed_list(std::uint64_t master, int count) {
  std::vector<std::uint64_t> seeds;
  for (int k = 0; k < count; ++k) seeds.push_back(derive_seed(master, static_cast<std::uint64_t>(k)));
  return seeds;
}

double empirical_boundary(const SimConfig& config, double lambda1, double tol, const BoundaryOptions& opt) {
  if (!(tol > 0.0)) throw DomainError("bisection tolerance must be positive");
  if (opt.seeds < 3) throw DomainError("empirical boundary needs at least three seeds");
  if (!(lambda1 >= 0.0 && lambda1 <= 1.0)) throw DomainError("lambda1 must lie in [0, 1]");
  const auto seeds = seed_list(config.seed, opt.seeds);

  auto probe = [&](double lambda2) {
    SimConfig c = config;
    c.arrivals = {lambda1, lambda2};
    int stable = 0, unstable = 0;
    for (const SimResult& r : run_seeds(c, seeds, opt.thresholds, opt.exec)) {
      const Verdict v = r.system_verdict();
      stable += v == Verdict::Stable;
      unstable += v == Verdict::Unstable;
    }
    if (2 * stable > opt.seeds) return Verdict::Stable;
    if (2 * unstable > opt.seeds) return Verdict::Unstable;
    return Verdict::Inconclusive;
  };

  const Verdict at_zero = probe(0.0);
  if (at_zero == Verdict::Unstable) return 0.0;
  if (at_zero == Verdict::Inconclusive) throw BoundaryError("no conclusive verdict at lambda2 = 0", 0.0, 1.0);

  double lo = 0.0, hi = 1.0;
  bool conclusive = false;
  const Verdict at_one = probe(1.0);
  if (at_one == Verdict::Stable) return 1.0;
  conclusive = at_one == Verdict::Unstable;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const Verdict v = probe(mid);
    conclusive = conclusive || v != Verdict::Inconclusive;
    (v == Verdict::Stable ? lo : hi) = mid;
  }
  if (!conclusive) throw BoundaryError("every bisection probe was inconclusive", lo, hi);
  return 0.5 * (lo + hi);
}

}  // namespace icstab
