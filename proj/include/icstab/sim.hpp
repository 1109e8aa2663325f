#pragma once

// Slotted simulation of the two coupled queues.
//
// Per slot: sources with a packet (or in dummy mode) transmit with their
// access probability, fading is redrawn, decoding events are evaluated, a
// successful head-of-line packet departs, and then the slot's Bernoulli
// arrivals join the queues (they can be served from the next slot on).

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "icstab/channel.hpp"
#include "icstab/parallel.hpp"
#include "icstab/region.hpp"

namespace icstab {

enum class DominantMode { None, Source1Dummy, Source2Dummy, BothSaturated };
enum class Verdict { Stable, Unstable, Inconclusive };

std::string_view to_string(DominantMode m);
std::string_view to_string(Verdict v);
DominantMode parse_dominant_mode(std::string_view name);

struct ArrivalRates {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
};

struct SimConfig {
  ChannelParams channel;
  StrategyPair strategy;
  ArrivalRates arrivals;
  AccessProbabilities access;
  DominantMode mode = DominantMode::None;
  std::uint64_t horizon = 1'000'000;
  std::uint64_t seed = 0;

  void validate() const;
};

struct VerdictThresholds {
  double stable_drift = 1e-3;    // packets/slot
  double unstable_drift = 5e-3;  // packets/slot
  double queue_cap_factor = 10.0;  // Q_cap = factor * sqrt(horizon)
  std::uint64_t min_horizon = 10'000;
};

struct TrajectoryStats {
  std::uint64_t horizon = 0;
  std::uint64_t final_length = 0;
  double drift = 0.0;  // least-squares slope over the second half of the run
};

Verdict verdict(const TrajectoryStats& stats, const VerdictThresholds& thresholds = {});

struct QueueStats {
  double service_rate = 0.0;  // successes per slot with a packet to send
  double mean_length = 0.0;
  std::uint64_t final_length = 0;
  double drift = 0.0;
  Verdict verdict = Verdict::Inconclusive;
};

struct SimResult {
  std::uint64_t seed = 0;
  std::uint64_t horizon = 0;
  std::array<QueueStats, 2> queues;

  // Unstable if either queue is, Stable if both are.
  Verdict system_verdict() const;
};

struct SlotRecord {
  std::uint64_t slot = 0;
  std::array<std::uint64_t, 2> queue_before{};
  std::array<std::uint64_t, 2> queue_after{};
  std::array<bool, 2> has_packet{};
  std::array<bool, 2> transmitted{};
  std::array<bool, 2> decoded{};
  std::array<int, 2> departures{};
  std::array<int, 2> arrivals{};
};

using SlotObserver = std::function<void(const SlotRecord&)>;

SimResult run(const SimConfig& config, const VerdictThresholds& thresholds = {},
              const SlotObserver& observer = {});

// Runs config once per seed; results keep the order of `seeds`.
std::vector<SimResult> run_seeds(const SimConfig& config, std::span<const std::uint64_t> seeds,
                                 const VerdictThresholds& thresholds = {},
                                 Execution exec = Execution::Parallel);

// Measured service rates with both sources permanently backlogged.
std::array<double, 2> saturated_service(const SimConfig& config);

// Thrown when bisection never sees a conclusive majority.
class BoundaryError : public std::runtime_error {
 public:
  BoundaryError(const std::string& what, double lo, double hi)
      : std::runtime_error(what), lo_(lo), hi_(hi) {}
  double lo() const { return lo_; }
  double hi() const { return hi_; }

 private:
  double lo_;
  double hi_;
};

struct BoundaryOptions {
  int seeds = 3;
  VerdictThresholds thresholds;
  Execution exec = Execution::Parallel;
};

// Bisects lambda2 on [0, 1] at fixed lambda1 against the majority system
// verdict over `seeds` runs until the bracket is at most `tol` wide. A probe
// without a Stable majority counts as not stable.
double empirical_boundary(const SimConfig& config, double lambda1, double tol,
                          const BoundaryOptions& options = {});

std::vector<std::uint64_t> seed_list(std::uint64_t master, int count);

}  // namespace icstab
