#pragma once

// Experiment configuration: a single JSON document with snake_case fields.
// Unknown keys are rejected at every level.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "icstab/channel.hpp"
#include "icstab/closure.hpp"
#include "icstab/region.hpp"
#include "icstab/sim.hpp"
#include "json.hpp"

namespace icstab {

struct SweepSettings {
  double p_max = 800.0;
  int power_points = SweepSpec::kDefaultPowerPoints;
  int access_points = SweepSpec::kDefaultAccessPoints;
  int lambda1_points = SweepSpec::kDefaultLambdaPoints;
  bool sweep_power = true;
  bool sweep_access = false;
};

struct SimSettings {
  std::uint64_t horizon = 1'000'000;
  int seeds = 5;
  ArrivalRates arrivals;
  DominantMode mode = DominantMode::None;
  std::vector<double> boundary_lambda1;
  double boundary_tol = 0.01;
  int boundary_seeds = 3;
};

struct ExperimentConfig {
  ChannelParams channel;
  StrategyPair strategy;
  AccessProbabilities access;
  SweepSettings sweep;
  SimSettings sim;
  std::uint64_t samples = 1'000'000;  // Monte Carlo draws per validation row
  std::optional<std::uint64_t> seed;
  std::optional<std::string> output;

  // Checks every module invariant; throws ConfigError with a diagnostic.
  void validate() const;
  SweepSpec sweep_spec() const;
  // Base simulation config (arrivals, mode, horizon from `sim`).
  SimConfig sim_config(std::uint64_t seed) const;
};

ExperimentConfig parse_config(const nlohmann::json& doc);
ExperimentConfig parse_config_text(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path& path);

// Applies one `key=value` sweep override (p_max, power_points, access_points,
// lambda1_points, sweep_power, sweep_access).
void apply_grid_override(ExperimentConfig& config, std::string_view assignment);

}  // namespace icstab
