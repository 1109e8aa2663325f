#pragma once

// The four CLI commands as library calls. Each `*_report` builds the
// in-memory result; each `cmd_*` writes it to the output directory and
// returns the process exit code.

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "icstab/closure.hpp"
#include "icstab/config.hpp"
#include "icstab/region.hpp"
#include "icstab/sim.hpp"
#include "json.hpp"

namespace icstab {

enum ExitCode : int { kExitOk = 0, kExitFailure = 1, kExitConfig = 2, kExitInconclusive = 3 };

struct CommandOptions {
  std::filesystem::path out_dir;
  std::optional<std::uint64_t> seed;
  Execution exec = Execution::Parallel;
};

// --seed wins over the config's "seed"; neither is a ConfigError.
std::uint64_t resolve_seed(const ExperimentConfig& config, const CommandOptions& options);

struct ValidationRow {
  std::string strategy;
  Link link = Link::One;
  Scenario scenario = Scenario::Alone;
  double closed_form = 0.0;
  double mc_estimate = 0.0;
  double abs_gap = 0.0;
  bool pass = false;
};

std::vector<ValidationRow> validation_rows(const ExperimentConfig& config, std::uint64_t seed,
                                           Execution exec = Execution::Parallel);

struct RegionReport {
  StabilityRegion region;
  std::vector<double> lambda1;
  std::vector<double> lambda2;
  std::vector<RatePoint> vertices;
  bool convex = false;
  RatePoint corner;
  RatePoint intercepts;  // (largest lambda1 on the boundary, boundary at lambda1 = 0)
  std::array<bool, 2> sic_preferred{};
  double ian_convexity_threshold = 0.0;

  nlohmann::json summary() const;
};

RegionReport region_report(const ExperimentConfig& config);

struct ClosureReport {
  SweepSpec spec;
  bool random_access = false;
  ClosureCurve curve;
  PowerAllocation overlay_power;
  std::vector<double> overlay;
  double concavity_defect = 0.0;
  double max_gap_to_overlay = 0.0;

  nlohmann::json meta() const;
};

ClosureReport closure_report(const ExperimentConfig& config, Execution exec = Execution::Parallel);

struct BoundaryRow {
  double lambda1 = 0.0;
  double empirical = 0.0;  // NaN when the bisection was inconclusive
  double analytical = 0.0;
  double abs_gap = 0.0;
};

struct SimulationReport {
  std::vector<SimResult> runs;
  std::array<Verdict, 2> queue_verdicts{Verdict::Inconclusive, Verdict::Inconclusive};
  Verdict system_verdict = Verdict::Inconclusive;
  bool analytically_stable = false;
  double analytical_boundary = 0.0;
  std::array<double, 2> closed_form_service{};
  std::vector<BoundaryRow> boundary;

  bool inconclusive() const;
  nlohmann::json verdict_json(const ExperimentConfig& config) const;
};

SimulationReport simulation_report(const ExperimentConfig& config, std::uint64_t seed,
                                   Execution exec = Execution::Parallel);

// Strict-majority verdict; Inconclusive without one.
Verdict majority(const std::vector<Verdict>& verdicts);

int cmd_validate(const ExperimentConfig& config, const CommandOptions& options, std::ostream& log);
int cmd_region(const ExperimentConfig& config, const CommandOptions& options, std::ostream& log);
int cmd_closure(const ExperimentConfig& config, const CommandOptions& options, std::ostream& log);
int cmd_simulate(const ExperimentConfig& config, const CommandOptions& options, std::ostream& log);

}  // namespace icstab
