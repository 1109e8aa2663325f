#pragma once

// Envelopes of stability regions over power and access-probability grids.

#include <vector>

#include "icstab/channel.hpp"
#include "icstab/parallel.hpp"
#include "icstab/region.hpp"

namespace icstab {

// n points uniform on [lo, hi]; a single point is placed at hi.
std::vector<double> uniform_grid(double lo, double hi, int n);

struct SweepSpec {
  std::vector<double> p1_values;
  std::vector<double> p2_values;
  std::vector<double> q1_values{1.0};
  std::vector<double> q2_values{1.0};
  double p_max = 800.0;
  std::vector<double> lambda1;

  static constexpr int kDefaultPowerPoints = 41;
  static constexpr int kDefaultAccessPoints = 21;
  static constexpr int kDefaultLambdaPoints = 101;

  // Power grid over [0, p_max]^2, unit access grid.
  static SweepSpec power_sweep(double p_max, int power_points = kDefaultPowerPoints,
                               int lambda_points = kDefaultLambdaPoints);
  // Fixed powers, access grid over [0, 1]^2.
  static SweepSpec access_sweep(PowerAllocation power, double p_max,
                                int access_points = kDefaultAccessPoints,
                                int lambda_points = kDefaultLambdaPoints);

  bool unit_access() const;
  std::size_t cell_count() const;
  void validate() const;
};

struct ClosurePoint {
  double lambda1 = 0.0;
  double lambda2_max = 0.0;
  double p1 = 0.0;
  double p2 = 0.0;
  double q1 = 1.0;
  double q2 = 1.0;
};

struct ClosureCurve {
  std::vector<ClosurePoint> points;

  std::vector<double> lambda2() const;
};

// Pointwise max of boundary_lambda2 over the power grid (access fixed at 1).
// Ties go to the lexicographically smallest (p1, p2, q1, q2).
ClosureCurve closure_over_power(const StrategyPair& strategy, const Topology& topology,
                                const SinrThresholds& thresholds, const SweepSpec& spec,
                                Execution exec = Execution::Parallel);

ClosureCurve closure_over_access_and_power(const StrategyPair& strategy, const Topology& topology,
                                           const SinrThresholds& thresholds, const SweepSpec& spec,
                                           Execution exec = Execution::Parallel);

// boundary_lambda2 of one region sampled on a lambda1 grid.
std::vector<double> boundary_trace(const StabilityRegion& region, const std::vector<double>& lambda1);

// Largest amount by which the curve falls below a chord joining two of its
// samples, over the support where the curve is positive. Zero for a concave
// trace; a convex stability region has a concave upper boundary.
double concavity_defect(const std::vector<double>& lambda1, const std::vector<double>& lambda2);

}  // namespace icstab
