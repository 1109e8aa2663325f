#include "icstab/closure.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "icstab/errors.hpp"

namespace icstab {
namespace {

struct Cell {
  double p1, p2, q1, q2;
};

std::vector<double> sorted_unique(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

// Cells in lexicographic (p1, p2, q1, q2) order; the reduction keeps the first
// strict maximum, which realizes the tie-breaking rule.
std::vector<Cell> enumerate_cells(const SweepSpec& spec) {
  const auto p1s = sorted_unique(spec.p1_values), p2s = sorted_unique(spec.p2_values);
  const auto q1s = sorted_unique(spec.q1_values), q2s = sorted_unique(spec.q2_values);
  std::vector<Cell> cells;
  cells.reserve(p1s.size() * p2s.size() * q1s.size() * q2s.size());
  for (double p1 : p1s)
    for (double p2 : p2s)
      for (double q1 : q1s)
        for (double q2 : q2s) cells.push_back({p1, p2, q1, q2});
  return cells;
}

StabilityRegion cell_region(const StrategyPair& strategy, const Topology& topology,
                            const SinrThresholds& thresholds, const Cell& c, bool random_access) {
  const ChannelParams params{topology, {c.p1, c.p2}, thresholds};
  const SuccessProfile profile = success_profile(strategy, params);
  return random_access ? region_random_access(profile, c.q1, c.q2) : region_general(profile);
}

ClosureCurve empty_curve(const std::vector<double>& lambda1, const Cell& first) {
  ClosureCurve curve;
  curve.points.reserve(lambda1.size());
  for (double l1 : lambda1) curve.points.push_back({l1, -1.0, first.p1, first.p2, first.q1, first.q2});
  return curve;
}

void offer(ClosurePoint& best, double value, const Cell& c) {
  if (value > best.lambda2_max) {
    best.lambda2_max = value;
    best.p1 = c.p1;
    best.p2 = c.p2;
    best.q1 = c.q1;
    best.q2 = c.q2;
  }
}

ClosureCurve sweep(const StrategyPair& strategy, const Topology& topology,
                   const SinrThresholds& thresholds, const SweepSpec& spec, bool random_access,
                   Execution exec) {
  spec.validate();
  strategy.validate();
  topology.validate();
  thresholds.validate();
  const std::vector<Cell> cells = enumerate_cells(spec);
  ClosureCurve curve = empty_curve(spec.lambda1, cells.front());

  if (exec == Execution::Serial) {
    for (const Cell& c : cells) {
      const StabilityRegion region = cell_region(strategy, topology, thresholds, c, random_access);
      for (auto& pt : curve.points) offer(pt, boundary_lambda2(region, pt.lambda1), c);
    }
    return curve;
  }

  const auto n_cells = static_cast<std::int64_t>(cells.size());
  std::vector<StabilityRegion> regions(cells.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n_cells; ++i)
    regions[i] = cell_region(strategy, topology, thresholds, cells[i], random_access);

  const auto n_points = static_cast<std::int64_t>(curve.points.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t k = 0; k < n_points; ++k) {
    ClosurePoint& pt = curve.points[k];
    for (std::size_t i = 0; i < cells.size(); ++i) offer(pt, boundary_lambda2(regions[i], pt.lambda1), cells[i]);
  }
  return curve;
}

}  // namespace

std::vector<double> uniform_grid(double lo, double hi, int n) {
  if (n < 1) throw ConfigError("grid needs at least one point");
  if (n == 1) return {hi};
  std::vector<double> g(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) g[i] = lo + (hi - lo) * i / (n - 1);
  g.back() = hi;
  return g;
}

SweepSpec SweepSpec::power_sweep(double p_max, int power_points, int lambda_points) {
  SweepSpec s;
  s.p_max = p_max;
  s.p1_values = uniform_grid(0.0, p_max, power_points);
  s.p2_values = s.p1_values;
  s.lambda1 = uniform_grid(0.0, 1.0, lambda_points);
  return s;
}

SweepSpec SweepSpec::access_sweep(PowerAllocation power, double p_max, int access_points, int lambda_points) {
  SweepSpec s;
  s.p_max = p_max;
  s.p1_values = {power.p1};
  s.p2_values = {power.p2};
  s.q1_values = uniform_grid(0.0, 1.0, access_points);
  s.q2_values = s.q1_values;
  s.lambda1 = uniform_grid(0.0, 1.0, lambda_points);
  return s;
}

bool SweepSpec::unit_access() const {
  auto unit = [](const std::vector<double>& v) {
    return !v.empty() && std::all_of(v.begin(), v.end(), [](double q) { return q == 1.0; });
  };
  return unit(q1_values) && unit(q2_values);
}

std::size_t SweepSpec::cell_count() const {
  return p1_values.size() * p2_values.size() * q1_values.size() * q2_values.size();
}

void SweepSpec::validate() const {
  if (p1_values.empty() || p2_values.empty() || q1_values.empty() || q2_values.empty() || lambda1.empty())
    throw ConfigError("sweep grids must be non-empty");
  if (!(p_max >= 0.0) || !std::isfinite(p_max)) throw ConfigError("p_max must be non-negative");
  for (const auto* grid : {&p1_values, &p2_values})
    for (double p : *grid)
      if (!(p >= 0.0 && p <= p_max)) throw ConfigError("sweep powers must lie in [0, p_max]");
  for (const auto* grid : {&q1_values, &q2_values})
    for (double q : *grid)
      if (!(q >= 0.0 && q <= 1.0)) throw ConfigError("access probabilities must lie in [0, 1]");
  for (double l : lambda1)
    if (!(l >= 0.0) || !std::isfinite(l)) throw ConfigError("lambda1 grid values must be non-negative");
}

std::vector<double> ClosureCurve::lambda2() const {
  std::vector<double> v;
  v.reserve(points.size());
  for (const auto& p : points) v.push_back(p.lambda2_max);
  return v;
}

ClosureCurve closure_over_power(const StrategyPair& strategy, const Topology& topology,
                                const SinrThresholds& thresholds, const SweepSpec& spec, Execution exec) {
  if (!spec.unit_access()) throw ConfigError("closure over power needs the unit access grid {(1, 1)}");
  return sweep(strategy, topology, thresholds, spec, false, exec);
}

ClosureCurve closure_over_access_and_power(const StrategyPair& strategy, const Topology& topology,
                                           const SinrThresholds& thresholds, const SweepSpec& spec,
                                           Execution exec) {
  return sweep(strategy, topology, thresholds, spec, true, exec);
}

std::vector<double> boundary_trace(const StabilityRegion& region, const std::vector<double>& lambda1) {
  std::vector<double> out;
  out.reserve(lambda1.size());
  for (double l1 : lambda1) out.push_back(boundary_lambda2(region, l1));
  return out;
}

double concavity_defect(const std::vector<double>& lambda1, const std::vector<double>& lambda2) {
  if (lambda1.size() != lambda2.size()) throw DomainError("trace lengths differ");
  std::vector<std::size_t> support;
  for (std::size_t i = 0; i < lambda2.size(); ++i)
    if (lambda2[i] > 0.0) support.push_back(i);

  double defect = 0.0;
  for (std::size_t a = 0; a < support.size(); ++a) {
    for (std::size_t c = a + 2; c < support.size(); ++c) {
      const std::size_t i = support[a], k = support[c];
      const double span = lambda1[k] - lambda1[i];
      if (span <= 0.0) continue;
      for (std::size_t b = a + 1; b < c; ++b) {
        const std::size_t j = support[b];
        const double t = (lambda1[j] - lambda1[i]) / span;
        defect = std::max(defect, (1.0 - t) * lambda2[i] + t * lambda2[k] - lambda2[j]);
      }
    }
  }
  return defect;
}

}  // namespace icstab
