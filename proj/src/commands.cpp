#include "icstab/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>

#include "icstab/csv.hpp"
#include "icstab/errors.hpp"
#include "icstab/monte_carlo.hpp"
#include "icstab/rng.hpp"

namespace icstab {
namespace {

using nlohmann::json;

StabilityRegion region_for(const SuccessProfile& profile, const AccessProbabilities& q) {
  return q.saturated() ? region_general(profile) : region_random_access(profile, q.q1, q.q2);
}

std::ofstream open_output(const std::filesystem::path& dir, const std::string& name) {
  std::filesystem::create_directories(dir);
  std::ofstream out(dir / name, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + (dir / name).string() + "'");
  return out;
}

json point_json(RatePoint p) { return json::array({p.lambda1, p.lambda2}); }

json profile_json(const SuccessProfile& p) {
  return {{"p1_alone", p.p1_alone}, {"p2_alone", p.p2_alone}, {"p1_both", p.p1_both}, {"p2_both", p.p2_both}};
}

json strategy_json(const StrategyPair& s) {
  return {{"rx1", to_string(s.rx1)},
          {"rx2", to_string(s.rx2)},
          {"beamformer", to_string(s.antennas.beamformer)},
          {"antennas", s.antennas.antennas}};
}

void write_json(const std::filesystem::path& dir, const std::string& name, const json& doc) {
  auto out = open_output(dir, name);
  out << doc.dump(2) << '\n';
}

double closed_form(const std::string& strategy, const StrategyPair& pair, Link link, Scenario scenario,
                   const ChannelParams& params) {
  if (pair.antennas.beamformer != Beamformer::Single)
    return miso_success(pair.antennas.beamformer, pair.antennas.antennas, link, params, scenario);
  if (scenario == Scenario::Alone) return snr_success(link, params);
  return strategy == "sic" ? sic_success(link, params) : ian_success(link, params);
}

}  // namespace

std::uint64_t resolve_seed(const ExperimentConfig& config, const CommandOptions& options) {
  if (options.seed) return *options.seed;
  if (config.seed) return *config.seed;
  throw ConfigError("this command is randomized and needs an explicit --seed");
}

std::vector<ValidationRow> validation_rows(const ExperimentConfig& config, std::uint64_t seed, Execution exec) {
  config.validate();
  std::vector<std::pair<std::string, StrategyPair>> strategies{
      {"ian", StrategyPair{Decoder::Ian, Decoder::Ian, {}}},
      {"sic", StrategyPair{Decoder::Sic, Decoder::Sic, {}}}};
  const AntennaConfig& ant = config.strategy.antennas;
  if (ant.beamformer != Beamformer::Single)
    strategies.push_back({std::string(to_string(ant.beamformer)) + "-" + std::to_string(ant.antennas),
                          StrategyPair{Decoder::Ian, Decoder::Ian, ant}});

  std::vector<ValidationRow> rows;
  std::uint64_t stream = 0;
  for (const auto& [name, pair] : strategies) {
    for (Link link : {Link::One, Link::Two}) {
      for (Scenario scenario : {Scenario::Alone, Scenario::Both}) {
        ValidationRow row;
        row.strategy = name;
        row.link = link;
        row.scenario = scenario;
        row.closed_form = closed_form(name, pair, link, scenario, config.channel);
        const LinkQuery query{pair, link, scenario, config.channel};
        row.mc_estimate = mc_success(query, config.samples, derive_seed(seed, stream++), exec);
        row.abs_gap = std::abs(row.closed_form - row.mc_estimate);
        const double p = row.closed_form;
        const double sigma = std::sqrt(p * (1.0 - p) / static_cast<double>(config.samples));
        row.pass = row.abs_gap <= 5.0 * sigma;
        rows.push_back(row);
      }
    }
  }
  return rows;
}

json RegionReport::summary() const {
  json v = json::array();
  for (const RatePoint& p : vertices) v.push_back(point_json(p));
  return {{"profile", profile_json(region.profile)},
          {"access", {{"mode", region.access == AccessMode::Saturated ? "saturated" : "random_access"},
                      {"q1", region.q.q1},
                      {"q2", region.q.q2}}},
          {"convex", convex},
          {"degenerate", region.degenerate},
          {"corner", point_json(corner)},
          {"intercepts", {{"lambda1", intercepts.lambda1}, {"lambda2", intercepts.lambda2}}},
          {"sic_preferred", {{"link1", sic_preferred[0]}, {"link2", sic_preferred[1]}}},
          {"ian_convexity_threshold", ian_convexity_threshold},
          {"vertices", v}};
}

RegionReport region_report(const ExperimentConfig& config) {
  config.validate();
  RegionReport r;
  const SuccessProfile profile = success_profile(config.strategy, config.channel);
  r.region = region_for(profile, config.access);
  r.lambda1 = uniform_grid(0.0, 1.0, config.sweep.lambda1_points);
  r.lambda2 = boundary_trace(r.region, r.lambda1);
  r.vertices = vertices(r.region);
  r.convex = is_convex(profile);
  r.corner = shared_corner(r.region);
  r.intercepts = {r.vertices.empty() ? 0.0 : r.vertices.back().lambda1, boundary_lambda2(r.region, 0.0)};
  r.sic_preferred = {sic_preferred(Link::One, config.channel), sic_preferred(Link::Two, config.channel)};
  r.ian_convexity_threshold = ian_convexity_threshold(config.channel.topology);
  return r;
}

json ClosureReport::meta() const {
  return {{"mode", random_access ? "access_and_power" : "power"},
          {"p_max", spec.p_max},
          {"p1_points", spec.p1_values.size()},
          {"p2_points", spec.p2_values.size()},
          {"q1_points", spec.q1_values.size()},
          {"q2_points", spec.q2_values.size()},
          {"lambda1_points", spec.lambda1.size()},
          {"cells", spec.cell_count()},
          {"overlay_power", {{"p1", overlay_power.p1}, {"p2", overlay_power.p2}}},
          {"concavity_defect", concavity_defect},
          {"max_gap_to_overlay", max_gap_to_overlay}};
}

ClosureReport closure_report(const ExperimentConfig& config, Execution exec) {
  config.validate();
  ClosureReport r;
  r.spec = config.sweep_spec();
  r.random_access = !r.spec.unit_access();
  const auto& ch = config.channel;
  r.curve = r.random_access
                ? closure_over_access_and_power(config.strategy, ch.topology, ch.thresholds, r.spec, exec)
                : closure_over_power(config.strategy, ch.topology, ch.thresholds, r.spec, exec);

  r.overlay_power = config.sweep.sweep_power ? PowerAllocation{config.sweep.p_max, config.sweep.p_max} : ch.power;
  const SuccessProfile top = success_profile(config.strategy, {ch.topology, r.overlay_power, ch.thresholds});
  r.overlay = boundary_trace(region_for(top, config.access), r.spec.lambda1);

  const auto envelope = r.curve.lambda2();
  r.concavity_defect = concavity_defect(r.spec.lambda1, envelope);
  for (std::size_t i = 0; i < envelope.size(); ++i)
    r.max_gap_to_overlay = std::max(r.max_gap_to_overlay, envelope[i] - r.overlay[i]);
  return r;
}

Verdict majority(const std::vector<Verdict>& verdicts) {
  for (Verdict v : {Verdict::Stable, Verdict::Unstable}) {
    const auto n = std::count(verdicts.begin(), verdicts.end(), v);
    if (2 * static_cast<std::size_t>(n) > verdicts.size()) return v;
  }
  return Verdict::Inconclusive;
}

bool SimulationReport::inconclusive() const {
  if (system_verdict == Verdict::Inconclusive) return true;
  return std::any_of(boundary.begin(), boundary.end(), [](const BoundaryRow& b) { return std::isnan(b.empirical); });
}

json SimulationReport::verdict_json(const ExperimentConfig& config) const {
  json seeds = json::array();
  for (const SimResult& r : runs) seeds.push_back(r.seed);
  json bnd = json::array();
  for (const BoundaryRow& b : boundary)
    bnd.push_back({{"lambda1", b.lambda1},
                   {"lambda2_empirical", std::isnan(b.empirical) ? json(nullptr) : json(b.empirical)},
                   {"lambda2_analytical", b.analytical}});
  return {{"strategy", strategy_json(config.strategy)},
          {"dominant", to_string(config.sim.mode)},
          {"arrivals", {{"lambda1", config.sim.arrivals.lambda1}, {"lambda2", config.sim.arrivals.lambda2}}},
          {"access", {{"q1", config.access.q1}, {"q2", config.access.q2}}},
          {"horizon", config.sim.horizon},
          {"seeds", seeds},
          {"verdict1", to_string(queue_verdicts[0])},
          {"verdict2", to_string(queue_verdicts[1])},
          {"system_verdict", to_string(system_verdict)},
          {"analytically_stable", analytically_stable},
          {"analytical_boundary_lambda2", analytical_boundary},
          {"closed_form_service", {{"mu1", closed_form_service[0]}, {"mu2", closed_form_service[1]}}},
          {"boundary", bnd}};
}

SimulationReport simulation_report(const ExperimentConfig& config, std::uint64_t seed, Execution exec) {
  config.validate();
  SimulationReport rep;
  const SimConfig base = config.sim_config(seed);
  const auto seeds = seed_list(seed, config.sim.seeds);
  rep.runs = run_seeds(base, seeds, {}, exec);

  std::vector<Verdict> v1, v2, sys;
  for (const SimResult& r : rep.runs) {
    v1.push_back(r.queues[0].verdict);
    v2.push_back(r.queues[1].verdict);
    sys.push_back(r.system_verdict());
  }
  rep.queue_verdicts = {majority(v1), majority(v2)};
  rep.system_verdict = majority(sys);

  const SuccessProfile profile = success_profile(config.strategy, config.channel);
  const StabilityRegion region = region_for(profile, config.access);
  const auto& arr = config.sim.arrivals;
  rep.analytically_stable = contains(region, arr.lambda1, arr.lambda2);
  rep.analytical_boundary = boundary_lambda2(region, arr.lambda1);
  const double q1 = config.access.q1, q2 = config.access.q2;
  rep.closed_form_service = {q1 * ((1.0 - q2) * profile.p1_alone + q2 * profile.p1_both),
                             q2 * ((1.0 - q1) * profile.p2_alone + q1 * profile.p2_both)};

  BoundaryOptions opt;
  opt.seeds = config.sim.boundary_seeds;
  opt.exec = exec;
  SimConfig bisect = config.sim_config(derive_seed(seed, 0x626f756e64ULL));
  bisect.mode = DominantMode::None;
  for (double l1 : config.sim.boundary_lambda1) {
    BoundaryRow row;
    row.lambda1 = l1;
    row.analytical = boundary_lambda2(region, l1);
    try {
      row.empirical = empirical_boundary(bisect, l1, config.sim.boundary_tol, opt);
      row.abs_gap = std::abs(row.empirical - row.analytical);
    } catch (const BoundaryError&) {
      row.empirical = std::numeric_limits<double>::quiet_NaN();
      row.abs_gap = std::numeric_limits<double>::quiet_NaN();
    }
    rep.boundary.push_back(row);
  }
  return rep;
}

int cmd_validate(const ExperimentConfig& config, const CommandOptions& options, std::ostream& log) {
  const std::uint64_t seed = resolve_seed(config, options);
  const auto rows = validation_rows(config, seed, options.exec);
  auto out = open_output(options.out_dir, "validate.csv");
  CsvWriter csv(out, {"strategy", "link", "scenario", "closed_form", "mc_estimate", "abs_gap", "pass"});
  bool all = true;
  for (const ValidationRow& r : rows) {
    csv.cell(r.strategy)
        .cell(number(r.link))
        .cell(to_string(r.scenario))
        .cell(r.closed_form)
        .cell(r.mc_estimate)
        .cell(r.abs_gap)
        .cell(r.pass ? "true" : "false");
    csv.end_row();
    log << r.strategy << " link" << number(r.link) << ' ' << to_string(r.scenario) << ": closed "
        << format_double(r.closed_form) << "  mc " << format_double(r.mc_estimate) << "  gap "
        << format_double(r.abs_gap) << "  " << (r.pass ? "pass" : "FAIL") << '\n';
    all = all && r.pass;
  }
  return all ? kExitOk : kExitFailure;
}

int cmd_region(const ExperimentConfig& config, const CommandOptions& options, std::ostream& log) {
  const RegionReport r = region_report(config);
  {
    auto out = open_output(options.out_dir, "region_boundary.csv");
    CsvWriter csv(out, {"lambda1", "lambda2"});
    for (std::size_t i = 0; i < r.lambda1.size(); ++i) {
      csv.cell(r.lambda1[i]).cell(r.lambda2[i]);
      csv.end_row();
    }
  }
  {
    auto out = open_output(options.out_dir, "region_vertices.csv");
    CsvWriter csv(out, {"lambda1", "lambda2"});
    for (const RatePoint& p : r.vertices) {
      csv.cell(p.lambda1).cell(p.lambda2);
      csv.end_row();
    }
  }
  write_json(options.out_dir, "region_summary.json", r.summary());
  log << "corner (" << format_double(r.corner.lambda1) << ", " << format_double(r.corner.lambda2) << ")  convex "
      << (r.convex ? "yes" : "no") << (r.region.degenerate ? "  degenerate" : "") << '\n';
  return kExitOk;
}

int cmd_closure(const ExperimentConfig& config, const CommandOptions& options, std::ostream& log) {
  const ClosureReport r = closure_report(config, options.exec);
  {
    auto out = open_output(options.out_dir, "closure.csv");
    CsvWriter csv(out, {"lambda1", "lambda2_max", "p1", "p2", "q1", "q2"});
    for (const ClosurePoint& p : r.curve.points) {
      csv.cell(p.lambda1).cell(p.lambda2_max).cell(p.p1).cell(p.p2).cell(p.q1).cell(p.q2);
      csv.end_row();
    }
  }
  {
    auto out = open_output(options.out_dir, "closure_overlay.csv");
    CsvWriter csv(out, {"lambda1", "lambda2"});
    for (std::size_t i = 0; i < r.overlay.size(); ++i) {
      csv.cell(r.spec.lambda1[i]).cell(r.overlay[i]);
      csv.end_row();
    }
  }
  write_json(options.out_dir, "closure_meta.json", r.meta());
  log << r.spec.cell_count() << " cells, concavity defect " << format_double(r.concavity_defect)
      << ", max gap to overlay " << format_double(r.max_gap_to_overlay) << '\n';
  return kExitOk;
}

int cmd_simulate(const ExperimentConfig& config, const CommandOptions& options, std::ostream& log) {
  const std::uint64_t seed = resolve_seed(config, options);
  const SimulationReport rep = simulation_report(config, seed, options.exec);
  {
    auto out = open_output(options.out_dir, "simulate.csv");
    CsvWriter csv(out, {"seed", "mu1_hat", "mu2_hat", "q1_mean_len", "q2_mean_len", "drift1", "drift2", "verdict1",
                        "verdict2"});
    for (const SimResult& r : rep.runs) {
      csv.cell(r.seed)
          .cell(r.queues[0].service_rate)
          .cell(r.queues[1].service_rate)
          .cell(r.queues[0].mean_length)
          .cell(r.queues[1].mean_length)
          .cell(r.queues[0].drift)
          .cell(r.queues[1].drift)
          .cell(to_string(r.queues[0].verdict))
          .cell(to_string(r.queues[1].verdict));
      csv.end_row();
    }
  }
  if (!rep.boundary.empty()) {
    auto out = open_output(options.out_dir, "simulate_boundary.csv");
    CsvWriter csv(out, {"lambda1", "lambda2_empirical", "lambda2_analytical", "abs_gap"});
    for (const BoundaryRow& b : rep.boundary) {
      csv.cell(b.lambda1).cell(b.empirical).cell(b.analytical).cell(b.abs_gap);
      csv.end_row();
    }
  }
  write_json(options.out_dir, "simulate_verdict.json", rep.verdict_json(config));
  log << "verdict " << to_string(rep.system_verdict) << " (queue 1 " << to_string(rep.queue_verdicts[0])
      << ", queue 2 " << to_string(rep.queue_verdicts[1]) << ")\n";
  for (const BoundaryRow& b : rep.boundary)
    log << "boundary at lambda1 " << format_double(b.lambda1) << ": empirical " << format_double(b.empirical)
        << ", analytical " << format_double(b.analytical) << '\n';
  return rep.inconclusive() ? kExitInconclusive : kExitOk;
}

}  // namespace icstab
