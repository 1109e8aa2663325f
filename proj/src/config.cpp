#include "icstab/config.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>

#include "icstab/errors.hpp"

namespace icstab {
namespace {

using nlohmann::json;

void require_object(const json& j, const std::string& where) {
  if (!j.is_object()) throw ConfigError("'" + where + "' must be a JSON object");
}

void reject_unknown(const json& j, const std::string& where, std::initializer_list<std::string_view> allowed) {
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (auto a : allowed) known = known || key == a;
    if (!known) throw ConfigError("unknown field '" + key + "' in '" + where + "'");
  }
}

double number(const json& j, const std::string& key, const std::string& where) {
  const json& v = j.at(key);
  if (!v.is_number()) throw ConfigError("'" + where + "." + key + "' must be a number");
  return v.get<double>();
}

double number_or(const json& j, const std::string& key, const std::string& where, double fallback) {
  return j.contains(key) ? number(j, key, where) : fallback;
}

std::int64_t integer_or(const json& j, const std::string& key, const std::string& where, std::int64_t fallback) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (!v.is_number_integer()) throw ConfigError("'" + where + "." + key + "' must be an integer");
  return v.get<std::int64_t>();
}

std::uint64_t unsigned_or(const json& j, const std::string& key, const std::string& where, std::uint64_t fallback) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() && v.get<std::int64_t>() < 0))
    throw ConfigError("'" + where + "." + key + "' must be a non-negative integer");
  return v.get<std::uint64_t>();
}

bool boolean_or(const json& j, const std::string& key, const std::string& where, bool fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_boolean()) throw ConfigError("'" + where + "." + key + "' must be true or false");
  return j.at(key).get<bool>();
}

std::string string_or(const json& j, const std::string& key, const std::string& where, std::string fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_string()) throw ConfigError("'" + where + "." + key + "' must be a string");
  return j.at(key).get<std::string>();
}

const json& section(const json& doc, const std::string& key, bool required) {
  static const json empty = json::object();
  if (!doc.contains(key)) {
    if (required) throw ConfigError("missing required section '" + key + "'");
    return empty;
  }
  require_object(doc.at(key), key);
  return doc.at(key);
}

void require_keys(const json& j, const std::string& where, std::initializer_list<const char*> keys) {
  for (const char* k : keys)
    if (!j.contains(k)) throw ConfigError("missing field '" + where + "." + k + "'");
}

int to_int(std::int64_t v, const std::string& what) {
  if (v < 0 || v > 1'000'000) throw ConfigError("'" + what + "' is out of range");
  return static_cast<int>(v);
}

// Re-throws a module invariant violation as a configuration diagnostic.
template <typename F>
void check(F&& f, const std::string& where) {
  try {
    f();
  } catch (const DomainError& e) {
    throw ConfigError(where + ": " + e.what());
  }
}

}  // namespace

ExperimentConfig parse_config(const json& doc) {
  require_object(doc, "config");
  reject_unknown(doc, "config",
                 {"topology", "power", "thresholds", "strategy", "access", "sweep", "sim", "validate", "seed",
                  "output"});
  ExperimentConfig c;

  const json& topo = section(doc, "topology", true);
  reject_unknown(topo, "topology", {"r11", "r12", "r21", "r22", "alpha"});
  require_keys(topo, "topology", {"r11", "r12", "r21", "r22", "alpha"});
  c.channel.topology = {number(topo, "r11", "topology"), number(topo, "r12", "topology"),
                        number(topo, "r21", "topology"), number(topo, "r22", "topology"),
                        number(topo, "alpha", "topology")};

  const json& power = section(doc, "power", true);
  reject_unknown(power, "power", {"p1", "p2"});
  require_keys(power, "power", {"p1", "p2"});
  c.channel.power = {number(power, "p1", "power"), number(power, "p2", "power")};

  const json& th = section(doc, "thresholds", true);
  reject_unknown(th, "thresholds", {"gamma1", "gamma2"});
  require_keys(th, "thresholds", {"gamma1", "gamma2"});
  c.channel.thresholds = {number(th, "gamma1", "thresholds"), number(th, "gamma2", "thresholds")};

  const json& st = section(doc, "strategy", false);
  reject_unknown(st, "strategy", {"rx1", "rx2", "beamformer", "antennas"});
  c.strategy.rx1 = parse_decoder(string_or(st, "rx1", "strategy", "ian"));
  c.strategy.rx2 = parse_decoder(string_or(st, "rx2", "strategy", "ian"));
  c.strategy.antennas.beamformer = parse_beamformer(string_or(st, "beamformer", "strategy", "single"));
  c.strategy.antennas.antennas = to_int(integer_or(st, "antennas", "strategy", 1), "strategy.antennas");

  const json& acc = section(doc, "access", false);
  reject_unknown(acc, "access", {"q1", "q2"});
  c.access = {number_or(acc, "q1", "access", 1.0), number_or(acc, "q2", "access", 1.0)};

  const json& sw = section(doc, "sweep", false);
  reject_unknown(sw, "sweep", {"p_max", "power_points", "access_points", "lambda1_points", "sweep_power", "sweep_access"});
  c.sweep.p_max = number_or(sw, "p_max", "sweep", c.sweep.p_max);
  c.sweep.power_points = to_int(integer_or(sw, "power_points", "sweep", c.sweep.power_points), "sweep.power_points");
  c.sweep.access_points = to_int(integer_or(sw, "access_points", "sweep", c.sweep.access_points), "sweep.access_points");
  c.sweep.lambda1_points =
      to_int(integer_or(sw, "lambda1_points", "sweep", c.sweep.lambda1_points), "sweep.lambda1_points");
  c.sweep.sweep_power = boolean_or(sw, "sweep_power", "sweep", c.sweep.sweep_power);
  c.sweep.sweep_access = boolean_or(sw, "sweep_access", "sweep", c.sweep.sweep_access);

  const json& sim = section(doc, "sim", false);
  reject_unknown(sim, "sim",
                 {"horizon", "seeds", "lambda1", "lambda2", "dominant", "boundary_lambda1", "boundary_tol",
                  "boundary_seeds"});
  c.sim.horizon = unsigned_or(sim, "horizon", "sim", c.sim.horizon);
  c.sim.seeds = to_int(integer_or(sim, "seeds", "sim", c.sim.seeds), "sim.seeds");
  c.sim.arrivals = {number_or(sim, "lambda1", "sim", 0.0), number_or(sim, "lambda2", "sim", 0.0)};
  c.sim.mode = parse_dominant_mode(string_or(sim, "dominant", "sim", "none"));
  if (sim.contains("boundary_lambda1")) {
    const json& list = sim.at("boundary_lambda1");
    if (!list.is_array()) throw ConfigError("'sim.boundary_lambda1' must be an array of numbers");
    for (const json& v : list) {
      if (!v.is_number()) throw ConfigError("'sim.boundary_lambda1' must be an array of numbers");
      c.sim.boundary_lambda1.push_back(v.get<double>());
    }
  }
  c.sim.boundary_tol = number_or(sim, "boundary_tol", "sim", c.sim.boundary_tol);
  c.sim.boundary_seeds = to_int(integer_or(sim, "boundary_seeds", "sim", c.sim.boundary_seeds), "sim.boundary_seeds");

  const json& val = section(doc, "validate", false);
  reject_unknown(val, "validate", {"samples"});
  c.samples = unsigned_or(val, "samples", "validate", c.samples);

  if (doc.contains("seed")) c.seed = unsigned_or(doc, "seed", "config", 0);
  if (doc.contains("output")) c.output = string_or(doc, "output", "config", "");

  c.validate();
  return c;
}

ExperimentConfig parse_config_text(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  return parse_config(doc);
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

void ExperimentConfig::validate() const {
  check([&] { channel.validate(); }, "channel");
  check([&] { strategy.validate(); }, "strategy");
  check([&] { access.validate(); }, "access");
  if (samples == 0) throw ConfigError("sample count must be positive");
  if (!(sweep.p_max >= 0.0)) throw ConfigError("sweep.p_max must be non-negative");
  if (sweep.power_points < 1 || sweep.access_points < 1 || sweep.lambda1_points < 1)
    throw ConfigError("sweep grids need at least one point per axis");
  if (!sweep.sweep_power && (channel.power.p1 > sweep.p_max || channel.power.p2 > sweep.p_max))
    throw ConfigError("fixed powers must not exceed sweep.p_max");
  if (sim.seeds < 1) throw ConfigError("sim.seeds must be at least 1");
  if (sim.horizon < 1) throw ConfigError("sim.horizon must be at least 1");
  if (sim.boundary_seeds < 3) throw ConfigError("sim.boundary_seeds must be at least 3");
  if (!(sim.boundary_tol > 0.0)) throw ConfigError("sim.boundary_tol must be positive");
  for (double l : {sim.arrivals.lambda1, sim.arrivals.lambda2})
    if (!(l >= 0.0 && l <= 1.0)) throw ConfigError("sim arrival rates must lie in [0, 1]");
  for (double l : sim.boundary_lambda1)
    if (!(l >= 0.0 && l <= 1.0)) throw ConfigError("sim.boundary_lambda1 entries must lie in [0, 1]");
}

SweepSpec ExperimentConfig::sweep_spec() const {
  SweepSpec s;
  s.p_max = sweep.p_max;
  if (sweep.sweep_power) {
    s.p1_values = uniform_grid(0.0, sweep.p_max, sweep.power_points);
    s.p2_values = s.p1_values;
  } else {
    s.p1_values = {channel.power.p1};
    s.p2_values = {channel.power.p2};
  }
  if (sweep.sweep_access) {
    s.q1_values = uniform_grid(0.0, 1.0, sweep.access_points);
    s.q2_values = s.q1_values;
  } else {
    s.q1_values = {access.q1};
    s.q2_values = {access.q2};
  }
  s.lambda1 = uniform_grid(0.0, 1.0, sweep.lambda1_points);
  return s;
}

SimConfig ExperimentConfig::sim_config(std::uint64_t run_seed) const {
  SimConfig s;
  s.channel = channel;
  s.strategy = strategy;
  s.arrivals = sim.arrivals;
  s.access = access;
  s.mode = sim.mode;
  s.horizon = sim.horizon;
  s.seed = run_seed;
  return s;
}

void apply_grid_override(ExperimentConfig& config, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos || eq == 0)
    throw ConfigError("grid override '" + std::string(assignment) + "' must look like key=value");
  const std::string key(assignment.substr(0, eq));
  const std::string value(assignment.substr(eq + 1));
  json sweep = {{"p_max", config.sweep.p_max},
                {"power_points", config.sweep.power_points},
                {"access_points", config.sweep.access_points},
                {"lambda1_points", config.sweep.lambda1_points},
                {"sweep_power", config.sweep.sweep_power},
                {"sweep_access", config.sweep.sweep_access}};
  if (!sweep.contains(key)) throw ConfigError("unknown grid override key '" + key + "'");
  json parsed;
  try {
    parsed = json::parse(value);
  } catch (const json::parse_error&) {
    throw ConfigError("grid override '" + key + "' has an unparsable value '" + value + "'");
  }
  sweep[key] = parsed;
  json holder = {{"sweep", sweep}};
  const json& sw = holder.at("sweep");
  SweepSettings s;
  s.p_max = number(sw, "p_max", "sweep");
  s.power_points = to_int(integer_or(sw, "power_points", "sweep", 0), "sweep.power_points");
  s.access_points = to_int(integer_or(sw, "access_points", "sweep", 0), "sweep.access_points");
  s.lambda1_points = to_int(integer_or(sw, "lambda1_points", "sweep", 0), "sweep.lambda1_points");
  s.sweep_power = boolean_or(sw, "sweep_power", "sweep", true);
  s.sweep_access = boolean_or(sw, "sweep_access", "sweep", false);
  config.sweep = s;
  config.validate();
}

}  // namespace icstab
