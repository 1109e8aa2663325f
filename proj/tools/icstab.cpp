// icstab validate|region|closure|simulate --config <path> --out <dir> --seed <u64> [--grid-override k=v]

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "icstab/commands.hpp"
#include "icstab/config.hpp"
#include "icstab/errors.hpp"
#include "icstab/parallel.hpp"

namespace {

struct Args {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> overrides;
};

void add_common(CLI::App* cmd, Args& a) {
  cmd->add_option("--config", a.config, "experiment config (JSON)")->required();
  cmd->add_option("--out", a.out, "output directory (defaults to the config's \"output\")");
  cmd->add_option("--seed", a.seed, "master seed");
  cmd->add_option("--grid-override", a.overrides, "sweep setting as key=value (repeatable)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stable-throughput regions of the two-user interference channel"};
  app.require_subcommand(1);
  Args args;
  using Command = int (*)(const icstab::ExperimentConfig&, const icstab::CommandOptions&, std::ostream&);
  Command chosen = nullptr;
  const std::pair<const char*, Command> commands[] = {
      {"validate", icstab::cmd_validate},
      {"region", icstab::cmd_region},
      {"closure", icstab::cmd_closure},
      {"simulate", icstab::cmd_simulate},
  };
  const char* help[] = {"closed forms against Monte Carlo estimates", "stability region at the configured powers",
                        "envelope over the power/access grid", "slotted queue simulation"};
  for (std::size_t i = 0; i < 4; ++i) {
    CLI::App* sub = app.add_subcommand(commands[i].first, help[i]);
    add_common(sub, args);
    sub->callback([&chosen, c = commands[i].second] { chosen = c; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return icstab::kExitConfig;
  }

  try {
    icstab::apply_thread_cap_from_env();
    icstab::ExperimentConfig config = icstab::load_config(args.config);
    for (const auto& o : args.overrides) icstab::apply_grid_override(config, o);
    icstab::CommandOptions options;
    options.seed = args.seed;
    if (!args.out.empty())
      options.out_dir = args.out;
    else if (config.output)
      options.out_dir = *config.output;
    else
      throw icstab::ConfigError("no output directory: pass --out or set \"output\"");
    return chosen(config, options, std::cout);
  } catch (const icstab::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return icstab::kExitConfig;
  } catch (const icstab::DomainError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return icstab::kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return icstab::kExitFailure;
  }
}
