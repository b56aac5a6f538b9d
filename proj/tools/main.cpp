#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cli/commands.hpp"
#include "cli/suites.hpp"

namespace cli = dynregret::cli;

int main(int argc, char** argv) {
  CLI::App app{"Dynamic-regret online convex optimization experiments"};
  app.require_subcommand(1);

  std::string config_path;
  std::string suite;
  cli::Overrides overrides;

  auto add_experiment_flags = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "experiment config (JSON)")->required();
    sub->add_option("--seeds", overrides.seeds, "number of Monte-Carlo seeds");
    sub->add_option("--seed", overrides.seed, "base seed; runs use seeds base+1, base+2, ...");
    sub->add_option("--out", overrides.out, "output directory");
    sub->add_option("--thin", overrides.thin, "keep every k-th round in the trace");
  };

  CLI::App* run = app.add_subcommand("run", "run one experiment and write trace.csv + summary.json");
  add_experiment_flags(run);
  CLI::App* sweep = app.add_subcommand("sweep", "Monte-Carlo sweep over a T list; writes rates.csv");
  add_experiment_flags(sweep);
  CLI::App* verify = app.add_subcommand("verify", "run an acceptance suite");
  std::string suites;
  for (const auto& name : cli::suite_names()) suites += (suites.empty() ? "" : ", ") + name;
  verify->add_option("suite", suite, "one of: " + suites)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cli::kExitUsage;
  }

  if (run->parsed()) return cli::cmd_run(config_path, overrides, std::cout, std::cerr);
  if (sweep->parsed()) return cli::cmd_sweep(config_path, overrides, std::cout, std::cerr);
  return cli::cmd_verify(suite, std::cout, std::cerr);
}
