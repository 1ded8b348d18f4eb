#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "haudim/config.hpp"
#include "haudim/experiments.hpp"

int main(int argc, char** argv) {
  CLI::App app{"haudim: dimension theory engine and Monte Carlo lab for level, "
               "inverse-image and collision time sets"};
  app.require_subcommand(1);

  const std::vector<std::string> kinds = {
      "predict", "gamma", "level-dim", "inverse-dim", "collision-dim",
      "kernel-check", "subordinator-check", "energy", "wiener"};

  struct Options {
    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    bool seed_set = false;
    bool assert_tolerances = false;
  };

  std::vector<Options> opts(kinds.size());
  for (std::size_t i = 0; i < kinds.size(); ++i) {
    CLI::App* sub = app.add_subcommand(kinds[i], "run a " + kinds[i] + " experiment");
    sub->add_option("--config", opts[i].config_path, "experiment config file")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--out", opts[i].out_dir, "override output directory");
    sub->add_option("--seed", opts[i].seed, "override master seed")
        ->each([&opts, i](const std::string&) { opts[i].seed_set = true; });
    sub->add_flag("--assert", opts[i].assert_tolerances,
                  "exit nonzero when tolerance checks fail");
  }

  CLI11_PARSE(app, argc, argv);

  for (std::size_t i = 0; i < kinds.size(); ++i) {
    if (!app.get_subcommand(kinds[i])->parsed()) continue;
    try {
      haudim::ExperimentConfig cfg = haudim::load_config(opts[i].config_path);
      cfg.kind = kinds[i];
      if (!opts[i].out_dir.empty()) cfg.out_dir = opts[i].out_dir;
      if (opts[i].seed_set) cfg.master_seed = opts[i].seed;
      const haudim::RunOutcome outcome = haudim::run_experiment(cfg);
      std::printf("%s", outcome.summary.c_str());
      std::printf("tolerances %s; artifacts in %s\n",
                  outcome.tolerances_ok ? "PASS" : "FAIL", cfg.out_dir.c_str());
      if (opts[i].assert_tolerances && !outcome.tolerances_ok) return 2;
      return 0;
    } catch (const std::exception& e) {
      std::fprintf(stderr, "error: %s\n", e.what());
      return 1;
    }
  }
  return 1;
}
