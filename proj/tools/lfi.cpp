// lfi: command-line driver for the likelihood-free inference experiments.

#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "lfi/cli/commands.hpp"
#include "lfi/cli/config.hpp"
#include "lfi/parallel.hpp"

int main(int argc, char** argv) {
  using namespace lfi::cli;

  CLI::App app{"Likelihood-free Bayesian inference: synthetic and empirical likelihood samplers"};
  app.require_subcommand(1);

  int threads = 0;
  app.add_option("--threads", threads, "Worker threads (default: all cores)")->check(CLI::NonNegativeNumber);

  struct Experiment {
    CLI::App* sub;
    std::string config;
    std::uint64_t seed = 0;
    std::string output;
    int bins = 50;
  };
  std::vector<std::unique_ptr<Experiment>> experiments;
  for (const auto& name : experiment_commands()) {
    auto e = std::make_unique<Experiment>();
    e->sub = app.add_subcommand(name, "Run the " + name + " experiment");
    e->sub->add_option("config", e->config, "JSON config file (omit for defaults)");
    e->sub->add_option("--seed", e->seed, "Override the config seed");
    e->sub->add_option("--out", e->output, "Override the output directory");
    e->sub->add_option("--bins", e->bins, "Histogram bins")->check(CLI::PositiveNumber);
    experiments.push_back(std::move(e));
  }

  ElTestArgs el;
  std::string data_path;
  auto* el_cmd = app.add_subcommand("el-test", "Empirical likelihood test of a constraint at theta");
  el_cmd->add_option("--data", data_path, "Numeric CSV, one observation per row")->required();
  el_cmd->add_option("--constraint", el.constraint, "mean or quantile")->capture_default_str();
  el_cmd->add_option("--prob", el.prob, "Probability for the quantile constraint");
  el_cmd->add_option("--theta", el.theta, "Hypothesized parameter")->required()->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  if (threads > 0) lfi::set_thread_count(threads);

  if (el_cmd->parsed()) {
    el.data = data_path;
    return run_el_test(el, std::cout);
  }

  for (const auto& e : experiments) {
    if (!e->sub->parsed()) continue;
    RunOptions opt;
    if (e->sub->count("--seed")) opt.seed = e->seed;
    if (e->sub->count("--out")) opt.output = e->output;
    opt.bins = e->bins;
    nlohmann::json cfg;
    if (!e->config.empty()) {
      try {
        cfg = load_json_file(e->config);
      } catch (const std::exception& ex) {
        std::cout << error_json(ex).dump(2) << '\n';
        return exit_code_for(ex);
      }
    }
    return run_experiment(e->sub->get_name(), cfg, opt, std::cout);
  }
  return kExitInternal;
}
