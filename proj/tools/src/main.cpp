// dshell: run verification suites and config-driven sweeps.
//
//   dshell verify <suite> [--mesh N] [--seed S] [--out DIR]
//   dshell sweep <config.json> [--mesh N] [--seed S] [--out DIR]
//   dshell report <dir>
//
// Exit status: 0 all bands met, 1 a band failed, 2 usage or config error.
#include <CLI11.hpp>
#include <iostream>

#include "dshell_cli/experiment.hpp"

namespace {

void override_cells(dshell::cli::ExperimentPlan& plan, int mesh, long seed) {
  for (auto& c : plan.cells) {
    if (mesh > 0) c.config.mesh = mesh;
    if (seed >= 0) c.config.seed = static_cast<unsigned>(seed);
    c.config.validate(c.suite);
  }
}

}  // namespace

int main(int argc, char** argv) {
  using namespace dshell;
  CLI::App app{"Dirac large-mass shell experiments"};
  app.require_subcommand(1);

  std::string suite, config, dir, out;
  int mesh = 0;
  long seed = -1;

  auto* verify = app.add_subcommand("verify", "run one suite with default settings");
  std::string ids;
  for (const auto& s : suite_ids()) ids += (ids.empty() ? "" : ", ") + s;
  verify->add_option("suite", suite, "one of: " + ids)->required();
  auto* sweep = app.add_subcommand("sweep", "run the cells of a JSON plan");
  sweep->add_option("config", config, "plan file (see docs/config.md)")->required()->check(CLI::ExistingFile);
  for (auto* sub : {verify, sweep}) {
    sub->add_option("--mesh", mesh, "mesh resolution N (N rings, 2N azimuthal points)")->check(CLI::PositiveNumber);
    sub->add_option("--seed", seed, "random seed")->check(CLI::NonNegativeNumber);
    sub->add_option("--out", out, "output directory");
  }
  auto* report = app.add_subcommand("report", "summarize a results directory");
  report->add_option("dir", dir, "directory holding summary.json")->required()->check(CLI::ExistingDirectory);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*report) return cli::print_report(dir, std::cout) ? 0 : 1;

    cli::ExperimentPlan plan;
    if (*verify) {
      if (!is_suite(suite)) {
        std::cerr << "unknown suite '" << suite << "'; expected one of: " << ids << "\n";
        return 2;
      }
      plan = cli::single_suite_plan(suite, mesh, seed);
      if (out.empty()) out = "results/" + suite;
    } else {
      plan = cli::load_plan(config);
      override_cells(plan, mesh, seed);
      if (out.empty()) out = "results/sweep-" + plan.config_hash.substr(0, 8);
    }
    const auto summary = cli::run_plan(plan, out, [](const std::string& s) { std::cerr << s << "\n"; });
    cli::print_report(out, std::cout);
    std::cout << "outputs in " << out << "\n";
    return summary.pass ? 0 : 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
