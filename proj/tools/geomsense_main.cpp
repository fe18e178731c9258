// Command-line entry point: `geomsense run <config>` and `geomsense list`.

#include <cstdio>
#include <iostream>

#include <CLI11.hpp>

#include "geomsense/experiments.hpp"

int main(int argc, char** argv) {
  CLI::App app{"geomsense - geometric-phase qubit-oscillator sensing experiments"};
  app.require_subcommand(1);

  auto* list_cmd = app.add_subcommand("list", "list available experiments");

  std::string config_path;
  std::string output_dir = ".";
  int jobs = 0;
  int cutoff = 0;
  bool no_svg = false;
  auto* run_cmd = app.add_subcommand("run", "run an experiment config");
  run_cmd->add_option("config", config_path, "JSON experiment config")->required();
  run_cmd->add_option("--output-dir", output_dir, "directory for csv/manifest/svg artifacts");
  run_cmd->add_option("--jobs", jobs, "worker threads for sweep cells (0 = all cores)");
  run_cmd->add_option("--cutoff", cutoff, "override the config's Fock cutoff N");
  run_cmd->add_flag("--no-svg", no_svg, "skip SVG plot generation");

  CLI11_PARSE(app, argc, argv);

  if (list_cmd->parsed()) {
    std::cout << geomsense::list_experiments_text();
    return 0;
  }

  geomsense::RunOptions opts;
  opts.output_dir = output_dir;
  opts.jobs = jobs;
  opts.cutoff_override = cutoff;
  opts.write_svg = !no_svg;

  const auto outcome = geomsense::run_experiment_file(config_path, opts);
  if (!outcome.error.empty()) std::cerr << outcome.error << "\n";
  if (outcome.exit_code == 0 || outcome.exit_code == 3) {
    std::cout << "csv: " << outcome.csv_path.string() << "\n"
              << "manifest: " << outcome.manifest_path.string() << "\n";
    for (const auto& p : outcome.svg_paths) std::cout << "svg: " << p.string() << "\n";
  }
  return outcome.exit_code;
}
