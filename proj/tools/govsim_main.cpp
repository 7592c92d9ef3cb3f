// Command-line front door: runs the experiment grid, persists deterministic
// CSV/SVG artifacts, and re-analyzes persisted runs.

#include <cstdint>
#include <exception>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "govsim/experiments.hpp"
#include "govsim/params.hpp"
#include "govsim/report.hpp"

namespace {

namespace fs = std::filesystem;

govsim::SimParams load_or_default(const std::string& config_path) {
  if (config_path.empty()) return govsim::SimParams::defaults();
  return govsim::load_params(config_path);
}

void write_analysis_files(const govsim::GridResult& grid, const fs::path& out_dir) {
  const auto levels = govsim::aggregate_levels(grid);
  const auto pairs = govsim::pairwise_nbv(grid);
  const auto matrix = govsim::scenario_matrix(grid);
  govsim::write_file((out_dir / "summary.csv").string(),
                     govsim::serialize_summary_csv(levels));
  govsim::write_file((out_dir / "pairwise.csv").string(),
                     govsim::serialize_pairwise_csv(pairs));
  govsim::write_file((out_dir / "scenario_matrix.csv").string(),
                     govsim::serialize_matrix_csv(matrix));
}

void write_report_files(const govsim::GridResult& grid, const fs::path& out_dir) {
  const auto levels = govsim::aggregate_levels(grid);
  const auto pairs = govsim::pairwise_nbv(grid);
  const auto matrix = govsim::scenario_matrix(grid);
  govsim::write_file((out_dir / "panels.csv").string(),
                     govsim::serialize_panels_csv(levels));
  govsim::write_file((out_dir / "heatmap.svg").string(),
                     govsim::render_heatmap_svg(matrix));
  govsim::write_file((out_dir / "report.md").string(),
                     govsim::render_report_markdown(levels, pairs, matrix));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deterministic agent-governance simulation lab"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = "out";
  std::string runs_path;
  std::uint64_t seed = 42;
  int replicates = 30;
  int parallel = 1;

  CLI::App* run = app.add_subcommand(
      "run", "Run the full scenario/level grid and write all artifacts");
  run->add_option("--config", config_path, "Parameter file overriding defaults");
  run->add_option("--out", out_dir, "Output directory");
  run->add_option("--seed", seed, "Base seed for the run grid");
  run->add_option("--replicates", replicates, "Replicates per (scenario, level)")
      ->check(CLI::PositiveNumber);
  run->add_option("--parallel", parallel, "Worker threads for the grid")
      ->check(CLI::PositiveNumber);

  CLI::App* analyze = app.add_subcommand(
      "analyze", "Recompute summary, pairwise, and matrix tables from runs.csv");
  analyze->add_option("--runs", runs_path, "Path to runs.csv")->required();
  analyze->add_option("--out", out_dir, "Output directory");

  CLI::App* report = app.add_subcommand(
      "report", "Render panels.csv, heatmap.svg, and report.md from runs.csv");
  report->add_option("--runs", runs_path, "Path to runs.csv")->required();
  report->add_option("--out", out_dir, "Output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    const fs::path out(out_dir);
    std::error_code ec;
    fs::create_directories(out, ec);
    if (ec) {
      std::cerr << "error: cannot create output directory '" << out_dir
                << "': " << ec.message() << "\n";
      return 1;
    }

    if (run->parsed()) {
      const govsim::SimParams params = load_or_default(config_path);
      const govsim::GridResult grid =
          govsim::run_grid(seed, replicates, params, parallel);
      govsim::write_file((out / "runs.csv").string(),
                         govsim::serialize_runs_csv(grid));
      write_analysis_files(grid, out);
      write_report_files(grid, out);
      govsim::write_file((out / "manifest.json").string(),
                         govsim::render_manifest_json(seed, replicates, params));
      std::cout << "wrote " << grid.entries.size() << " runs to " << out_dir << "\n";
    } else if (analyze->parsed()) {
      const govsim::GridResult grid = govsim::load_runs_csv(runs_path);
      write_analysis_files(grid, out);
      std::cout << "analyzed " << grid.entries.size() << " runs into " << out_dir
                << "\n";
    } else if (report->parsed()) {
      const govsim::GridResult grid = govsim::load_runs_csv(runs_path);
      write_report_files(grid, out);
      std::cout << "rendered report for " << grid.entries.size() << " runs into "
                << out_dir << "\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
