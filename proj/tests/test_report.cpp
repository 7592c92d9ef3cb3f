#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "govsim/experiments.hpp"
#include "govsim/report.hpp"

using namespace govsim;

TEST_CASE("runs.csv round trip is exact at six decimals") {
  const GridResult grid = run_grid(42, 2);
  const std::string csv = serialize_runs_csv(grid);

  std::istringstream in(csv);
  const GridResult parsed = parse_runs_csv(in);
  REQUIRE(parsed.entries.size() == grid.entries.size());
  CHECK(serialize_runs_csv(parsed) == csv);

  SECTION("header and line endings") {
    CHECK(csv.rfind("scenario_id,level,replicate,seed,", 0) == 0);
    CHECK(csv.find("\r") == std::string::npos);
    std::size_t lines = 0;
    for (char c : csv) lines += c == '\n';
    CHECK(lines == 51);  // header + 50 rows, LF-terminated
  }

  SECTION("aggregates from parsed data match the in-memory grid") {
    CHECK(serialize_summary_csv(aggregate_levels(parsed)) ==
          serialize_summary_csv(aggregate_levels(grid)));
    CHECK(serialize_pairwise_csv(pairwise_nbv(parsed)) ==
          serialize_pairwise_csv(pairwise_nbv(grid)));
    CHECK(serialize_matrix_csv(scenario_matrix(parsed)) ==
          serialize_matrix_csv(scenario_matrix(grid)));
  }
}

TEST_CASE("runs.csv schema violations are reported by name") {
  SECTION("missing column") {
    std::istringstream in("scenario_id,level,replicate\nS1,L1,0\n");
    CHECK_THROWS_WITH(parse_runs_csv(in),
                      Catch::Matchers::ContainsSubstring("seed"));
  }

  SECTION("reordered column") {
    std::istringstream in("level,scenario_id,replicate,seed\n");
    CHECK_THROWS_WITH(parse_runs_csv(in),
                      Catch::Matchers::ContainsSubstring("scenario_id"));
  }

  SECTION("short row") {
    std::string csv = runs_csv_header();
    csv += "S1,L1,0,42\n";
    std::istringstream in(csv);
    CHECK_THROWS_WITH(parse_runs_csv(in),
                      Catch::Matchers::ContainsSubstring("row 2"));
  }

  SECTION("malformed field names the column") {
    const GridResult grid = run_grid(42, 1);
    std::string csv = serialize_runs_csv(grid);
    const auto pos = csv.find(",L1,0,");
    REQUIRE(pos != std::string::npos);
    csv.replace(pos + 1, 2, "LX");
    std::istringstream in(csv);
    CHECK_THROWS_AS(parse_runs_csv(in), std::invalid_argument);
  }

  SECTION("empty file") {
    std::istringstream in("");
    CHECK_THROWS_WITH(parse_runs_csv(in),
                      Catch::Matchers::ContainsSubstring("header"));
  }
}

TEST_CASE("heatmap rendering") {
  ScenarioMatrix m;
  for (std::size_t s = 0; s < 5; ++s)
    for (std::size_t l = 0; l < 5; ++l)
      m.mean_nbv[s][l] = 0.6 + 0.08 * static_cast<double>(l) +
                         0.01 * static_cast<double>(s);

  const std::string svg = render_heatmap_svg(m);

  SECTION("deterministic bytes") { CHECK(render_heatmap_svg(m) == svg); }

  SECTION("25 cells with three-decimal labels") {
    std::size_t rects = 0, pos = 0;
    while ((pos = svg.find("<rect", pos)) != std::string::npos) {
      ++rects;
      ++pos;
    }
    CHECK(rects == 25);
    CHECK(svg.find(">0.600<") != std::string::npos);   // S1/L1 cell
    CHECK(svg.find(">0.960<") != std::string::npos);   // S5/L5 cell
  }

  SECTION("extremes map to the gradient endpoints") {
    CHECK(svg.find("#d73027") != std::string::npos);  // red at the minimum
    CHECK(svg.find("#1a9850") != std::string::npos);  // green at the maximum
  }

  SECTION("constant matrix renders a single mid-gradient color") {
    ScenarioMatrix flat;
    for (auto& row : flat.mean_nbv) row.fill(0.5);
    const std::string flat_svg = render_heatmap_svg(flat);
    CHECK(flat_svg.find("#d73027") == std::string::npos);
    CHECK(flat_svg.find("#1a9850") == std::string::npos);
    const std::string mid = detail::heat_color(0.5, 0.5, 0.5);
    CHECK(flat_svg.find(mid) != std::string::npos);
  }
}

TEST_CASE("manifest digest tracks seed and parameters") {
  const SimParams defaults = SimParams::defaults();
  const std::string base = render_manifest_json(42, 30, defaults);
  CHECK(render_manifest_json(42, 30, defaults) == base);
  CHECK(render_manifest_json(43, 30, defaults) != base);

  SimParams tweaked = defaults;
  tweaked.levels[0].shadow_probability = 0.36;
  CHECK(render_manifest_json(42, 30, tweaked) != base);
  CHECK(params_digest(tweaked) != params_digest(defaults));
  CHECK(params_digest(defaults) == params_digest(SimParams::defaults()));

  CHECK(base.find("\"seed\": 42") != std::string::npos);
  CHECK(base.find("\"artifact_version\"") != std::string::npos);
}

TEST_CASE("summary and panels render every level") {
  const GridResult grid = run_grid(42, 2);
  const auto levels = aggregate_levels(grid);

  const std::string summary = serialize_summary_csv(levels);
  for (const char* tag : {"L1,Ad-hoc", "L2,Reactive", "L3,Defined",
                          "L4,Managed", "L5,Optimized"})
    CHECK(summary.find(tag) != std::string::npos);

  const std::string panels = serialize_panels_csv(levels);
  for (const char* metric : {"si,", "rir,", "etcr,", "nbv,"})
    CHECK(panels.find(metric) != std::string::npos);
  std::size_t lines = 0;
  for (char c : panels) lines += c == '\n';
  CHECK(lines == 21);  // header + 4 metrics x 5 levels

  const std::string md =
      render_report_markdown(levels, pairwise_nbv(grid), scenario_matrix(grid));
  CHECK(md.find("| L1 Ad-hoc") != std::string::npos);
  CHECK(md.find("L1 vs. L2") != std::string::npos);
}
