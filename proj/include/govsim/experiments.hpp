#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "govsim/governance.hpp"
#include "govsim/metrics.hpp"
#include "govsim/rng.hpp"
#include "govsim/scenario.hpp"
#include "govsim/sim.hpp"
#include "govsim/stats.hpp"

namespace govsim {

struct GridEntry {
  RunRecord record;
  MetricsBundle metrics;
};

// All runs of one experiment, ordered by (scenario, level, replicate).
struct GridResult {
  std::uint64_t base_seed = 0;
  int replicates = 0;
  std::vector<GridEntry> entries;
};

// Metrics are quantized to the CSV's six-decimal rendering before any
// aggregation, so an analysis recomputed from a parsed runs.csv is
// bit-identical to the one computed directly after the runs.
inline double quantize6(double v) { return std::round(v * 1e6) / 1e6; }

inline MetricsBundle quantize_metrics(MetricsBundle m) {
  m.si = quantize6(m.si);
  m.rir = quantize6(m.rir);
  m.etcr = quantize6(m.etcr);
  m.dsr = quantize6(m.dsr);
  m.gcr = quantize6(m.gcr);
  m.nbv = quantize6(m.nbv);
  return m;
}

// Runs the full scenarios x levels x replicates grid. The result is a pure
// function of (base_seed, replicates, params); `parallel` only distributes
// work, never reorders it.
inline GridResult run_grid(std::uint64_t base_seed, int replicates,
                           const SimParams& params = SimParams::defaults(),
                           int parallel = 1) {
  if (replicates < 1)
    throw std::invalid_argument("run_grid: replicates must be >= 1");

  const int n_scenarios = static_cast<int>(kScenarioIds.size());
  const int n_levels = static_cast<int>(kAllLevels.size());
  const int total = n_scenarios * n_levels * replicates;

  GridResult grid;
  grid.base_seed = base_seed;
  grid.replicates = replicates;
  grid.entries.resize(static_cast<std::size_t>(total));

  std::array<ScenarioSpec, 5> scenarios;
  std::array<GovernanceConfig, 5> configs;
  for (int s = 0; s < n_scenarios; ++s) scenarios[s] = scenario_preset_by_index(s);
  for (int l = 0; l < n_levels; ++l)
    configs[l] = config_for_level(kAllLevels[static_cast<std::size_t>(l)], params);

  auto run_one = [&](int flat) {
    const int s = flat / (n_levels * replicates);
    const int l = (flat / replicates) % n_levels;
    const int r = flat % replicates;
    const std::uint64_t seed = derive_run_seed(
        base_seed, static_cast<unsigned>(s), static_cast<unsigned>(l),
        static_cast<unsigned>(r));
    GridEntry entry;
    entry.record = run_simulation(scenarios[s], configs[l], seed, params);
    entry.record.replicate = r;
    entry.metrics =
        quantize_metrics(compute_metrics(entry.record, configs[l], params.nbv_weights));
    grid.entries[static_cast<std::size_t>(flat)] = std::move(entry);
  };

  if (parallel <= 1) {
    for (int i = 0; i < total; ++i) run_one(i);
  } else {
    std::vector<std::thread> workers;
    const int n_workers = std::min(parallel, total);
    workers.reserve(static_cast<std::size_t>(n_workers));
    for (int w = 0; w < n_workers; ++w)
      workers.emplace_back([&run_one, w, n_workers, total] {
        for (int i = w; i < total; i += n_workers) run_one(i);
      });
    for (auto& t : workers) t.join();
  }
  return grid;
}

// ── Aggregation ──────────────────────────────────────────────────────────────

struct LevelSummary {
  MaturityLevel level = MaturityLevel::L1;
  SampleSummary si, rir, etcr, dsr, nbv;
  double gcr = 0.0;
};

namespace detail {

inline std::vector<double> level_metric(const GridResult& grid, MaturityLevel l,
                                        double MetricsBundle::* member) {
  std::vector<double> xs;
  for (const auto& e : grid.entries)
    if (e.record.level == l) xs.push_back(e.metrics.*member);
  return xs;
}

}  // namespace detail

// Per-level summaries pooled across every scenario and replicate.
inline std::vector<LevelSummary> aggregate_levels(const GridResult& grid) {
  if (grid.entries.empty())
    throw std::invalid_argument("aggregate_levels: empty grid");
  std::vector<LevelSummary> out;
  for (MaturityLevel l : kAllLevels) {
    const auto si = detail::level_metric(grid, l, &MetricsBundle::si);
    if (si.empty()) continue;
    LevelSummary s;
    s.level = l;
    s.si = summarize(si);
    s.rir = summarize(detail::level_metric(grid, l, &MetricsBundle::rir));
    s.etcr = summarize(detail::level_metric(grid, l, &MetricsBundle::etcr));
    s.dsr = summarize(detail::level_metric(grid, l, &MetricsBundle::dsr));
    s.nbv = summarize(detail::level_metric(grid, l, &MetricsBundle::nbv));
    s.gcr = detail::level_metric(grid, l, &MetricsBundle::gcr).front();
    out.push_back(std::move(s));
  }
  if (out.empty()) throw std::invalid_argument("aggregate_levels: no level data");
  return out;
}

// ── Pairwise comparisons ─────────────────────────────────────────────────────

struct PairwiseComparison {
  MaturityLevel lo = MaturityLevel::L1;  // earlier level
  MaturityLevel hi = MaturityLevel::L2;  // later level
  double delta_nbv = 0.0;                // mean(hi) - mean(lo)
  TestResult test;                       // signs follow hi - lo
};

// All C(5,2) = 10 level pairs on per-run NBV. The first eight rows follow the
// published table's order; the remaining two pairs come after.
inline std::vector<PairwiseComparison> pairwise_nbv(const GridResult& grid) {
  using enum MaturityLevel;
  static constexpr std::array<std::pair<MaturityLevel, MaturityLevel>, 10> kPairs = {{
      {L1, L2}, {L1, L3}, {L1, L4}, {L1, L5}, {L2, L3},
      {L3, L4}, {L3, L5}, {L4, L5}, {L2, L4}, {L2, L5},
  }};

  std::array<std::vector<double>, 5> nbv_by_level;
  for (const auto& e : grid.entries)
    nbv_by_level[static_cast<std::size_t>(level_index(e.record.level))].push_back(
        e.metrics.nbv);

  int levels_present = 0;
  for (const auto& v : nbv_by_level)
    if (v.size() >= 2) ++levels_present;
  if (levels_present < 2)
    throw std::invalid_argument(
        "pairwise_nbv: nothing to compare (need two levels with n >= 2)");

  std::vector<PairwiseComparison> out;
  for (const auto& [lo, hi] : kPairs) {
    const auto& a = nbv_by_level[static_cast<std::size_t>(level_index(lo))];
    const auto& b = nbv_by_level[static_cast<std::size_t>(level_index(hi))];
    if (a.size() < 2 || b.size() < 2) continue;
    PairwiseComparison c;
    c.lo = lo;
    c.hi = hi;
    c.delta_nbv = sample_mean(b) - sample_mean(a);
    c.test = compare_samples(b, a);
    out.push_back(std::move(c));
  }
  return out;
}

// ── Scenario matrix ──────────────────────────────────────────────────────────

// 5x5 mean NBV, rows = scenarios, columns = levels.
struct ScenarioMatrix {
  std::array<std::array<double, 5>, 5> mean_nbv{};
};

inline ScenarioMatrix scenario_matrix(const GridResult& grid) {
  std::array<std::array<double, 5>, 5> sums{};
  std::array<std::array<int, 5>, 5> counts{};
  for (const auto& e : grid.entries) {
    int s = -1;
    for (std::size_t i = 0; i < kScenarioIds.size(); ++i)
      if (e.record.scenario_id == kScenarioIds[i]) s = static_cast<int>(i);
    if (s < 0)
      throw std::invalid_argument("scenario_matrix: unknown scenario id '" +
                                  e.record.scenario_id + "'");
    const int l = level_index(e.record.level);
    sums[static_cast<std::size_t>(s)][static_cast<std::size_t>(l)] += e.metrics.nbv;
    ++counts[static_cast<std::size_t>(s)][static_cast<std::size_t>(l)];
  }
  ScenarioMatrix m;
  for (std::size_t s = 0; s < 5; ++s)
    for (std::size_t l = 0; l < 5; ++l) {
      if (counts[s][l] == 0)
        throw std::invalid_argument("scenario_matrix: missing cell (" +
                                    std::string(kScenarioIds[s]) + ", L" +
                                    std::to_string(l + 1) + ")");
      m.mean_nbv[s][l] = sums[s][l] / counts[s][l];
    }
  return m;
}

}  // namespace govsim
