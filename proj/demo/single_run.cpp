// Minimal library usage: one simulation run per level and its derived metrics.

#include <iomanip>
#include <iostream>

#include "govsim/experiments.hpp"

int main() {
  using namespace govsim;

  const SimParams params = SimParams::defaults();
  const ScenarioSpec scenario = scenario_preset("S1");

  std::cout << std::fixed << std::setprecision(3);
  for (MaturityLevel level : kAllLevels) {
    const GovernanceConfig config = config_for_level(level, params);
    const std::uint64_t seed = derive_run_seed(42, 0, level_index(level), 0);
    const RunRecord record = run_simulation(scenario, config, seed, params);
    const MetricsBundle m = compute_metrics(record, config);

    std::cout << level_id(level) << " " << std::setw(9) << level_name(level)
              << "  si=" << m.si << "  rir=" << std::setw(6) << m.rir
              << "  etcr=" << m.etcr << "  dsr=" << m.dsr
              << "  chain_safe=" << chain_safety_rate(record)
              << "  nbv=" << m.nbv << "\n";
  }
  return 0;
}
