#pragma once

#include <algorithm>
#include <stdexcept>

#include "govsim/governance.hpp"
#include "govsim/sim.hpp"

namespace govsim {

// The five outcome metrics plus composite NBV for one run.
struct MetricsBundle {
  double si = 0.0;    // sprawl index, [0,1]
  double rir = 0.0;   // risk incidents per 1000 actions
  double etcr = 0.0;  // effective task completion rate, [0,1]
  double dsr = 0.0;   // delegation safety rate, [0,1]
  double gcr = 0.0;   // governance cost ratio, [0,1]
  double nbv = 0.0;
};

// NBV = 0.30*ETCR + 0.20*(1-SI) + 0.20*(1-RIR/100) + 0.15*DSR + 0.15*(1-GCR).
// The RIR term clamps at zero once RIR exceeds 100 per 1K actions.
inline double nbv(const MetricsBundle& m, const NbvWeights& w = NbvWeights{}) {
  const double rir_term = std::max(0.0, 1.0 - m.rir / 100.0);
  return w.etcr * m.etcr + w.si * (1.0 - m.si) + w.rir * rir_term +
         w.dsr * m.dsr + w.gcr * (1.0 - m.gcr);
}

inline MetricsBundle compute_metrics(const RunRecord& record,
                                     const GovernanceConfig& config,
                                     const NbvWeights& weights = NbvWeights{}) {
  if (record.tasks_total < 1)
    throw std::invalid_argument("compute_metrics: run has no tasks");
  if (record.actions_total < 1)
    throw std::invalid_argument("compute_metrics: run has no actions");

  MetricsBundle m;
  m.si = static_cast<double>(record.agents_flagged) / record.agents_total;
  m.rir = 1000.0 * record.incidents_total / static_cast<double>(record.actions_total);
  m.etcr = static_cast<double>(record.tasks_effective) / record.tasks_total;
  // No delegation hops means no unsafe delegation occurred.
  m.dsr = record.hops_total == 0
              ? 1.0
              : static_cast<double>(record.hops_safe) / record.hops_total;
  m.gcr = config.gcr;
  m.nbv = nbv(m, weights);
  return m;
}

// Chain-level safety, reported alongside DSR but excluded from NBV.
inline double chain_safety_rate(const RunRecord& record) {
  return record.chains_total == 0
             ? 1.0
             : static_cast<double>(record.chains_safe) / record.chains_total;
}

}  // namespace govsim
