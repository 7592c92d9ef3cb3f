#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "govsim/model.hpp"
#include "govsim/params.hpp"

namespace govsim {

// Per-agent pattern flags, indexed by agent id, plus per-pattern totals and
// the union count that feeds the Sprawl Index.
struct PatternFlags {
  std::vector<std::uint8_t> flags;  // bitmask of SprawlPattern per agent
  std::array<int, 5> pattern_counts{};
  int flagged_union = 0;

  static constexpr std::uint8_t bit(SprawlPattern p) noexcept {
    return static_cast<std::uint8_t>(1u << static_cast<int>(p));
  }
  bool has(AgentId id, SprawlPattern p) const {
    return id < flags.size() && (flags[id] & bit(p));
  }
  int count(SprawlPattern p) const noexcept {
    return pattern_counts[static_cast<std::size_t>(p)];
  }
};

// The staffing plan allows ceil(agents / 30) live registered holders per
// capability; anything above that is duplication.
inline int staffing_plan_per_capability(int total_agents) noexcept {
  return (total_agents + kCapabilityCount - 1) / kCapabilityCount;
}

// Applies the five taxonomy rules to end-of-run fleet state. `agents` spans
// every agent ever created (retired included); ids must equal vector indices.
//
//   SP-01  live registered agents sharing a capability beyond the plan
//   SP-02  live unregistered agents
//   SP-03  live orphaned agents
//   SP-04  agents granted more permissions than their baseline
//   SP-05  agents with unremediated unsafe-hop originations
inline PatternFlags detect_patterns(const std::vector<Agent>& agents) {
  PatternFlags out;
  out.flags.assign(agents.size(), 0);

  const int plan = staffing_plan_per_capability(static_cast<int>(agents.size()));
  std::array<int, kCapabilityCount> live_registered{};
  for (const Agent& a : agents)
    if (a.live() && a.registered) ++live_registered[static_cast<std::size_t>(a.capability.index())];

  for (const Agent& a : agents) {
    std::uint8_t f = 0;
    if (a.live() && a.registered &&
        live_registered[static_cast<std::size_t>(a.capability.index())] > plan)
      f |= PatternFlags::bit(SprawlPattern::FunctionalDuplication);
    if (a.live() && !a.registered) f |= PatternFlags::bit(SprawlPattern::ShadowAgent);
    if (a.live() && a.is_orphaned) f |= PatternFlags::bit(SprawlPattern::OrphanedAgent);
    if (a.granted_permissions > a.baseline_permissions)
      f |= PatternFlags::bit(SprawlPattern::PermissionCreep);
    if (a.unsafe_hops_originated > 0)
      f |= PatternFlags::bit(SprawlPattern::UnmonitoredDelegation);

    out.flags[a.id] = f;
    if (f) ++out.flagged_union;
    for (SprawlPattern p : kAllSprawlPatterns)
      if (f & PatternFlags::bit(p)) ++out.pattern_counts[static_cast<std::size_t>(p)];
  }
  return out;
}

// SI = |agents carrying at least one flag| / total agents ever created.
// Each agent counts once no matter how many patterns it exhibits.
inline double sprawl_index(const PatternFlags& flags, int total_agents) {
  if (total_agents < 1)
    throw std::invalid_argument("sprawl_index requires at least one agent");
  return static_cast<double>(flags.flagged_union) /
         static_cast<double>(total_agents);
}

// ── Cost model ───────────────────────────────────────────────────────────────

struct SprawlCostBreakdown {
  double redundancy = 0.0;
  double security = 0.0;
  double compliance = 0.0;
  double operational = 0.0;
  double opportunity = 0.0;
  double total = 0.0;
};

struct SprawlCounts {
  int duplicate_agents = 0;
  int shadow_agents = 0;
  int creeped_permissions = 0;
  int incidents = 0;
  int orphaned_agents = 0;
  int lost_tasks = 0;  // tasks_total - tasks_effective
};

// Linear unit-cost model over the end-of-run counters.
inline SprawlCostBreakdown sprawl_cost(const SprawlCounts& counts,
                                       const UnitCosts& rates) {
  const auto non_negative = [](double v, const char* what) {
    if (v < 0.0)
      throw std::invalid_argument(std::string("sprawl_cost: negative ") + what);
  };
  non_negative(counts.duplicate_agents, "count");
  non_negative(counts.shadow_agents, "count");
  non_negative(counts.creeped_permissions, "count");
  non_negative(counts.incidents, "count");
  non_negative(counts.orphaned_agents, "count");
  non_negative(counts.lost_tasks, "count");
  non_negative(rates.redundancy_per_duplicate, "rate");
  non_negative(rates.security_per_shadow, "rate");
  non_negative(rates.security_per_creeped_permission, "rate");
  non_negative(rates.compliance_per_incident, "rate");
  non_negative(rates.operational_per_orphan, "rate");
  non_negative(rates.opportunity_per_lost_task, "rate");

  SprawlCostBreakdown c;
  c.redundancy = rates.redundancy_per_duplicate * counts.duplicate_agents;
  c.security = rates.security_per_shadow * counts.shadow_agents +
               rates.security_per_creeped_permission * counts.creeped_permissions;
  c.compliance = rates.compliance_per_incident * counts.incidents;
  c.operational = rates.operational_per_orphan * counts.orphaned_agents;
  c.opportunity = rates.opportunity_per_lost_task * counts.lost_tasks;
  c.total = c.redundancy + c.security + c.compliance + c.operational + c.opportunity;
  return c;
}

}  // namespace govsim
