#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "govsim/governance.hpp"
#include "govsim/model.hpp"
#include "govsim/params.hpp"
#include "govsim/rng.hpp"
#include "govsim/scenario.hpp"
#include "govsim/sprawl.hpp"

namespace govsim {

// ── Fleet ────────────────────────────────────────────────────────────────────

// All agents ever created in a run plus a live-routing index. Retired agents
// stay in `agents` (they keep the Sprawl Index denominator honest) but leave
// the routing structures.
struct Fleet {
  std::vector<Agent> agents;
  std::array<std::vector<AgentId>, kCapabilityCount> by_capability;
  std::vector<AgentId> live_ids;

  Agent& agent(AgentId id) { return agents[id]; }
  const Agent& agent(AgentId id) const { return agents[id]; }
  int live_count() const noexcept { return static_cast<int>(live_ids.size()); }

  void add_live(AgentId id) {
    live_ids.push_back(id);
    by_capability[static_cast<std::size_t>(agents[id].capability.index())]
        .push_back(id);
  }

  void retire(AgentId id) {
    Agent& a = agents[id];
    if (a.is_retired) return;
    a.is_retired = true;
    auto drop = [id](std::vector<AgentId>& v) {
      v.erase(std::find(v.begin(), v.end(), id));
    };
    drop(live_ids);
    drop(by_capability[static_cast<std::size_t>(a.capability.index())]);
  }
};

inline int baseline_permissions_for(Capability cap) noexcept {
  return 3 + cap.slot() % 3;
}

// Chains originate from orchestrator capabilities: one coordination slot per
// ten capability types. Structural, so every fleet has delegators.
inline bool is_delegator_capability(Capability cap) noexcept {
  return cap.index() % 10 == 0;
}

namespace detail {

inline double effective_shadow_probability(const ScenarioSpec& scenario,
                                            const GovernanceConfig& config,
                                            const SimParams& params) {
  double p = config.shadow_probability;
  // Deliberate circumvention: adversarial deployments bypass registries and
  // are only stopped by actual policy enforcement.
  if (scenario.adversarial())
    p = std::max(p, params.adversarial_shadow_floor *
                        (1.0 - config.violation_block_rate));
  if (config.has(GovernanceControl::PredictiveSprawl))
    p *= params.predictive_shadow_factor;
  return p;
}

inline double effective_unsafe_incident_rate(const ScenarioSpec& scenario,
                                             const GovernanceConfig& config,
                                             const SimParams& params) {
  double p = config.unsafe_hop_incident_rate;
  if (scenario.adversarial())
    p = std::max(p, params.adversarial_unsafe_escalation *
                        (1.0 - config.violation_block_rate));
  return p;
}

}  // namespace detail

// Creates the run's initial fleet: capabilities round-robin over the 30
// types, remainder agents drawn uniformly; under PredictiveSprawl the
// remainder goes to the least-staffed capability instead.
inline Fleet generate_fleet(const ScenarioSpec& scenario,
                            const GovernanceConfig& config,
                            const SimParams& params, RngState& rng) {
  if (scenario.agents < 1)
    throw std::invalid_argument("generate_fleet: scenario must have >= 1 agent");

  const double shadow_p = detail::effective_shadow_probability(scenario, config, params);
  const bool predictive = config.has(GovernanceControl::PredictiveSprawl);
  const int round_robin = kCapabilityCount * (scenario.agents / kCapabilityCount);

  Fleet fleet;
  fleet.agents.reserve(static_cast<std::size_t>(scenario.agents) * 2);
  std::array<int, kCapabilityCount> staffing{};

  for (int i = 0; i < scenario.agents; ++i) {
    Capability cap;
    if (i < round_robin) {
      cap = Capability(i % kCapabilityCount);
    } else if (predictive) {
      // Planned placement: fill the least-staffed capability.
      int best = 0;
      for (int c = 1; c < kCapabilityCount; ++c)
        if (staffing[static_cast<std::size_t>(c)] <
            staffing[static_cast<std::size_t>(best)])
          best = c;
      cap = Capability(best);
    } else {
      cap = Capability(static_cast<int>(rng.next_index(kCapabilityCount)));
    }
    ++staffing[static_cast<std::size_t>(cap.index())];

    Agent a;
    a.id = static_cast<AgentId>(i);
    a.capability = cap;
    a.is_shadow = rng.next_bernoulli(shadow_p);
    a.registered = !a.is_shadow;
    a.is_delegator = is_delegator_capability(cap);
    a.baseline_permissions = baseline_permissions_for(cap);
    a.granted_permissions = a.baseline_permissions;
    fleet.agents.push_back(a);
    fleet.add_live(a.id);
  }
  return fleet;
}

// ── Run record ───────────────────────────────────────────────────────────────

// Raw counters from one simulation run. Pattern counts are end-of-run,
// per-agent, unremediated; `agents_flagged` is the union that feeds SI.
struct RunRecord {
  std::string scenario_id;
  MaturityLevel level = MaturityLevel::L1;
  int replicate = 0;
  std::uint64_t seed = 0;

  int agents_total = 0;
  int agents_shadow = 0;
  int agents_orphaned = 0;
  int agents_duplicate = 0;
  int agents_creeped = 0;
  int agents_unsafe_delegators = 0;
  int agents_flagged = 0;

  int tasks_total = 0;
  int tasks_completed = 0;
  int tasks_effective = 0;
  long long actions_total = 0;
  int incidents_total = 0;
  int hops_total = 0;
  int hops_safe = 0;

  // Auxiliary chain-level view of delegation safety (not part of NBV).
  int chains_total = 0;
  int chains_safe = 0;

  int creeped_permissions = 0;  // sum over agents, for the cost model
};

namespace detail {

inline void check_record_invariants(const RunRecord& r) {
  auto fail = [](const char* what) {
    throw std::logic_error(std::string("run invariant violated: ") + what);
  };
  if (!(r.tasks_effective <= r.tasks_completed && r.tasks_completed <= r.tasks_total))
    fail("tasks_effective <= tasks_completed <= tasks_total");
  if (r.hops_safe > r.hops_total) fail("hops_safe <= hops_total");
  if (r.incidents_total > r.actions_total) fail("incidents_total <= actions_total");
  if (r.actions_total < r.tasks_total) fail("actions_total >= tasks_total");
  const long long pattern_sum = static_cast<long long>(r.agents_shadow) +
                                r.agents_orphaned + r.agents_duplicate +
                                r.agents_creeped + r.agents_unsafe_delegators;
  if (pattern_sum < r.agents_flagged) fail("pattern counts cover the flagged union");
}

}  // namespace detail

// Executes one deterministic simulation run. The full loop:
//   1. fleet generation
//   2. per task: difficulty, routing, resolution, violation attempt,
//      optional delegation chain with per-hop safety draws
//   3. lifecycle ticks every `tick_stride` tasks: orphan/creep accumulation,
//      sprawl scans at L4+, the S5 retirement/refresh wave at mid-run
//   4. end-of-run pattern detection frozen into the RunRecord
inline RunRecord run_simulation(const ScenarioSpec& scenario,
                                const GovernanceConfig& config,
                                std::uint64_t seed,
                                const SimParams& params = SimParams::defaults()) {
  if (scenario.tasks < 1)
    throw std::invalid_argument("run_simulation: scenario must have >= 1 task");

  RngState rng(seed);
  Fleet fleet = generate_fleet(scenario, config, params, rng);

  RunRecord rec;
  rec.scenario_id = scenario.id;
  rec.level = config.level;
  rec.seed = seed;
  rec.tasks_total = scenario.tasks;

  const double unsafe_incident_rate =
      detail::effective_unsafe_incident_rate(scenario, config, params);
  const bool policy_active = config.has(GovernanceControl::PolicyEnforcement) ||
                             config.has(GovernanceControl::AutoPolicy);
  const bool hitl_active = config.has(GovernanceControl::HITL);
  const bool iam_active = config.has(GovernanceControl::IAM);
  const bool scans_active = config.has(GovernanceControl::SprawlDetection) &&
                            config.scan_interval > 0;
  const int total_ticks = scenario.tasks / params.tick_stride;
  const int wave_tick = scenario.optimization_wave ? std::max(1, total_ticks / 2) : -1;

  std::vector<Task> tasks(static_cast<std::size_t>(scenario.tasks));
  std::uint32_t next_chain = 0;

  auto invalidate = [](Task& t) {
    if (t.outcome == TaskOutcome::Completed) t.outcome = TaskOutcome::Invalidated;
  };

  // Violation attempt tied to one action by one agent. Unsafe hops raise
  // their own incidents, so they never reach this path.
  auto attempt_violation = [&](Task& task, Agent& actor) {
    double rate = config.base_violation_rate * scenario.adversarial_multiplier *
                  (1.0 + params.creep_violation_factor * actor.creeped_permissions());
    if (!rng.next_bernoulli(std::min(rate, 1.0))) return;
    if (policy_active && rng.next_bernoulli(config.violation_block_rate)) return;
    if (hitl_active && task.difficulty == TaskDifficulty::Critical &&
        rng.next_bernoulli(params.hitl_block_rate))
      return;
    ++rec.incidents_total;
    if (rng.next_bernoulli(params.violation_creep_grant)) ++actor.granted_permissions;
    if (rng.next_bernoulli(params.violation_invalidate)) invalidate(task);
  };

  auto run_scan = [&](int /*tick*/) {
    rec.actions_total += static_cast<long long>(
        std::ceil(fleet.live_count() / params.scan_cost_divisor));
    const bool lifecycle = config.has(GovernanceControl::LifecycleManagement);
    // Per-agent remediation: retire orphans, register shadows. Permission
    // grants and past unsafe delegation are not undone by a scan.
    for (AgentId id = 0; id < fleet.agents.size(); ++id) {
      Agent& a = fleet.agents[id];
      if (!a.live()) continue;
      if (lifecycle && a.is_orphaned && rng.next_bernoulli(config.scan_efficacy)) {
        fleet.retire(id);
        continue;
      }
      if (!a.registered && rng.next_bernoulli(config.scan_efficacy)) {
        a.registered = true;
        a.is_shadow = false;
      }
    }
    // Duplicate containment: shrink over-planned capabilities, newest first.
    const int plan = staffing_plan_per_capability(static_cast<int>(fleet.agents.size()));
    for (int c = 0; c < kCapabilityCount; ++c) {
      std::vector<AgentId> holders;
      for (AgentId id : fleet.by_capability[static_cast<std::size_t>(c)])
        if (fleet.agents[id].registered) holders.push_back(id);
      if (static_cast<int>(holders.size()) <= plan) continue;
      std::sort(holders.begin(), holders.end(), std::greater<>());
      int excess = static_cast<int>(holders.size()) - plan;
      for (AgentId id : holders) {
        if (excess == 0) break;
        if (rng.next_bernoulli(config.scan_efficacy)) {
          fleet.retire(id);
          --excess;
        }
      }
    }
  };

  const double shadow_p =
      detail::effective_shadow_probability(scenario, config, params);

  auto run_wave = [&] {
    // Forced portfolio refresh: a slice of the live fleet is retired and
    // redeployed with reset permissions. The replacement is only as clean as
    // the organization's deployment discipline.
    const std::vector<AgentId> snapshot = fleet.live_ids;
    for (AgentId id : snapshot) {
      if (!rng.next_bernoulli(params.wave_retire_rate)) continue;
      const Capability cap = fleet.agents[id].capability;
      fleet.retire(id);
      Agent fresh;
      fresh.id = static_cast<AgentId>(fleet.agents.size());
      fresh.capability = cap;
      fresh.is_shadow = rng.next_bernoulli(shadow_p);
      fresh.registered = !fresh.is_shadow;
      fresh.is_delegator = is_delegator_capability(cap);
      fresh.baseline_permissions = baseline_permissions_for(cap);
      fresh.granted_permissions = fresh.baseline_permissions;
      fleet.agents.push_back(fresh);
      fleet.add_live(fresh.id);
    }
  };

  auto lifecycle_tick = [&](int tick) {
    const double orphan_hazard = config.orphan_rate * params.orphan_tick_scale;
    for (AgentId id = 0; id < fleet.agents.size(); ++id) {
      Agent& a = fleet.agents[id];
      if (!a.live()) continue;
      if (!a.is_orphaned && rng.next_bernoulli(orphan_hazard)) a.is_orphaned = true;
      if (!iam_active && rng.next_bernoulli(config.creep_rate))
        ++a.granted_permissions;
    }
    if (scans_active && tick % config.scan_interval == 0) run_scan(tick);
    if (tick == wave_tick) run_wave();
  };

  for (int t = 0; t < scenario.tasks; ++t) {
    Task& task = tasks[static_cast<std::size_t>(t)];
    task.id = static_cast<std::uint32_t>(t);
    task.difficulty = sample_task_difficulty(rng.next_unit());
    task.required_capability =
        Capability(static_cast<int>(rng.next_index(kCapabilityCount)));
    ++rec.actions_total;

    const auto& holders =
        fleet.by_capability[static_cast<std::size_t>(task.required_capability.index())];
    if (holders.empty()) {
      task.outcome = TaskOutcome::Unassigned;
    } else {
      Agent& agent = fleet.agents[holders[rng.next_index(holders.size())]];

      double p = params.base_success[static_cast<std::size_t>(task.difficulty)] +
                 config.success_bonus -
                 (!agent.registered ? params.shadow_penalty : 0.0) -
                 (agent.is_orphaned ? params.orphan_penalty : 0.0) -
                 params.creep_penalty * agent.creeped_permissions();
      if (hitl_active && task.difficulty == TaskDifficulty::Critical)
        p += params.hitl_success_bonus;
      p = std::clamp(p, 0.0, 1.0);
      if (rng.next_bernoulli(p)) {
        task.outcome = TaskOutcome::Completed;
        ++rec.tasks_completed;
      } else {
        task.outcome = TaskOutcome::Failed;
      }

      attempt_violation(task, agent);

      if (agent.is_delegator && fleet.live_count() >= 2) {
        const double spawn =
            params.delegation_spawn[static_cast<std::size_t>(task.difficulty)] *
            scenario.delegation_boost;
        if (rng.next_bernoulli(std::min(spawn, 1.0))) {
          ++next_chain;
          ++rec.chains_total;
          int depth = 1;
          while (depth < params.max_chain_depth &&
                 rng.next_bernoulli(params.delegation_extend))
            ++depth;
          bool chain_clean = true;
          for (int hop = 0; hop < depth; ++hop) {
            // Fan-out: the assigned agent originates every hop, handing the
            // sub-task to some other live agent. The receiver draw is part of
            // the run's frozen stream even though only the originator carries
            // delegation accountability.
            std::size_t pick = rng.next_index(fleet.live_ids.size() - 1);
            const auto root_pos = static_cast<std::size_t>(
                std::find(fleet.live_ids.begin(), fleet.live_ids.end(), agent.id) -
                fleet.live_ids.begin());
            if (pick >= root_pos) ++pick;
            ++rec.actions_total;
            ++rec.hops_total;
            if (rng.next_bernoulli(config.hop_safety)) {
              ++rec.hops_safe;
              attempt_violation(task, agent);
            } else {
              chain_clean = false;
              ++agent.unsafe_hops_originated;
              if (rng.next_bernoulli(unsafe_incident_rate)) ++rec.incidents_total;
              if (rng.next_bernoulli(params.unsafe_hop_invalidate)) invalidate(task);
            }
          }
          if (chain_clean) ++rec.chains_safe;
        }
      }
    }

    if (params.tick_stride > 0 && (t + 1) % params.tick_stride == 0)
      lifecycle_tick((t + 1) / params.tick_stride);
  }

  for (const Task& task : tasks)
    if (task.outcome == TaskOutcome::Completed) ++rec.tasks_effective;

  const PatternFlags flags = detect_patterns(fleet.agents);
  rec.agents_total = static_cast<int>(fleet.agents.size());
  rec.agents_duplicate = flags.count(SprawlPattern::FunctionalDuplication);
  rec.agents_shadow = flags.count(SprawlPattern::ShadowAgent);
  rec.agents_orphaned = flags.count(SprawlPattern::OrphanedAgent);
  rec.agents_creeped = flags.count(SprawlPattern::PermissionCreep);
  rec.agents_unsafe_delegators = flags.count(SprawlPattern::UnmonitoredDelegation);
  rec.agents_flagged = flags.flagged_union;
  for (const Agent& a : fleet.agents)
    rec.creeped_permissions += std::max(0, a.creeped_permissions());

  detail::check_record_invariants(rec);
  return rec;
}

}  // namespace govsim
