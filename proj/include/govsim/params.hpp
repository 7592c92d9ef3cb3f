#pragma once

#include <array>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "govsim/model.hpp"

namespace govsim {

// Per-level behavioral parameters. The level endpoints for shadow/orphan and
// the governance cost ratios are fixed; everything else is a calibrated
// default that lives in the shipped parameter file.
struct LevelParams {
  double shadow_probability = 0.0;   // per-agent at fleet generation
  double orphan_rate = 0.0;          // propensity; per-tick hazard = rate * orphan_tick_scale
  double creep_rate = 0.0;           // per-agent permission creep per tick (idle when IAM active)
  double base_violation_rate = 0.0;  // violation attempts per action
  double violation_block_rate = 0.0; // policy enforcement block probability
  double hop_safety = 1.0;           // per-hop probability a hop is safe
  double unsafe_hop_incident_rate = 1.0; // unsafe hop recorded as incident
  int scan_interval = 0;             // ticks between sprawl scans; 0 = never
  double scan_efficacy = 0.0;        // per-agent remediation probability per scan
  double success_bonus = 0.0;        // additive task-success modifier
  double gcr = 0.0;                  // governance cost ratio
};

// Unit-cost rates for the sprawl cost breakdown; abstract cost units.
struct UnitCosts {
  double redundancy_per_duplicate = 1.0;
  double security_per_shadow = 1.0;
  double security_per_creeped_permission = 1.0;
  double compliance_per_incident = 1.0;
  double operational_per_orphan = 1.0;
  double opportunity_per_lost_task = 1.0;
};

struct NbvWeights {
  double etcr = 0.30;
  double si = 0.20;
  double rir = 0.20;
  double dsr = 0.15;
  double gcr = 0.15;
};

// Every tunable the simulation consumes, in one value type. Defaults are the
// calibrated set shipped in params/default.cfg; a config file overrides
// individual keys.
struct SimParams {
  std::array<LevelParams, 5> levels{};

  // Task resolution
  std::array<double, 4> base_success = {0.97, 0.90, 0.80, 0.65};
  double shadow_penalty = 0.22;
  double orphan_penalty = 0.65;
  double creep_penalty = 0.035;      // per creeped permission
  double hitl_success_bonus = 0.18;  // critical tasks when HITL active
  double hitl_block_rate = 0.50;     // extra violation block on critical tasks

  // Delegation
  std::array<double, 4> delegation_spawn = {0.40, 0.55, 0.75, 0.90};
  double delegation_extend = 0.45;   // geometric continuation probability
  int max_chain_depth = 4;
  double unsafe_hop_invalidate = 0.15;

  // Violations
  double violation_invalidate = 0.15;
  double violation_creep_grant = 0.01;
  double creep_violation_factor = 0.15;  // rate multiplier per creeped permission

  // Lifecycle
  int tick_stride = 50;              // tasks per lifecycle tick
  double orphan_tick_scale = 0.024;  // per-tick hazard = orphan_rate * scale
  double scan_cost_divisor = 10.0;   // each scan costs ceil(live / divisor) actions
  double predictive_shadow_factor = 0.50;  // shadow multiplier under PredictiveSprawl

  // Adversarial stress (scenarios with adversarial_multiplier > 1)
  double adversarial_shadow_floor = 0.36;
  double adversarial_unsafe_escalation = 0.82;

  // Optimization wave (scenarios with optimization_wave set)
  double wave_retire_rate = 0.15;

  NbvWeights nbv_weights{};
  UnitCosts unit_costs{};

  static SimParams defaults();
  const LevelParams& level(MaturityLevel l) const {
    return levels[static_cast<std::size_t>(level_index(l))];
  }
};

inline SimParams SimParams::defaults() {
  SimParams p;
  //                       shadow orphan creep   viol    block hop_s uh_inc scan eff   bonus   gcr
  p.levels[0] = LevelParams{0.35, 0.15, 0.0020, 0.0346, 0.00, 0.600, 0.89, 0, 0.00, -0.095, 0.020};
  p.levels[1] = LevelParams{0.22, 0.10, 0.0000, 0.0340, 0.00, 0.600, 0.04, 0, 0.00, -0.090, 0.060};
  p.levels[2] = LevelParams{0.10, 0.05, 0.0000, 0.0324, 0.60, 0.902, 0.05, 0, 0.00, 0.000, 0.120};
  p.levels[3] = LevelParams{0.04, 0.02, 0.0000, 0.0324, 0.905, 0.955, 0.05, 2, 0.75, 0.004, 0.180};
  p.levels[4] = LevelParams{0.02, 0.01, 0.0000, 0.0250, 0.92, 0.988, 0.05, 3, 0.35, 0.026, 0.160};
  return p;
}

// ── Key/value parameter file ─────────────────────────────────────────────────
//
// Format: one `key = value` per line, `#` comments, blank lines ignored.
// Unknown keys are errors so typos cannot silently fall back to defaults.

namespace detail {

struct ParamBinding {
  std::string key;
  std::function<double(const SimParams&)> get;
  std::function<void(SimParams&, double)> set;
};

inline std::vector<ParamBinding> param_bindings() {
  std::vector<ParamBinding> b;
  auto add = [&b](std::string key, auto getter, auto setter) {
    b.push_back({std::move(key), getter, setter});
  };

  static constexpr std::array<const char*, 5> level_ids = {"L1", "L2", "L3",
                                                           "L4", "L5"};
  for (std::size_t i = 0; i < 5; ++i) {
    const std::string prefix = std::string("level.") + level_ids[i] + ".";
    add(prefix + "shadow_probability",
        [i](const SimParams& p) { return p.levels[i].shadow_probability; },
        [i](SimParams& p, double v) { p.levels[i].shadow_probability = v; });
    add(prefix + "orphan_rate",
        [i](const SimParams& p) { return p.levels[i].orphan_rate; },
        [i](SimParams& p, double v) { p.levels[i].orphan_rate = v; });
    add(prefix + "creep_rate",
        [i](const SimParams& p) { return p.levels[i].creep_rate; },
        [i](SimParams& p, double v) { p.levels[i].creep_rate = v; });
    add(prefix + "base_violation_rate",
        [i](const SimParams& p) { return p.levels[i].base_violation_rate; },
        [i](SimParams& p, double v) { p.levels[i].base_violation_rate = v; });
    add(prefix + "violation_block_rate",
        [i](const SimParams& p) { return p.levels[i].violation_block_rate; },
        [i](SimParams& p, double v) { p.levels[i].violation_block_rate = v; });
    add(prefix + "hop_safety",
        [i](const SimParams& p) { return p.levels[i].hop_safety; },
        [i](SimParams& p, double v) { p.levels[i].hop_safety = v; });
    add(prefix + "unsafe_hop_incident_rate",
        [i](const SimParams& p) { return p.levels[i].unsafe_hop_incident_rate; },
        [i](SimParams& p, double v) { p.levels[i].unsafe_hop_incident_rate = v; });
    add(prefix + "scan_interval",
        [i](const SimParams& p) { return static_cast<double>(p.levels[i].scan_interval); },
        [i](SimParams& p, double v) { p.levels[i].scan_interval = static_cast<int>(v); });
    add(prefix + "scan_efficacy",
        [i](const SimParams& p) { return p.levels[i].scan_efficacy; },
        [i](SimParams& p, double v) { p.levels[i].scan_efficacy = v; });
    add(prefix + "success_bonus",
        [i](const SimParams& p) { return p.levels[i].success_bonus; },
        [i](SimParams& p, double v) { p.levels[i].success_bonus = v; });
    add(prefix + "gcr",
        [i](const SimParams& p) { return p.levels[i].gcr; },
        [i](SimParams& p, double v) { p.levels[i].gcr = v; });
  }

  static constexpr std::array<const char*, 4> difficulty_ids = {
      "simple", "moderate", "complex", "critical"};
  for (std::size_t i = 0; i < 4; ++i) {
    add(std::string("success.base.") + difficulty_ids[i],
        [i](const SimParams& p) { return p.base_success[i]; },
        [i](SimParams& p, double v) { p.base_success[i] = v; });
    add(std::string("delegation.spawn.") + difficulty_ids[i],
        [i](const SimParams& p) { return p.delegation_spawn[i]; },
        [i](SimParams& p, double v) { p.delegation_spawn[i] = v; });
  }

  auto scalar = [&add](std::string key, double SimParams::* member) {
    add(std::move(key),
        [member](const SimParams& p) { return p.*member; },
        [member](SimParams& p, double v) { p.*member = v; });
  };
  scalar("success.shadow_penalty", &SimParams::shadow_penalty);
  scalar("success.orphan_penalty", &SimParams::orphan_penalty);
  scalar("success.creep_penalty", &SimParams::creep_penalty);
  scalar("success.hitl_bonus", &SimParams::hitl_success_bonus);
  scalar("violation.hitl_block_rate", &SimParams::hitl_block_rate);
  scalar("delegation.extend", &SimParams::delegation_extend);
  scalar("delegation.unsafe_hop_invalidate", &SimParams::unsafe_hop_invalidate);
  scalar("violation.invalidate", &SimParams::violation_invalidate);
  scalar("violation.creep_grant", &SimParams::violation_creep_grant);
  scalar("violation.creep_factor", &SimParams::creep_violation_factor);
  scalar("lifecycle.orphan_tick_scale", &SimParams::orphan_tick_scale);
  scalar("lifecycle.scan_cost_divisor", &SimParams::scan_cost_divisor);
  scalar("fleet.predictive_shadow_factor", &SimParams::predictive_shadow_factor);
  scalar("adversarial.shadow_floor", &SimParams::adversarial_shadow_floor);
  scalar("adversarial.unsafe_escalation", &SimParams::adversarial_unsafe_escalation);
  scalar("wave.retire_rate", &SimParams::wave_retire_rate);

  add("delegation.max_chain_depth",
      [](const SimParams& p) { return static_cast<double>(p.max_chain_depth); },
      [](SimParams& p, double v) { p.max_chain_depth = static_cast<int>(v); });
  add("lifecycle.tick_stride",
      [](const SimParams& p) { return static_cast<double>(p.tick_stride); },
      [](SimParams& p, double v) { p.tick_stride = static_cast<int>(v); });

  add("nbv.weight_etcr",
      [](const SimParams& p) { return p.nbv_weights.etcr; },
      [](SimParams& p, double v) { p.nbv_weights.etcr = v; });
  add("nbv.weight_si",
      [](const SimParams& p) { return p.nbv_weights.si; },
      [](SimParams& p, double v) { p.nbv_weights.si = v; });
  add("nbv.weight_rir",
      [](const SimParams& p) { return p.nbv_weights.rir; },
      [](SimParams& p, double v) { p.nbv_weights.rir = v; });
  add("nbv.weight_dsr",
      [](const SimParams& p) { return p.nbv_weights.dsr; },
      [](SimParams& p, double v) { p.nbv_weights.dsr = v; });
  add("nbv.weight_gcr",
      [](const SimParams& p) { return p.nbv_weights.gcr; },
      [](SimParams& p, double v) { p.nbv_weights.gcr = v; });

  add("cost.redundancy_per_duplicate",
      [](const SimParams& p) { return p.unit_costs.redundancy_per_duplicate; },
      [](SimParams& p, double v) { p.unit_costs.redundancy_per_duplicate = v; });
  add("cost.security_per_shadow",
      [](const SimParams& p) { return p.unit_costs.security_per_shadow; },
      [](SimParams& p, double v) { p.unit_costs.security_per_shadow = v; });
  add("cost.security_per_creeped_permission",
      [](const SimParams& p) { return p.unit_costs.security_per_creeped_permission; },
      [](SimParams& p, double v) { p.unit_costs.security_per_creeped_permission = v; });
  add("cost.compliance_per_incident",
      [](const SimParams& p) { return p.unit_costs.compliance_per_incident; },
      [](SimParams& p, double v) { p.unit_costs.compliance_per_incident = v; });
  add("cost.operational_per_orphan",
      [](const SimParams& p) { return p.unit_costs.operational_per_orphan; },
      [](SimParams& p, double v) { p.unit_costs.operational_per_orphan = v; });
  add("cost.opportunity_per_lost_task",
      [](const SimParams& p) { return p.unit_costs.opportunity_per_lost_task; },
      [](SimParams& p, double v) { p.unit_costs.opportunity_per_lost_task = v; });

  return b;
}

inline std::string format_param_value(double v) {
  // Canonical rendering: up to 10 significant digits, trailing zeros trimmed.
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

}  // namespace detail

// Applies `key = value` overrides from a config file on top of the defaults.
// Throws std::runtime_error naming the offending line for malformed input or
// unknown keys.
inline SimParams load_params(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open parameter file: " + path);

  SimParams params = SimParams::defaults();
  auto bindings = detail::param_bindings();
  std::map<std::string, const detail::ParamBinding*> by_key;
  for (const auto& b : bindings) by_key[b.key] = &b;

  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error(path + ":" + std::to_string(line_no) +
                               ": expected 'key = value'");
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    auto it = by_key.find(key);
    if (it == by_key.end())
      throw std::runtime_error(path + ":" + std::to_string(line_no) +
                               ": unknown parameter '" + key + "'");
    std::size_t consumed = 0;
    double v = 0.0;
    try {
      v = std::stod(value, &consumed);
    } catch (const std::exception&) {
      throw std::runtime_error(path + ":" + std::to_string(line_no) +
                               ": malformed value '" + value + "'");
    }
    if (consumed != value.size())
      throw std::runtime_error(path + ":" + std::to_string(line_no) +
                               ": malformed value '" + value + "'");
    it->second->set(params, v);
  }
  return params;
}

// Canonical serialization: every key in binding order. This is both the
// shipped default.cfg content and the digest input.
inline std::string serialize_params(const SimParams& params) {
  std::ostringstream out;
  for (const auto& b : detail::param_bindings())
    out << b.key << " = " << detail::format_param_value(b.get(params)) << "\n";
  return out.str();
}

// FNV-1a 64-bit over the canonical serialization. Changes iff any effective
// parameter value changes; comments and formatting in a config file do not.
inline std::string params_digest(const SimParams& params) {
  const std::string canon = serialize_params(params);
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : canon) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace govsim
