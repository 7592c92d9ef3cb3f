#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "govsim/model.hpp"
#include "govsim/params.hpp"

namespace govsim {

// ── Controls ─────────────────────────────────────────────────────────────────

enum class GovernanceControl : int {
  Registry = 0,
  IncidentResponse,
  IAM,
  Observability,
  PolicyEnforcement,
  HITL,
  Audit,
  RiskClassification,
  AutoPolicy,
  SprawlDetection,
  LifecycleManagement,
  ContinuousImprovement,
  PredictiveSprawl,
  GovernanceAsCode,
};

inline constexpr int kGovernanceControlCount = 14;

// Small value-type set over the 14 controls.
class ControlSet {
 public:
  ControlSet() = default;
  ControlSet(std::initializer_list<GovernanceControl> controls) {
    for (auto c : controls) insert(c);
  }

  void insert(GovernanceControl c) noexcept { bits_ |= bit(c); }
  void erase(GovernanceControl c) noexcept { bits_ &= ~bit(c); }
  bool contains(GovernanceControl c) const noexcept { return bits_ & bit(c); }
  bool contains_all(ControlSet other) const noexcept {
    return (bits_ & other.bits_) == other.bits_;
  }
  int size() const noexcept {
    int n = 0;
    for (std::uint16_t b = bits_; b; b &= b - 1) ++n;
    return n;
  }
  bool empty() const noexcept { return bits_ == 0; }

  friend bool operator==(ControlSet a, ControlSet b) noexcept {
    return a.bits_ == b.bits_;
  }

 private:
  static constexpr std::uint16_t bit(GovernanceControl c) noexcept {
    return static_cast<std::uint16_t>(1u << static_cast<int>(c));
  }
  std::uint16_t bits_ = 0;
};

// Nested control sets, one per maturity level: L1 none, each later level a
// strict superset of the previous.
inline ControlSet active_controls(MaturityLevel level) {
  ControlSet set;
  const int l = static_cast<int>(level);
  if (l >= 2) {
    set.insert(GovernanceControl::Registry);
    set.insert(GovernanceControl::IncidentResponse);
  }
  if (l >= 3) {
    set.insert(GovernanceControl::IAM);
    set.insert(GovernanceControl::Observability);
    set.insert(GovernanceControl::PolicyEnforcement);
    set.insert(GovernanceControl::HITL);
    set.insert(GovernanceControl::Audit);
    set.insert(GovernanceControl::RiskClassification);
  }
  if (l >= 4) {
    set.insert(GovernanceControl::AutoPolicy);
    set.insert(GovernanceControl::SprawlDetection);
    set.insert(GovernanceControl::LifecycleManagement);
  }
  if (l >= 5) {
    set.insert(GovernanceControl::ContinuousImprovement);
    set.insert(GovernanceControl::PredictiveSprawl);
    set.insert(GovernanceControl::GovernanceAsCode);
  }
  return set;
}

// ── Governance configuration ─────────────────────────────────────────────────

struct GovernanceConfig {
  MaturityLevel level = MaturityLevel::L1;
  ControlSet controls;
  double shadow_probability = 0.0;
  double orphan_rate = 0.0;
  double creep_rate = 0.0;
  double base_violation_rate = 0.0;
  double violation_block_rate = 0.0;
  double hop_safety = 1.0;
  double unsafe_hop_incident_rate = 1.0;
  int scan_interval = 0;
  double scan_efficacy = 0.0;
  double success_bonus = 0.0;
  double gcr = 0.0;

  bool has(GovernanceControl c) const noexcept { return controls.contains(c); }
};

inline GovernanceConfig config_for_level(MaturityLevel level,
                                         const SimParams& params) {
  const LevelParams& lp = params.level(level);
  GovernanceConfig cfg;
  cfg.level = level;
  cfg.controls = active_controls(level);
  cfg.shadow_probability = lp.shadow_probability;
  cfg.orphan_rate = lp.orphan_rate;
  cfg.creep_rate = lp.creep_rate;
  cfg.base_violation_rate = lp.base_violation_rate;
  cfg.violation_block_rate = lp.violation_block_rate;
  cfg.hop_safety = lp.hop_safety;
  cfg.unsafe_hop_incident_rate = lp.unsafe_hop_incident_rate;
  cfg.scan_interval = lp.scan_interval;
  cfg.scan_efficacy = lp.scan_efficacy;
  cfg.success_bonus = lp.success_bonus;
  cfg.gcr = lp.gcr;
  return cfg;
}

inline GovernanceConfig config_for_level(MaturityLevel level) {
  return config_for_level(level, SimParams::defaults());
}

// ── Domain catalog ───────────────────────────────────────────────────────────

struct GovernanceDomain {
  std::string id;    // GD-01..GD-12
  std::string name;
  std::vector<std::string> nist_refs;
  std::vector<std::string> iso_refs;
  std::vector<SprawlPattern> sprawl_patterns;  // empty means "All"
  bool all_patterns = false;

  bool covers(SprawlPattern p) const noexcept {
    if (all_patterns) return true;
    for (auto q : sprawl_patterns)
      if (q == p) return true;
    return false;
  }
};

// The twelve-domain catalog with standards clause mappings.
inline const std::vector<GovernanceDomain>& domain_catalog() {
  using SP = SprawlPattern;
  static const std::vector<GovernanceDomain> catalog = {
      {"GD-01", "Agent Lifecycle Mgmt.", {"GOV 1.1", "GOV 1.3"}, {"6.1", "8.1"},
       {SP::OrphanedAgent}, false},
      {"GD-02", "Identity & Access Ctrl.", {"GOV 1.5", "MNG 2.3"}, {"9.2", "9.4"},
       {SP::PermissionCreep}, false},
      {"GD-03", "Observability", {"MEA 2.1", "MEA 2.6"}, {"9.1"},
       {SP::ShadowAgent, SP::UnmonitoredDelegation}, false},
      {"GD-04", "Policy Enforcement", {"GOV 1.2", "MNG 4.1"}, {"5.2", "8.2"},
       {}, true},
      {"GD-05", "Data Governance", {"MAP 3.1", "GOV 1.7"}, {"A.8"},
       {SP::PermissionCreep}, false},
      {"GD-06", "Human Oversight", {"GOV 1.4", "MNG 1.3"}, {"6.2"},
       {SP::UnmonitoredDelegation}, false},
      {"GD-07", "Sprawl Containment", {"GOV 6.1", "MAP 1.5"}, {"8.1", "10.1"},
       {SP::FunctionalDuplication, SP::ShadowAgent}, false},
      {"GD-08", "Audit & Compliance", {"MEA 2.8", "MNG 4.2"}, {"9.2", "10.2"},
       {}, true},
      {"GD-09", "Inter-Agent Coord.", {"MAP 3.4", "MNG 2.1"}, {"8.2"},
       {SP::UnmonitoredDelegation}, false},
      {"GD-10", "Risk Classification", {"MAP 1.1", "MAP 1.2"}, {"6.1.2"},
       {SP::PermissionCreep}, false},
      {"GD-11", "Incident Response", {"MNG 3.1", "MNG 4.1"}, {"A.6.2.5"},
       {}, true},
      {"GD-12", "Continuous Improvement", {"MEA 3.1", "GOV 6.2"}, {"10.1", "10.2"},
       {}, true},
  };
  return catalog;
}

inline const GovernanceDomain& domain_by_id(std::string_view id) {
  for (const auto& d : domain_catalog())
    if (d.id == id) return d;
  throw std::invalid_argument("unknown governance domain '" + std::string(id) +
                              "' (expected GD-01..GD-12)");
}

}  // namespace govsim
