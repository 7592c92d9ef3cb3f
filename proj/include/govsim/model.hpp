#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace govsim {

// ── Maturity levels ──────────────────────────────────────────────────────────

enum class MaturityLevel : int { L1 = 1, L2 = 2, L3 = 3, L4 = 4, L5 = 5 };

inline constexpr std::array<MaturityLevel, 5> kAllLevels = {
    MaturityLevel::L1, MaturityLevel::L2, MaturityLevel::L3,
    MaturityLevel::L4, MaturityLevel::L5};

inline constexpr int level_index(MaturityLevel l) noexcept {
  return static_cast<int>(l) - 1;
}

inline MaturityLevel level_from_index(int idx) {
  if (idx < 0 || idx > 4) throw std::invalid_argument("level index out of range");
  return static_cast<MaturityLevel>(idx + 1);
}

inline std::string_view level_name(MaturityLevel l) noexcept {
  constexpr std::array<std::string_view, 5> names = {
      "Ad-hoc", "Reactive", "Defined", "Managed", "Optimized"};
  return names[static_cast<std::size_t>(level_index(l))];
}

inline std::string level_id(MaturityLevel l) {
  return "L" + std::to_string(static_cast<int>(l));
}

inline MaturityLevel level_from_id(std::string_view id) {
  for (MaturityLevel l : kAllLevels)
    if (id == level_id(l)) return l;
  throw std::invalid_argument("unknown maturity level '" + std::string(id) +
                              "' (expected L1..L5)");
}

// ── Business functions and capabilities ─────────────────────────────────────

inline constexpr int kBusinessFunctions = 5;
inline constexpr int kCapabilitySlotsPerFunction = 6;
inline constexpr int kCapabilityCount =
    kBusinessFunctions * kCapabilitySlotsPerFunction;  // 30 types

inline std::string_view business_function_name(int function_id) {
  constexpr std::array<std::string_view, kBusinessFunctions> names = {
      "Customer Service", "Finance", "Operations", "Sales", "Human Resources"};
  if (function_id < 0 || function_id >= kBusinessFunctions)
    throw std::invalid_argument("business function id out of range");
  return names[static_cast<std::size_t>(function_id)];
}

// One of the 30 (function, slot) capability types, stored as a dense index.
class Capability {
 public:
  Capability() = default;
  explicit Capability(int index) : index_(index) {
    if (index < 0 || index >= kCapabilityCount)
      throw std::invalid_argument("capability index out of range");
  }
  static Capability from_parts(int function_id, int slot) {
    return Capability(function_id * kCapabilitySlotsPerFunction + slot);
  }

  int index() const noexcept { return index_; }
  int function_id() const noexcept { return index_ / kCapabilitySlotsPerFunction; }
  int slot() const noexcept { return index_ % kCapabilitySlotsPerFunction; }

  friend bool operator==(Capability a, Capability b) noexcept {
    return a.index_ == b.index_;
  }

 private:
  int index_ = 0;
};

// ── Task difficulty ──────────────────────────────────────────────────────────

enum class TaskDifficulty : int { Simple = 0, Moderate = 1, Complex = 2, Critical = 3 };

inline constexpr std::array<TaskDifficulty, 4> kAllDifficulties = {
    TaskDifficulty::Simple, TaskDifficulty::Moderate, TaskDifficulty::Complex,
    TaskDifficulty::Critical};

// Inverse-CDF with left-closed boundaries over the 40/35/20/5 mix.
inline TaskDifficulty sample_task_difficulty(double u) {
  if (u < 0.0 || u >= 1.0)
    throw std::invalid_argument("difficulty draw must lie in [0,1)");
  if (u < 0.40) return TaskDifficulty::Simple;
  if (u < 0.75) return TaskDifficulty::Moderate;
  if (u < 0.95) return TaskDifficulty::Complex;
  return TaskDifficulty::Critical;
}

// ── Sprawl patterns ──────────────────────────────────────────────────────────

enum class SprawlPattern : int {
  FunctionalDuplication = 0,  // SP-01
  ShadowAgent = 1,            // SP-02
  OrphanedAgent = 2,          // SP-03
  PermissionCreep = 3,        // SP-04
  UnmonitoredDelegation = 4,  // SP-05
};

inline constexpr std::array<SprawlPattern, 5> kAllSprawlPatterns = {
    SprawlPattern::FunctionalDuplication, SprawlPattern::ShadowAgent,
    SprawlPattern::OrphanedAgent, SprawlPattern::PermissionCreep,
    SprawlPattern::UnmonitoredDelegation};

inline std::string_view sprawl_pattern_id(SprawlPattern p) noexcept {
  constexpr std::array<std::string_view, 5> ids = {"SP-01", "SP-02", "SP-03",
                                                   "SP-04", "SP-05"};
  return ids[static_cast<std::size_t>(p)];
}

inline std::string_view sprawl_pattern_name(SprawlPattern p) noexcept {
  constexpr std::array<std::string_view, 5> names = {
      "Functional Duplication", "Shadow Agents", "Orphaned Agents",
      "Permission Creep", "Unmonitored Delegation"};
  return names[static_cast<std::size_t>(p)];
}

// ── Agents, tasks, delegation ────────────────────────────────────────────────

using AgentId = std::uint32_t;

struct Agent {
  AgentId id = 0;
  Capability capability{};
  bool is_shadow = false;    // deployed outside governance at creation
  bool is_orphaned = false;  // purpose expired, still operating
  bool is_retired = false;   // removed from service; receives no new tasks
  bool registered = true;    // false for shadows until a scan registers them
  bool is_delegator = false; // spawns delegation chains for its tasks
  int baseline_permissions = 0;
  int granted_permissions = 0;
  // Unsafe delegation evidence; cleared when a scan re-authorizes the agent.
  int unsafe_hops_originated = 0;

  bool live() const noexcept { return !is_retired; }
  int creeped_permissions() const noexcept {
    return granted_permissions - baseline_permissions;
  }
};

enum class TaskOutcome : int { Completed = 0, Failed = 1, Invalidated = 2, Unassigned = 3 };

struct Task {
  std::uint32_t id = 0;
  TaskDifficulty difficulty = TaskDifficulty::Simple;
  Capability required_capability{};
  TaskOutcome outcome = TaskOutcome::Unassigned;
};

struct DelegationHop {
  std::uint32_t chain_id = 0;
  int depth = 1;  // position within the chain, 1-based
  AgentId from_agent = 0;
  AgentId to_agent = 0;
  bool authorized = true;
  bool visible = true;

  bool safe() const noexcept { return authorized && visible; }
};

}  // namespace govsim
