#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <string_view>

namespace govsim {

// One experimental preset: fleet size, task volume, and which stress the
// scenario applies on top of the shared mechanics.
struct ScenarioSpec {
  std::string id;    // S1..S5
  std::string name;
  int agents = 0;
  int tasks = 0;
  double delegation_boost = 1.0;      // multiplier on chain spawn probability
  double adversarial_multiplier = 1.0; // multiplier on violation pressure
  bool optimization_wave = false;      // mid-run retirement/refresh wave

  bool adversarial() const noexcept { return adversarial_multiplier > 1.0; }
};

inline constexpr std::array<std::string_view, 5> kScenarioIds = {"S1", "S2", "S3",
                                                                 "S4", "S5"};

inline ScenarioSpec scenario_preset(std::string_view id) {
  if (id == "S1") return {"S1", "Greenfield", 30, 1000, 1.0, 1.0, false};
  if (id == "S2") return {"S2", "Scaling", 50, 2000, 1.0, 1.0, false};
  if (id == "S3") return {"S3", "Cross-Functional", 35, 1500, 1.2, 1.0, false};
  if (id == "S4") return {"S4", "Adversarial", 30, 1000, 1.0, 1.02, false};
  if (id == "S5") return {"S5", "Optimization", 40, 1500, 1.0, 1.0, true};
  std::string valid;
  for (auto s : kScenarioIds) {
    if (!valid.empty()) valid += ", ";
    valid += s;
  }
  throw std::invalid_argument("unknown scenario '" + std::string(id) +
                              "' (valid: " + valid + ")");
}

inline ScenarioSpec scenario_preset_by_index(int index) {
  if (index < 0 || index >= static_cast<int>(kScenarioIds.size()))
    throw std::invalid_argument("scenario index out of range");
  return scenario_preset(kScenarioIds[static_cast<std::size_t>(index)]);
}

}  // namespace govsim
