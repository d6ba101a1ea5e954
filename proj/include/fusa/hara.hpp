#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fusa/core.hpp"

namespace fusa {

struct SafetyModel;

struct Hazard {
  std::string id;
  std::string description;
  std::string operational_situation;
  std::optional<Asil> asil;  // absent -> HAZ-NO-ASIL at validation
  /// Optional back-references to safety goals; must resolve.
  std::vector<std::string> goals;

  friend bool operator==(const Hazard&, const Hazard&) = default;
};

struct SafetyGoal {
  std::string id;
  std::string statement;
  Asil asil = Asil::QM;
  std::vector<std::string> covers;  // hazard ids, nonempty

  friend bool operator==(const SafetyGoal&, const SafetyGoal&) = default;
};

/// Maximum under QM < A < B < C < D. Throws EmptyInput on an empty span.
Asil max_asil(std::span<const Asil> levels);

/// Concept-phase coverage rules.
///
///   HARA-UNCOVERED   error    hazard rated A..D that no goal covers
///   HARA-WEAK-GOAL   error    goal rated below the highest hazard it covers
///   HARA-QM-COVERED  info     goal whose covered hazards are all QM
///   HARA-NO-HAZARD   warning  item present but no hazards declared
///
/// Hazards without an ASIL are ignored here; model validation reports them.
std::vector<Finding> check_hara(const std::vector<Hazard>& hazards,
                                const std::vector<SafetyGoal>& goals, std::string_view item_name = {});
std::vector<Finding> check_hara(const SafetyModel& model);

}  // namespace fusa
