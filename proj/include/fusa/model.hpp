#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fusa/core.hpp"
#include "fusa/hara.hpp"
#include "fusa/hw_metrics.hpp"
#include "fusa/item.hpp"
#include "fusa/safety_case.hpp"
#include "fusa/sotif.hpp"
#include "fusa/trace.hpp"

namespace fusa {

/// Everything known about one item. Built by load_model and not modified afterwards.
///
/// `trace` holds only the declared trace section. Hazards and safety goals join the
/// analysed graph through build_trace_graph.
struct SafetyModel {
  ItemDefinition item;
  std::vector<StateMachine> state_machines;
  std::vector<Hazard> hazards;
  std::vector<SafetyGoal> safety_goals;
  std::vector<FmedaRow> fmeda;
  std::optional<SotifLeaves> sotif;
  std::vector<ValidationTarget> targets;
  TraceGraph trace;
  std::optional<SafetyCase> safety_case;

  const SafetyGoal* find_goal(std::string_view id) const noexcept;

  friend bool operator==(const SafetyModel&, const SafetyModel&) = default;
};

struct LoadOptions {
  /// Reject unknown keys instead of warning about them.
  bool strict = false;
};

struct LoadResult {
  SafetyModel model;
  std::vector<Finding> warnings;  // MODEL-UNKNOWN-KEY
};

/// Parses and resolves a model document.
///
/// Throws ParseError for malformed JSON, SchemaError for a missing or mistyped key or an
/// out-of-domain value, ReferenceError for a duplicate id or a dangling reference.
LoadResult load_model_with_warnings(std::string_view source_text, const LoadOptions& options = {});
SafetyModel load_model(std::string_view source_text, const LoadOptions& options = {});

/// Reads a file and loads it. Throws Error when the file cannot be read.
LoadResult load_model_file(const std::string& path, const LoadOptions& options = {});

/// Canonical JSON text of a model; load_model(serialize_model(m)) == m.
std::string serialize_model(const SafetyModel& model);

/// Semantic checks that do not block loading.
///
///   HAZ-NO-ASIL        warning  hazard without an ASIL
///   HAZ-GOAL-ASYM      warning  hazard names a goal that does not cover it
///   FMEDA-NSR-GOAL     warning  non-safety-related FMEDA row references a safety goal
///   FMEDA-DC-UNUSED    info     dc_residual on a row that cannot violate a goal directly
std::vector<Finding> validate_model(const SafetyModel& model);

/// Declared trace section plus hazard and goal nodes and the goal->hazard covers edges.
TraceGraph build_trace_graph(const SafetyModel& model);

/// ASIL that the hardware metrics are held to: the highest safety-goal ASIL, QM without goals.
Asil hardware_target_asil(const SafetyModel& model);

}  // namespace fusa
