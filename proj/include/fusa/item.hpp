#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fusa/core.hpp"

namespace fusa {

enum class SignalDirection : std::uint8_t { In, Out, InOut };

std::string_view to_string(SignalDirection d) noexcept;
std::optional<SignalDirection> parse_direction(std::string_view s) noexcept;

struct InterfaceSignal {
  std::string name;
  SignalDirection direction = SignalDirection::In;
  std::string semantic_type;
  std::optional<std::string> unit;
  std::optional<double> range_min;
  std::optional<double> range_max;

  friend bool operator==(const InterfaceSignal&, const InterfaceSignal&) = default;
};

/// Keys of the item requirement checklist, in order a..f.
inline constexpr std::array<std::string_view, 6> kRequirementKeys = {
    "legal_requirements",     "vehicle_behaviour",     "quality_performance",
    "constraints_dependencies", "behavioural_shortfalls", "actuator_capabilities"};

/// Keys of the item boundary checklist, in order a..f.
inline constexpr std::array<std::string_view, 6> kBoundaryKeys = {
    "elements",           "vehicle_effects",      "required_by_others",
    "required_from_others", "function_allocation", "operational_scenarios"};

inline constexpr std::array<std::string_view, 4> kArtifactKeys = {
    "state_transition_diagrams", "state_transition_tables", "sequence_diagrams",
    "use_case_diagrams"};

struct ItemDefinition {
  std::string name;
  std::string description;
  std::array<bool, 6> requirement_checklist{};
  std::array<bool, 6> boundary_checklist{};
  std::array<bool, 4> artifacts_present{};
  std::vector<InterfaceSignal> interfaces;

  friend bool operator==(const ItemDefinition&, const ItemDefinition&) = default;
};

struct Transition {
  std::string from;
  std::string event;
  std::string to;

  friend bool operator==(const Transition&, const Transition&) = default;
};

/// Flat state machine. States and events keep their declaration order.
struct StateMachine {
  std::string name;
  std::vector<std::string> states;
  std::string initial;
  std::vector<std::string> events;
  std::vector<Transition> transitions;

  friend bool operator==(const StateMachine&, const StateMachine&) = default;
};

/// Rules: SM-NONDET (error), SM-UNREACH (error), SM-DEAD (warning), SM-UNUSED-EVT (info),
/// SM-INVALID (error, structural breakage in a machine built outside the loader).
/// Subjects are "<machine>/<state>" or "<machine>/<state>/<event>".
std::vector<Finding> validate_state_machine(const StateMachine& sm);

/// Rules: SIG-NO-UNIT, SIG-NO-RANGE, SIG-HALF-RANGE (warnings), SIG-BAD-RANGE (error).
std::vector<Finding> check_signals(const ItemDefinition& item);

/// A signal is complete when it has a nonempty unit and both bounds with min <= max.
bool signal_complete(const InterfaceSignal& s) noexcept;

struct RigorScore {
  double score = 0.0;
  std::size_t satisfied = 0;
  std::size_t total = 0;
  std::vector<std::string> missing;
};

inline constexpr std::size_t kRigorCriteria = 17;

/// Fraction of the 17 equally weighted item-definition criteria that hold.
///
/// The state-transition-diagram criterion needs the flag plus at least one supplied machine
/// free of error findings. The signal criterion needs at least one declared signal and every
/// signal complete. `missing` lists unsatisfied criteria as "<group>.<key>".
RigorScore score_item_rigor(const ItemDefinition& item, const std::vector<StateMachine>& machines);

}  // namespace fusa
