#include "fusa/item.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <unordered_map>

namespace fusa {

std::string_view to_string(SignalDirection d) noexcept {
  switch (d) {
    case SignalDirection::In: return "in";
    case SignalDirection::Out: return "out";
    case SignalDirection::InOut: return "inout";
  }
  return "?";
}

std::optional<SignalDirection> parse_direction(std::string_view s) noexcept {
  if (s == "in") return SignalDirection::In;
  if (s == "out") return SignalDirection::Out;
  if (s == "inout") return SignalDirection::InOut;
  return std::nullopt;
}

std::vector<Finding> validate_state_machine(const StateMachine& sm) {
  std::vector<Finding> out;
  const auto subject = [&](std::string_view state) { return sm.name + "/" + std::string(state); };

  std::unordered_map<std::string, std::size_t> index;
  for (const auto& s : sm.states) {
    if (!index.emplace(s, index.size()).second)
      out.push_back({"SM-INVALID", Severity::Error, subject(s), "state declared twice"});
  }
  const std::set<std::string> events(sm.events.begin(), sm.events.end());

  const bool initial_ok = index.count(sm.initial) > 0;
  if (!initial_ok)
    out.push_back({"SM-INVALID", Severity::Error, sm.name,
                   "initial state '" + sm.initial + "' is not a declared state"});

  // Only structurally sound transitions take part in the behavioural checks.
  std::vector<const Transition*> valid;
  for (const auto& t : sm.transitions) {
    const bool ok = index.count(t.from) && index.count(t.to) && events.count(t.event);
    if (ok) {
      valid.push_back(&t);
    } else {
      out.push_back({"SM-INVALID", Severity::Error, subject(t.from),
                     "transition (" + t.from + ", " + t.event + ", " + t.to +
                         ") names an undeclared state or event"});
    }
  }

  std::map<std::pair<std::string, std::string>, std::vector<std::string>> by_key;
  for (const auto* t : valid) by_key[{t->from, t->event}].push_back(t->to);
  for (const auto& [key, targets] : by_key) {
    if (targets.size() < 2) continue;
    std::string list;
    for (const auto& to : targets) list += (list.empty() ? "" : ", ") + to;
    out.push_back({"SM-NONDET", Severity::Error, subject(key.first) + "/" + key.second,
                   std::to_string(targets.size()) + " transitions on event '" + key.second +
                       "' (targets: " + list + ")"});
  }

  std::vector<std::vector<std::size_t>> succ(index.size());
  std::vector<bool> has_out(index.size(), false);
  for (const auto* t : valid) {
    succ[index.at(t->from)].push_back(index.at(t->to));
    has_out[index.at(t->from)] = true;
  }

  std::vector<bool> seen(index.size(), false);
  if (initial_ok) {
    std::deque<std::size_t> queue{index.at(sm.initial)};
    seen[queue.front()] = true;
    while (!queue.empty()) {
      const auto s = queue.front();
      queue.pop_front();
      for (auto n : succ[s]) {
        if (!seen[n]) {
          seen[n] = true;
          queue.push_back(n);
        }
      }
    }
  }

  std::set<std::string> reported;
  for (const auto& s : sm.states) {
    if (!reported.insert(s).second) continue;
    const auto i = index.at(s);
    if (initial_ok && !seen[i])
      out.push_back({"SM-UNREACH", Severity::Error, subject(s),
                     "state is not reachable from initial state '" + sm.initial + "'"});
    if (s != sm.initial && !has_out[i])
      out.push_back({"SM-DEAD", Severity::Warning, subject(s), "state has no outgoing transition"});
  }

  std::set<std::string> used;
  for (const auto* t : valid) used.insert(t->event);
  std::set<std::string> unused_reported;
  for (const auto& e : sm.events) {
    if (!used.count(e) && unused_reported.insert(e).second)
      out.push_back({"SM-UNUSED-EVT", Severity::Info, sm.name + "/" + e,
                     "event '" + e + "' is declared but triggers no transition"});
  }

  sort_findings(out);
  return out;
}

bool signal_complete(const InterfaceSignal& s) noexcept {
  return s.unit.has_value() && !s.unit->empty() && s.range_min.has_value() &&
         s.range_max.has_value() && *s.range_min <= *s.range_max;
}

std::vector<Finding> check_signals(const ItemDefinition& item) {
  std::vector<Finding> out;
  for (const auto& s : item.interfaces) {
    const std::string subject = item.name + "/" + s.name;
    if (!s.unit || s.unit->empty())
      out.push_back({"SIG-NO-UNIT", Severity::Warning, subject, "signal declares no unit"});
    const bool lo = s.range_min.has_value();
    const bool hi = s.range_max.has_value();
    if (!lo && !hi) {
      out.push_back({"SIG-NO-RANGE", Severity::Warning, subject, "signal declares no value range"});
    } else if (lo != hi) {
      out.push_back({"SIG-HALF-RANGE", Severity::Warning, subject,
                     std::string("signal declares only a ") + (lo ? "lower" : "upper") + " bound"});
    } else if (*s.range_min > *s.range_max) {
      out.push_back({"SIG-BAD-RANGE", Severity::Error, subject,
                     "range_min " + format_double(*s.range_min) + " exceeds range_max " +
                         format_double(*s.range_max)});
    }
  }
  sort_findings(out);
  return out;
}

RigorScore score_item_rigor(const ItemDefinition& item, const std::vector<StateMachine>& machines) {
  RigorScore r;
  r.total = kRigorCriteria;
  const auto tally = [&](bool ok, std::string_view group, std::string_view key) {
    if (ok)
      ++r.satisfied;
    else
      r.missing.push_back(std::string(group) + "." + std::string(key));
  };

  for (std::size_t i = 0; i < kRequirementKeys.size(); ++i)
    tally(item.requirement_checklist[i], "requirements", kRequirementKeys[i]);
  for (std::size_t i = 0; i < kBoundaryKeys.size(); ++i)
    tally(item.boundary_checklist[i], "boundary", kBoundaryKeys[i]);

  const bool clean_machine = std::any_of(machines.begin(), machines.end(), [](const StateMachine& m) {
    return !has_errors(validate_state_machine(m));
  });
  for (std::size_t i = 0; i < kArtifactKeys.size(); ++i) {
    bool ok = item.artifacts_present[i];
    if (i == 0) ok = ok && clean_machine;
    tally(ok, "artifacts", kArtifactKeys[i]);
  }

  const bool signals_ok = !item.interfaces.empty() &&
                          std::all_of(item.interfaces.begin(), item.interfaces.end(), signal_complete);
  tally(signals_ok, "signals", "complete");

  r.score = static_cast<double>(r.satisfied) / static_cast<double>(r.total);
  return r;
}

}  // namespace fusa
