#include "fusa/hara.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "fusa/model.hpp"

namespace fusa {

Asil max_asil(std::span<const Asil> levels) {
  if (levels.empty()) throw EmptyInput("max_asil needs at least one level");
  return *std::max_element(levels.begin(), levels.end());
}

std::vector<Finding> check_hara(const std::vector<Hazard>& hazards,
                                const std::vector<SafetyGoal>& goals, std::string_view item_name) {
  std::vector<Finding> out;
  if (!item_name.empty() && hazards.empty())
    out.push_back({"HARA-NO-HAZARD", Severity::Warning, std::string(item_name),
                   "item declares no hazards"});

  std::map<std::string, const Hazard*> by_id;
  for (const auto& h : hazards) by_id.emplace(h.id, &h);

  std::set<std::string> covered;
  for (const auto& g : goals) {
    std::vector<Asil> levels;
    for (const auto& hid : g.covers) {
      covered.insert(hid);
      auto it = by_id.find(hid);
      if (it != by_id.end() && it->second->asil) levels.push_back(*it->second->asil);
    }
    if (levels.empty()) continue;
    const Asil needed = max_asil(levels);
    if (g.asil < needed) {
      out.push_back({"HARA-WEAK-GOAL", Severity::Error, g.id,
                     "goal is ASIL " + std::string(to_string(g.asil)) +
                         " but covers a hazard rated ASIL " + std::string(to_string(needed))});
    }
    if (needed == Asil::QM) {
      out.push_back({"HARA-QM-COVERED", Severity::Info, g.id, "goal covers only QM hazards"});
    }
  }

  for (const auto& h : hazards) {
    if (h.asil && *h.asil >= Asil::A && !covered.count(h.id))
      out.push_back({"HARA-UNCOVERED", Severity::Error, h.id,
                     "hazard rated ASIL " + std::string(to_string(*h.asil)) +
                         " is covered by no safety goal"});
  }

  sort_findings(out);
  return out;
}

std::vector<Finding> check_hara(const SafetyModel& model) {
  return check_hara(model.hazards, model.safety_goals, model.item.name);
}

}  // namespace fusa
