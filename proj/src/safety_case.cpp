#include "fusa/safety_case.hpp"

#include <algorithm>
#include <functional>
#include <unordered_map>

namespace fusa {

namespace {

enum class Mark : std::uint8_t { Unvisited, Active, Done };

std::vector<std::string> sorted(std::vector<std::string> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

CcaResult assess_cca(const SafetyCase& sc) {
  std::unordered_map<std::string, const Claim*> claims;
  std::unordered_map<std::string, const Argument*> args;
  std::unordered_map<std::string, const Evidence*> evid;
  for (const auto& c : sc.claims) claims.emplace(c.id, &c);
  for (const auto& a : sc.arguments) args.emplace(a.id, &a);
  for (const auto& e : sc.evidence) evid.emplace(e.id, &e);
  if (!claims.count(sc.root)) throw MissingRoot("root claim '" + sc.root + "' is not declared");

  CcaResult r;
  for (const auto& e : sc.evidence) {
    NodeCredibility n;
    const double conf = e.confidence.value(), cov = e.coverage.value();
    n.limiter = cov < conf ? Limiter{e.id, "coverage", cov} : Limiter{e.id, "confidence", conf};
    n.credibility = n.limiter.value;
    r.nodes[e.id] = n;
  }

  std::unordered_map<std::string, Mark> mark;
  std::function<const NodeCredibility&(const std::string&)> claim_cred;
  std::function<const NodeCredibility&(const std::string&)> arg_cred;

  arg_cred = [&](const std::string& id) -> const NodeCredibility& {
    auto m = mark[id];
    if (m == Mark::Done) return r.nodes.at(id);
    if (m == Mark::Active) throw CyclicCase("safety case cycles through argument '" + id + "'");
    auto it = args.find(id);
    if (it == args.end()) throw ReferenceError(id, "unknown argument '" + id + "'");
    mark[id] = Mark::Active;
    const Argument& a = *it->second;

    Limiter best{a.id, "acceptance_criteria_reasonableness",
                 a.acceptance_criteria_reasonableness.value()};
    if (a.suitability.value() < best.value) best = {a.id, "suitability", a.suitability.value()};
    for (const auto& p : sorted(a.premises)) {
      const auto& c = claim_cred(p);
      if (c.credibility < best.value) best = c.limiter;
    }
    for (const auto& e : sorted(a.evidence)) {
      auto ei = r.nodes.find(e);
      if (!evid.count(e) || ei == r.nodes.end())
        throw ReferenceError(e, "unknown evidence '" + e + "'");
      if (ei->second.credibility < best.value) best = ei->second.limiter;
    }
    mark[id] = Mark::Done;
    return r.nodes[id] = NodeCredibility{best.value, best};
  };

  claim_cred = [&](const std::string& id) -> const NodeCredibility& {
    auto m = mark[id];
    if (m == Mark::Done) return r.nodes.at(id);
    if (m == Mark::Active) throw CyclicCase("safety case cycles through claim '" + id + "'");
    auto it = claims.find(id);
    if (it == claims.end()) throw ReferenceError(id, "unknown claim '" + id + "'");
    mark[id] = Mark::Active;

    NodeCredibility n{0.0, Limiter{id, "no supporting argument", 0.0}};
    bool first = true;
    for (const auto& a : sorted(it->second->supported_by)) {
      const auto& leg = arg_cred(a);
      if (first || leg.credibility > n.credibility) n = leg;
      first = false;
    }
    mark[id] = Mark::Done;
    return r.nodes[id] = n;
  };

  for (const auto& c : sc.claims) claim_cred(c.id);
  for (const auto& a : sc.arguments) arg_cred(a.id);
  r.root_credibility = r.nodes.at(sc.root).credibility;
  return r;
}

std::vector<Finding> find_case_gaps(const SafetyCase& sc, const CcaResult& cca, double threshold) {
  std::vector<Finding> out;
  const auto weak = [&](const std::string& id) {
    const auto& n = cca.nodes.at(id);
    if (n.credibility >= threshold) return;
    out.push_back({"CCA-WEAK", Severity::Warning, id,
                   "credibility " + format_double(n.credibility) + " below threshold " +
                       format_double(threshold) + "; limited by " + n.limiter.node + " " +
                       n.limiter.factor + " = " + format_double(n.limiter.value)});
  };

  for (const auto& c : sc.claims) {
    if (c.supported_by.empty())
      out.push_back({"CCA-UNSUPPORTED", Severity::Error, c.id, "claim has no supporting argument"});
    else
      weak(c.id);
  }
  for (const auto& a : sc.arguments) {
    if (a.premises.empty() && a.evidence.empty())
      out.push_back({"CCA-EMPTY-ARG", Severity::Error, a.id,
                     "argument rests on neither premises nor evidence"});
    weak(a.id);
  }
  for (const auto& e : sc.evidence) weak(e.id);

  sort_findings(out);
  return out;
}

std::vector<Finding> find_case_gaps(const SafetyCase& sc, double threshold) {
  return find_case_gaps(sc, assess_cca(sc), threshold);
}

}  // namespace fusa
