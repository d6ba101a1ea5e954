#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "fusa/safety_case.hpp"

using namespace fusa;

namespace {

Argument arg(std::string id, double acr, double suit, std::vector<std::string> premises,
             std::vector<std::string> evidence) {
  return {std::move(id), "", UnitInterval(acr), UnitInterval(suit), std::move(premises), std::move(evidence)};
}

Evidence ev(std::string id, double conf, double cov) {
  return {std::move(id), "", UnitInterval(conf), UnitInterval(cov)};
}

SafetyCase one_leg(double acr, double suit, double conf, double cov) {
  return {"C", {{"C", "", {"A"}}}, {arg("A", acr, suit, {}, {"E"})}, {ev("E", conf, cov)}};
}

// Claim i is supported by arguments j >= i; argument j has premises among claims k > j.
SafetyCase random_case(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const auto score = [&] { return rng() % 3 == 0 ? 1.0 : u(rng); };
  const int nc = 1 + static_cast<int>(rng() % 4);
  const int na = 1 + static_cast<int>(rng() % 5);
  const int ne = 1 + static_cast<int>(rng() % 4);
  SafetyCase sc;
  sc.root = "C0";
  for (int i = 0; i < nc; ++i) {
    Claim c{"C" + std::to_string(i), "", {}};
    for (int j = i; j < na; ++j)
      if (rng() % 2) c.supported_by.push_back("A" + std::to_string(j));
    sc.claims.push_back(c);
  }
  for (int j = 0; j < na; ++j) {
    Argument a = arg("A" + std::to_string(j), score(), score(), {}, {});
    for (int k = j + 1; k < nc; ++k)
      if (rng() % 3 == 0) a.premises.push_back("C" + std::to_string(k));
    for (int e = 0; e < ne; ++e)
      if (rng() % 2) a.evidence.push_back("E" + std::to_string(e));
    sc.arguments.push_back(a);
  }
  for (int e = 0; e < ne; ++e) sc.evidence.push_back(ev("E" + std::to_string(e), score(), score()));
  return sc;
}

// Plain recursive evaluation of the min/max rollup.
struct Rollup {
  const SafetyCase& sc;

  double evidence(const std::string& id) const {
    for (const auto& e : sc.evidence)
      if (e.id == id) return std::min(e.confidence.value(), e.coverage.value());
    throw std::logic_error(id);
  }
  double argument(const std::string& id) const {
    for (const auto& a : sc.arguments)
      if (a.id == id) {
        double v = std::min(a.acceptance_criteria_reasonableness.value(), a.suitability.value());
        for (const auto& p : a.premises) v = std::min(v, claim(p));
        for (const auto& e : a.evidence) v = std::min(v, evidence(e));
        return v;
      }
    throw std::logic_error(id);
  }
  double claim(const std::string& id) const {
    for (const auto& c : sc.claims)
      if (c.id == id) {
        double v = 0.0;
        for (const auto& a : c.supported_by) v = std::max(v, argument(a));
        return v;
      }
    throw std::logic_error(id);
  }
  // True when some leg under the claim is perfect all the way down.
  bool perfect_claim(const std::string& id) const {
    for (const auto& c : sc.claims)
      if (c.id == id)
        return std::any_of(c.supported_by.begin(), c.supported_by.end(),
                           [&](const std::string& a) { return perfect_argument(a); });
    return false;
  }
  bool perfect_argument(const std::string& id) const {
    for (const auto& a : sc.arguments)
      if (a.id == id) {
        if (a.acceptance_criteria_reasonableness.value() != 1.0 || a.suitability.value() != 1.0) return false;
        for (const auto& p : a.premises)
          if (!perfect_claim(p)) return false;
        for (const auto& e : a.evidence)
          if (evidence(e) != 1.0) return false;
        return true;
      }
    return false;
  }
};

// Every leaf score of the case, tagged with owner and factor.
std::vector<Limiter> leaf_scores(const SafetyCase& sc) {
  std::vector<Limiter> out;
  for (const auto& a : sc.arguments) {
    out.push_back({a.id, "acceptance_criteria_reasonableness", a.acceptance_criteria_reasonableness.value()});
    out.push_back({a.id, "suitability", a.suitability.value()});
  }
  for (const auto& e : sc.evidence) {
    out.push_back({e.id, "confidence", e.confidence.value()});
    out.push_back({e.id, "coverage", e.coverage.value()});
  }
  return out;
}

}  // namespace

TEST_CASE("perfect single leg") {
  const auto sc = one_leg(1, 1, 1, 1);
  CHECK(assess_cca(sc).root_credibility == 1.0);
  CHECK(find_case_gaps(sc, 0.5).empty());
}

TEST_CASE("unsupported root") {
  SafetyCase sc{"C", {{"C", "", {}}}, {}, {}};
  const auto r = assess_cca(sc);
  CHECK(r.root_credibility == 0.0);
  const auto f = find_case_gaps(sc, r, 0.8);
  REQUIRE(f.size() == 1);
  CHECK(f[0].rule_id == "CCA-UNSUPPORTED");
  CHECK(f[0].severity == Severity::Error);
}

TEST_CASE("weak evidence coverage limits the argument") {
  const auto sc = one_leg(0.9, 0.8, 0.95, 0.7);
  const auto r = assess_cca(sc);
  CHECK(r.nodes.at("A").credibility == 0.7);
  CHECK(r.nodes.at("A").limiter.node == "E");
  CHECK(r.nodes.at("A").limiter.factor == "coverage");
  const auto f = find_case_gaps(sc, r, 0.8);
  CHECK(count_rule(f, "CCA-WEAK") == 3);
  for (const auto& x : f) CHECK(x.message.find("E coverage = 0.7") != std::string::npos);
}

TEST_CASE("alternative legs take the stronger one") {
  SafetyCase sc{"C",
                {{"C", "", {"A1", "A2"}}},
                {arg("A1", 0.4, 1, {}, {"E1"}), arg("A2", 0.9, 1, {}, {"E2"})},
                {ev("E1", 1, 1), ev("E2", 1, 1)}};
  const auto r = assess_cca(sc);
  CHECK(r.root_credibility == 0.9);
  const auto f = find_case_gaps(sc, r, 0.8);
  REQUIRE(f.size() == 1);
  CHECK(f[0].subject == "A1");
}

TEST_CASE("structural errors") {
  SafetyCase missing{"X", {{"C", "", {}}}, {}, {}};
  CHECK_THROWS_AS(assess_cca(missing), MissingRoot);

  SafetyCase cyclic{"C", {{"C", "", {"A"}}}, {arg("A", 1, 1, {"C"}, {})}, {}};
  CHECK_THROWS_AS(assess_cca(cyclic), CyclicCase);

  SafetyCase dangling{"C", {{"C", "", {"A"}}}, {arg("A", 1, 1, {}, {"E9"})}, {}};
  CHECK_THROWS_AS(assess_cca(dangling), ReferenceError);

  SafetyCase empty_arg{"C", {{"C", "", {"A"}}}, {arg("A", 1, 1, {}, {})}, {}};
  CHECK(count_rule(find_case_gaps(empty_arg, 0.5), "CCA-EMPTY-ARG") == 1);
}

TEST_CASE("rollup agrees with recursive evaluation") {
  std::mt19937_64 rng(101);
  for (int i = 0; i < 500; ++i) {
    const auto sc = random_case(rng);
    const auto r = assess_cca(sc);
    const Rollup oracle{sc};
    for (const auto& c : sc.claims) CHECK(r.nodes.at(c.id).credibility == oracle.claim(c.id));
    for (const auto& a : sc.arguments) CHECK(r.nodes.at(a.id).credibility == oracle.argument(a.id));
    CHECK((r.root_credibility == 1.0) == oracle.perfect_claim("C0"));
  }
}

TEST_CASE("limiter names a leaf score equal to the credibility") {
  std::mt19937_64 rng(103);
  for (int i = 0; i < 300; ++i) {
    const auto sc = random_case(rng);
    const auto leaves = leaf_scores(sc);
    for (const auto& [id, n] : assess_cca(sc).nodes) {
      CHECK(n.limiter.value == n.credibility);
      if (n.limiter.factor == "no supporting argument") continue;
      const bool found = std::any_of(leaves.begin(), leaves.end(), [&](const Limiter& l) {
        return l.node == n.limiter.node && l.factor == n.limiter.factor && l.value == n.limiter.value;
      });
      CHECK(found);
    }
  }
}

TEST_CASE("raising one score never lowers any credibility") {
  std::mt19937_64 rng(107);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 400; ++i) {
    auto sc = random_case(rng);
    const auto before = assess_cca(sc);
    if (rng() % 2) {
      auto& a = sc.arguments[rng() % sc.arguments.size()];
      auto& s = rng() % 2 ? a.acceptance_criteria_reasonableness : a.suitability;
      s = UnitInterval(s.value() + (1.0 - s.value()) * u(rng));
    } else {
      auto& e = sc.evidence[rng() % sc.evidence.size()];
      auto& s = rng() % 2 ? e.confidence : e.coverage;
      s = UnitInterval(s.value() + (1.0 - s.value()) * u(rng));
    }
    const auto after = assess_cca(sc);
    for (const auto& [id, n] : before.nodes) CHECK(after.nodes.at(id).credibility >= n.credibility);
  }
}
