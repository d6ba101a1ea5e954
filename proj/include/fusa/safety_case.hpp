#pragma once

#include <map>
#include <string>
#include <vector>

#include "fusa/core.hpp"

namespace fusa {

class CyclicCase : public Error {
 public:
  using Error::Error;
};

class MissingRoot : public Error {
 public:
  using Error::Error;
};

struct Claim {
  std::string id;
  std::string text;
  std::vector<std::string> supported_by;  // argument ids

  friend bool operator==(const Claim&, const Claim&) = default;
};

struct Argument {
  std::string id;
  std::string text;
  UnitInterval acceptance_criteria_reasonableness;
  UnitInterval suitability;
  std::vector<std::string> premises;  // claim ids
  std::vector<std::string> evidence;  // evidence ids

  friend bool operator==(const Argument&, const Argument&) = default;
};

struct Evidence {
  std::string id;
  std::string text;
  UnitInterval confidence;
  UnitInterval coverage;

  friend bool operator==(const Evidence&, const Evidence&) = default;
};

struct SafetyCase {
  std::string root;
  std::vector<Claim> claims;
  std::vector<Argument> arguments;
  std::vector<Evidence> evidence;

  friend bool operator==(const SafetyCase&, const SafetyCase&) = default;
};

/// The single score that fixes a node's credibility, traced down to a leaf input.
struct Limiter {
  std::string node;    // node that owns the score
  std::string factor;  // e.g. "coverage", "suitability", "no supporting argument"
  double value = 0.0;
};

struct NodeCredibility {
  double credibility = 0.0;
  Limiter limiter;
};

struct CcaResult {
  std::map<std::string, NodeCredibility> nodes;  // claims, arguments and evidence
  double root_credibility = 0.0;
};

/// Weakest-link rollup: evidence = min(confidence, coverage); argument = min(own scores,
/// premise claims, evidence); claim = max over supporting arguments, 0 when unsupported.
/// Ties pick the first candidate in (own scores, sorted premises, sorted evidence) order.
/// Throws MissingRoot, CyclicCase, or ReferenceError for an unresolved link.
CcaResult assess_cca(const SafetyCase& sc);

/// CCA-UNSUPPORTED (error) per claim without arguments, CCA-EMPTY-ARG (error) per argument
/// with neither premises nor evidence, CCA-WEAK (warning) per other node below `threshold`.
std::vector<Finding> find_case_gaps(const SafetyCase& sc, const CcaResult& cca, double threshold);
std::vector<Finding> find_case_gaps(const SafetyCase& sc, double threshold);

}  // namespace fusa
