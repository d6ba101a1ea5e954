#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fusa/core.hpp"

namespace fusa {

class StrictModelViolation : public Error {
 public:
  using Error::Error;
};

class UnknownSymbol : public Error {
 public:
  using Error::Error;
};

/// Per-exposure-hour leaf probabilities of the harm model.
struct SotifLeaves {
  UnitInterval p_fs;   // malfunction (functional safety failure)
  UnitInterval p_tc;   // triggering condition present
  UnitInterval p_is;   // insufficiency of specification
  UnitInterval p_pl;   // performance limitation
  UnitInterval p_sm;   // foreseeable misuse
  UnitInterval p_scs;  // safety-critical situation
  UnitInterval p_ip;   // involved persons contribute to harm
  UnitInterval p_ode;  // hazardous exit from the operational design domain

  friend bool operator==(const SotifLeaves&, const SotifLeaves&) = default;
};

inline constexpr std::array<std::string_view, 8> kLeafSymbols = {
    "p_fs", "p_tc", "p_is", "p_pl", "p_sm", "p_scs", "p_ip", "p_ode"};
inline constexpr std::array<std::string_view, 3> kDerivedSymbols = {"p_fi", "p_ub", "p_h"};

bool is_sotif_symbol(std::string_view s) noexcept;

/// Leaf value by symbol; nullopt for a derived or unknown symbol.
std::optional<double> leaf_value(const SotifLeaves& leaves, std::string_view symbol) noexcept;

/// Builds leaves from values in kLeafSymbols order. Throws DomainError outside [0, 1].
SotifLeaves make_leaves(const std::array<double, 8>& values);

struct SotifResult {
  double p_fi = 0.0;  // p_is + p_pl
  double p_ub = 0.0;  // p_tc * (p_fi + p_sm)
  double p_h = 0.0;   // (p_fs + p_ub) * p_scs * p_ip + p_ode
};

struct HarmEvaluation {
  SotifResult result;
  std::vector<Finding> findings;
};

/// Additive harm model. Intermediates above 1 produce SOTIF-SUPRA-UNIT (warning);
/// in strict mode StrictModelViolation is thrown instead.
HarmEvaluation compute_harm(const SotifLeaves& leaves, bool strict = false);

enum class Comparator : std::uint8_t { Le, Lt, Ge, Gt };

std::string_view to_string(Comparator c) noexcept;
std::optional<Comparator> parse_comparator(std::string_view s) noexcept;

struct ValidationTarget {
  std::string name;
  std::string symbol;
  double threshold = 0.0;
  Comparator comparator = Comparator::Le;

  friend bool operator==(const ValidationTarget&, const ValidationTarget&) = default;
};

/// Performance-limitation budget applied when no explicit p_pl target exists.
inline constexpr double kPerformanceLimitationBudget = 1e-8;
ValidationTarget default_pl_target();

struct SotifTargetVerdict {
  ValidationTarget target;
  double observed = 0.0;
  bool passes = false;
};

/// One verdict per target, with the default p_pl budget prepended when none targets p_pl.
/// Throws UnknownSymbol for a target naming no modeled symbol.
std::vector<SotifTargetVerdict> check_sotif_targets(const SotifLeaves& leaves,
                                                    const SotifResult& result,
                                                    const std::vector<ValidationTarget>& targets);

/// Analytic partial derivatives of p_h, keyed by leaf symbol.
std::map<std::string, double> sensitivity(const SotifLeaves& leaves);

struct MonteCarloEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t harm_count = 0;
};

/// Event simulation of the harm tree with independent leaf events.
///
/// Trial t draws its eight uniforms from SplitMix64 keyed on (seed, t), so the result
/// depends only on (leaves, samples, seed), never on `workers`. workers == 0 picks the
/// hardware concurrency. Throws DomainError when samples == 0.
MonteCarloEstimate monte_carlo_harm(const SotifLeaves& leaves, std::uint64_t samples,
                                    std::uint64_t seed, unsigned workers = 0);

}  // namespace fusa
