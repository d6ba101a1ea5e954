#include "fusa/sotif.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace fusa {

bool is_sotif_symbol(std::string_view s) noexcept {
  return std::find(kLeafSymbols.begin(), kLeafSymbols.end(), s) != kLeafSymbols.end() ||
         std::find(kDerivedSymbols.begin(), kDerivedSymbols.end(), s) != kDerivedSymbols.end();
}

std::optional<double> leaf_value(const SotifLeaves& l, std::string_view s) noexcept {
  if (s == "p_fs") return l.p_fs.value();
  if (s == "p_tc") return l.p_tc.value();
  if (s == "p_is") return l.p_is.value();
  if (s == "p_pl") return l.p_pl.value();
  if (s == "p_sm") return l.p_sm.value();
  if (s == "p_scs") return l.p_scs.value();
  if (s == "p_ip") return l.p_ip.value();
  if (s == "p_ode") return l.p_ode.value();
  return std::nullopt;
}

SotifLeaves make_leaves(const std::array<double, 8>& v) {
  return SotifLeaves{UnitInterval(v[0]), UnitInterval(v[1]), UnitInterval(v[2]),
                     UnitInterval(v[3]), UnitInterval(v[4]), UnitInterval(v[5]),
                     UnitInterval(v[6]), UnitInterval(v[7])};
}

HarmEvaluation compute_harm(const SotifLeaves& l, bool strict) {
  HarmEvaluation ev;
  auto& r = ev.result;
  r.p_fi = l.p_is.value() + l.p_pl.value();
  const double fi_sm = r.p_fi + l.p_sm.value();
  r.p_ub = l.p_tc.value() * fi_sm;
  const double fs_ub = l.p_fs.value() + r.p_ub;
  r.p_h = fs_ub * l.p_scs.value() * l.p_ip.value() + l.p_ode.value();

  const std::array<std::pair<std::string_view, double>, 4> intermediates = {{
      {"p_fi", r.p_fi},
      {"p_fi + p_sm", fi_sm},
      {"p_fs + p_ub", fs_ub},
      {"p_h", r.p_h},
  }};
  for (const auto& [name, value] : intermediates) {
    if (value <= 1.0) continue;
    const std::string msg = std::string(name) + " = " + format_double(value) +
                            " exceeds 1; the additive model is only valid for rare events";
    if (strict) throw StrictModelViolation(msg);
    ev.findings.push_back({"SOTIF-SUPRA-UNIT", Severity::Warning, "sotif", msg});
  }
  return ev;
}

std::string_view to_string(Comparator c) noexcept {
  switch (c) {
    case Comparator::Le: return "le";
    case Comparator::Lt: return "lt";
    case Comparator::Ge: return "ge";
    case Comparator::Gt: return "gt";
  }
  return "?";
}

std::optional<Comparator> parse_comparator(std::string_view s) noexcept {
  if (s == "le") return Comparator::Le;
  if (s == "lt") return Comparator::Lt;
  if (s == "ge") return Comparator::Ge;
  if (s == "gt") return Comparator::Gt;
  return std::nullopt;
}

ValidationTarget default_pl_target() {
  return {"PL-GAMAB", "p_pl", kPerformanceLimitationBudget, Comparator::Le};
}

namespace {

double symbol_value(const SotifLeaves& leaves, const SotifResult& result, std::string_view s) {
  if (auto v = leaf_value(leaves, s)) return *v;
  if (s == "p_fi") return result.p_fi;
  if (s == "p_ub") return result.p_ub;
  if (s == "p_h") return result.p_h;
  throw UnknownSymbol("unknown harm-model symbol '" + std::string(s) + "'");
}

bool compare(double observed, Comparator c, double threshold) noexcept {
  switch (c) {
    case Comparator::Le: return observed <= threshold;
    case Comparator::Lt: return observed < threshold;
    case Comparator::Ge: return observed >= threshold;
    case Comparator::Gt: return observed > threshold;
  }
  return false;
}

}  // namespace

std::vector<SotifTargetVerdict> check_sotif_targets(const SotifLeaves& leaves,
                                                    const SotifResult& result,
                                                    const std::vector<ValidationTarget>& targets) {
  std::vector<ValidationTarget> all;
  const bool explicit_pl = std::any_of(targets.begin(), targets.end(),
                                       [](const ValidationTarget& t) { return t.symbol == "p_pl"; });
  if (!explicit_pl) all.push_back(default_pl_target());
  all.insert(all.end(), targets.begin(), targets.end());

  std::vector<SotifTargetVerdict> out;
  out.reserve(all.size());
  for (auto& t : all) {
    SotifTargetVerdict v;
    v.observed = symbol_value(leaves, result, t.symbol);
    v.passes = compare(v.observed, t.comparator, t.threshold);
    v.target = std::move(t);
    out.push_back(std::move(v));
  }
  return out;
}

std::map<std::string, double> sensitivity(const SotifLeaves& l) {
  const double tc = l.p_tc.value();
  const double scs = l.p_scs.value();
  const double ip = l.p_ip.value();
  const double fi_sm = l.p_is.value() + l.p_pl.value() + l.p_sm.value();
  const double fs_ub = l.p_fs.value() + tc * fi_sm;
  const double through_tc = tc * scs * ip;
  return {
      {"p_fs", scs * ip},
      {"p_tc", fi_sm * scs * ip},
      {"p_is", through_tc},
      {"p_pl", through_tc},
      {"p_sm", through_tc},
      {"p_scs", fs_ub * ip},
      {"p_ip", fs_ub * scs},
      {"p_ode", 1.0},
  };
}

namespace {

constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

/// SplitMix64 output number `index` (0-based) of the stream seeded with `seed`.
constexpr std::uint64_t splitmix64_at(std::uint64_t seed, std::uint64_t index) noexcept {
  std::uint64_t z = seed + (index + 1) * kGamma;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

constexpr double to_unit(std::uint64_t x) noexcept {
  return static_cast<double>(x >> 11) * 0x1.0p-53;
}

std::uint64_t count_harm(const std::array<double, 8>& p, std::uint64_t seed, std::uint64_t begin,
                         std::uint64_t end) {
  std::uint64_t hits = 0;
  for (std::uint64_t t = begin; t < end; ++t) {
    std::array<bool, 8> e{};
    for (std::uint64_t k = 0; k < 8; ++k) e[k] = to_unit(splitmix64_at(seed, 8 * t + k)) < p[k];
    const bool fs = e[0], tc = e[1], is = e[2], pl = e[3], sm = e[4], scs = e[5], ip = e[6],
               ode = e[7];
    const bool harm = ((fs || (tc && (is || pl || sm))) && scs && ip) || ode;
    hits += harm ? 1 : 0;
  }
  return hits;
}

}  // namespace

MonteCarloEstimate monte_carlo_harm(const SotifLeaves& l, std::uint64_t samples,
                                    std::uint64_t seed, unsigned workers) {
  if (samples == 0) throw DomainError("Monte-Carlo needs at least one sample");
  const std::array<double, 8> p = {l.p_fs.value(), l.p_tc.value(),  l.p_is.value(),
                                   l.p_pl.value(), l.p_sm.value(),  l.p_scs.value(),
                                   l.p_ip.value(), l.p_ode.value()};

  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, samples));

  std::vector<std::uint64_t> counts(workers, 0);
  if (workers == 1) {
    counts[0] = count_harm(p, seed, 0, samples);
  } else {
    std::vector<std::thread> pool;
    const std::uint64_t chunk = samples / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::uint64_t begin = w * chunk;
      const std::uint64_t end = (w + 1 == workers) ? samples : begin + chunk;
      pool.emplace_back([&, w, begin, end] { counts[w] = count_harm(p, seed, begin, end); });
    }
    for (auto& t : pool) t.join();
  }

  MonteCarloEstimate m;
  m.samples = samples;
  for (auto c : counts) m.harm_count += c;
  m.estimate = static_cast<double>(m.harm_count) / static_cast<double>(samples);
  m.std_error = std::sqrt(m.estimate * (1.0 - m.estimate) / static_cast<double>(samples));
  return m;
}

}  // namespace fusa
