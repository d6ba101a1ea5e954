#include "fusa/core.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>

namespace fusa {

std::string_view to_string(Asil a) noexcept {
  switch (a) {
    case Asil::QM: return "QM";
    case Asil::A: return "A";
    case Asil::B: return "B";
    case Asil::C: return "C";
    case Asil::D: return "D";
  }
  return "?";
}

std::optional<Asil> parse_asil(std::string_view s) noexcept {
  if (s == "QM") return Asil::QM;
  if (s == "A") return Asil::A;
  if (s == "B") return Asil::B;
  if (s == "C") return Asil::C;
  if (s == "D") return Asil::D;
  return std::nullopt;
}

std::string_view to_string(RateUnit u) noexcept {
  return u == RateUnit::FIT ? "FIT" : "per_hour";
}

std::optional<RateUnit> parse_rate_unit(std::string_view s) noexcept {
  if (s == "FIT") return RateUnit::FIT;
  if (s == "per_hour") return RateUnit::PerHour;
  return std::nullopt;
}

FailureRate FailureRate::per_hour(double v) {
  if (!std::isfinite(v) || v < 0.0)
    throw DomainError("failure rate must be finite and >= 0, got " + format_double(v));
  return FailureRate(v);
}

FailureRate FailureRate::fit(double v) {
  if (!std::isfinite(v) || v < 0.0)
    throw DomainError("failure rate must be finite and >= 0, got " + format_double(v));
  // Division by the exact 1e9 keeps FIT -> per_hour -> FIT within 1 ulp.
  return FailureRate(v / 1e9);
}

FailureRate FailureRate::from(double v, RateUnit unit) {
  return unit == RateUnit::FIT ? fit(v) : per_hour(v);
}

UnitInterval::UnitInterval(double v) : value_(v) {
  if (!std::isfinite(v) || v < 0.0 || v > 1.0)
    throw DomainError("value must lie in [0, 1], got " + format_double(v));
}

std::string_view to_string(Severity s) noexcept {
  switch (s) {
    case Severity::Info: return "info";
    case Severity::Warning: return "warning";
    case Severity::Error: return "error";
  }
  return "?";
}

void sort_findings(std::vector<Finding>& findings) {
  std::stable_sort(findings.begin(), findings.end(), [](const Finding& a, const Finding& b) {
    if (a.rule_id != b.rule_id) return a.rule_id < b.rule_id;
    if (a.subject != b.subject) return a.subject < b.subject;
    return a.message < b.message;
  });
}

bool has_errors(const std::vector<Finding>& findings) noexcept {
  return std::any_of(findings.begin(), findings.end(),
                     [](const Finding& f) { return f.severity == Severity::Error; });
}

bool has_warnings(const std::vector<Finding>& findings) noexcept {
  return std::any_of(findings.begin(), findings.end(),
                     [](const Finding& f) { return f.severity == Severity::Warning; });
}

std::size_t count_rule(const std::vector<Finding>& findings, std::string_view rule_id) noexcept {
  return static_cast<std::size_t>(std::count_if(
      findings.begin(), findings.end(), [&](const Finding& f) { return f.rule_id == rule_id; }));
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc{}) return "?";
  return std::string(buf.data(), ptr);
}

void KahanSum::add(double x) noexcept {
  const double t = sum_ + x;
  if (std::fabs(sum_) >= std::fabs(x))
    comp_ += (sum_ - t) + x;
  else
    comp_ += (x - t) + sum_;
  sum_ = t;
}

}  // namespace fusa
