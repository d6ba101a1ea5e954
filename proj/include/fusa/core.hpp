#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fusa {

// -----------------------------
// Errors
// -----------------------------
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed model text. Line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(what), line_(line), column_(column) {}
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Missing key, wrong JSON kind, or a value outside its domain. `path` names the entity.
class SchemaError : public Error {
 public:
  SchemaError(std::string path, const std::string& what)
      : Error(path + ": " + what), path_(std::move(path)) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

/// Dangling or duplicate id.
class ReferenceError : public Error {
 public:
  ReferenceError(std::string id, const std::string& what)
      : Error(what), id_(std::move(id)) {}
  const std::string& id() const noexcept { return id_; }

 private:
  std::string id_;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class EmptyInput : public Error {
 public:
  using Error::Error;
};

// -----------------------------
// Asil
// -----------------------------
enum class Asil : std::uint8_t { QM = 0, A = 1, B = 2, C = 3, D = 4 };

std::string_view to_string(Asil a) noexcept;
std::optional<Asil> parse_asil(std::string_view s) noexcept;

// -----------------------------
// FailureRate
// -----------------------------
enum class RateUnit : std::uint8_t { FIT, PerHour };

std::string_view to_string(RateUnit u) noexcept;
std::optional<RateUnit> parse_rate_unit(std::string_view s) noexcept;

/// Nonnegative failure rate. Stored canonically per hour; 1 FIT = 1e-9 per hour.
class FailureRate {
 public:
  constexpr FailureRate() = default;

  static FailureRate per_hour(double v);
  static FailureRate fit(double v);
  static FailureRate from(double v, RateUnit unit);

  double per_hour() const noexcept { return per_hour_; }
  double fit() const noexcept { return per_hour_ * 1e9; }
  double in(RateUnit unit) const noexcept { return unit == RateUnit::FIT ? fit() : per_hour_; }

  friend bool operator==(const FailureRate&, const FailureRate&) = default;
  friend auto operator<=>(const FailureRate&, const FailureRate&) = default;

 private:
  explicit constexpr FailureRate(double v) : per_hour_(v) {}
  double per_hour_ = 0.0;
};

// -----------------------------
// UnitInterval
// -----------------------------
class UnitInterval {
 public:
  constexpr UnitInterval() = default;
  /// Throws DomainError unless 0 <= v <= 1 and finite.
  explicit UnitInterval(double v);

  double value() const noexcept { return value_; }

  friend bool operator==(const UnitInterval&, const UnitInterval&) = default;
  friend auto operator<=>(const UnitInterval&, const UnitInterval&) = default;

 private:
  double value_ = 0.0;
};

// -----------------------------
// Findings
// -----------------------------
enum class Severity : std::uint8_t { Info = 0, Warning = 1, Error = 2 };

std::string_view to_string(Severity s) noexcept;

struct Finding {
  std::string rule_id;
  Severity severity = Severity::Info;
  std::string subject;
  std::string message;

  friend bool operator==(const Finding&, const Finding&) = default;
};

/// Orders by (rule_id, subject, message); stable for equal keys.
void sort_findings(std::vector<Finding>& findings);

bool has_errors(const std::vector<Finding>& findings) noexcept;
bool has_warnings(const std::vector<Finding>& findings) noexcept;
std::size_t count_rule(const std::vector<Finding>& findings, std::string_view rule_id) noexcept;

/// Shortest decimal text that reparses to the same double.
std::string format_double(double v);

/// Neumaier compensated sum.
class KahanSum {
 public:
  void add(double x) noexcept;
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace fusa
