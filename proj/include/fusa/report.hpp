#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "fusa/model.hpp"

namespace fusa {

inline constexpr std::string_view kToolVersion = "0.1.0";
inline constexpr std::string_view kReportSchema = "fusa-report/1";

/// Report sections in output order.
enum class Section : std::uint8_t { Validation, Rigor, StateMachines, Hara, Hw, Frc, Sotif, Trace, Cca };

std::string_view to_string(Section s) noexcept;

enum class Verdict : std::uint8_t { Pass, PassWithWarnings, Fail };

std::string_view to_string(Verdict v) noexcept;

struct AnalysisOptions {
  bool strict = false;
  std::uint64_t seed = 0;
  std::uint64_t mc_samples = 100000;
  double cca_threshold = 0.8;
  unsigned mc_workers = 0;
};

struct MachineReport {
  std::string name;
  std::vector<Finding> findings;
};

struct HwSection {
  std::size_t rows = 0;
  Asil target_asil = Asil::QM;
  std::optional<HwMetricsResult> metrics;  // empty when there are no FMEDA rows
  std::vector<MetricVerdict> verdicts;
};

struct FrcEntry {
  std::string row_id;
  Asil goal_asil = Asil::QM;
  std::optional<FrcVerdict> verdict;  // empty when FRC does not apply to the goal ASIL
};

struct SotifSection {
  bool has_leaves = false;
  std::optional<SotifResult> result;
  std::vector<SotifTargetVerdict> targets;
  std::map<std::string, double> sensitivities;
  std::optional<MonteCarloEstimate> monte_carlo;
  std::uint64_t seed = 0;
  std::vector<Finding> findings;
};

struct TraceSection {
  std::vector<Finding> findings;
  std::map<std::string, std::set<std::string>> hazard_to_test;
};

struct CcaSection {
  bool has_case = false;
  std::optional<CcaResult> result;
  double threshold = 0.8;
  std::vector<Finding> findings;
};

struct AnalysisReport {
  std::string model_name;
  std::string tool_version{kToolVersion};
  std::set<Section> sections;

  std::vector<Finding> validation;
  std::optional<RigorScore> rigor;
  std::vector<Finding> signal_findings;
  std::vector<MachineReport> machines;
  std::vector<Finding> hara;
  HwSection hw;
  std::vector<FrcEntry> frc;
  SotifSection sotif;
  TraceSection trace;
  CcaSection cca;

  Verdict overall_verdict = Verdict::Pass;

  /// Every finding of the sections that ran.
  std::vector<Finding> all_findings() const;
  /// True when a quantitative target (hardware metric, FRC, SOTIF target) failed.
  bool any_failed_target() const;
};

/// Runs the requested analyses over a loaded model and sets the overall verdict.
/// `load_warnings` are reported in the validation section.
AnalysisReport build_report(const SafetyModel& model, const std::set<Section>& sections,
                            const AnalysisOptions& options,
                            const std::vector<Finding>& load_warnings = {});

/// fail on any error finding or failed target; pass_with_warnings on warnings only.
Verdict compute_verdict(const AnalysisReport& report);

enum class ReportFormat : std::uint8_t { Text, Json };

std::string emit_report(const AnalysisReport& report, ReportFormat format);

}  // namespace fusa
