#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fusa/core.hpp"

namespace fusa {

class InvalidClass : public Error {
 public:
  using Error::Error;
};

class NotApplicable : public Error {
 public:
  using Error::Error;
};

struct FmedaRow {
  std::string id;
  std::string component_id;
  std::string failure_mode;
  FailureRate lambda_total;
  bool safety_related = false;
  bool can_violate_goal_directly = false;
  std::optional<UnitInterval> dc_residual;  // present => a safety mechanism covers direct violation
  bool can_be_latent = false;
  std::optional<UnitInterval> dc_latent;  // only meaningful with can_be_latent
  std::optional<std::string> safety_goal;  // goal this mode can violate (drives the FRC ASIL)

  friend bool operator==(const FmedaRow&, const FmedaRow&) = default;
};

/// Split of one row's rate into fault classes (all per hour).
struct RowPartition {
  FailureRate lambda_spf;
  FailureRate lambda_rf;
  FailureRate lambda_mpf_latent;
  FailureRate lambda_mpf_detected;
  FailureRate lambda_safe;

  double sum_per_hour() const noexcept {
    return lambda_spf.per_hour() + lambda_rf.per_hour() + lambda_mpf_latent.per_hour() +
           lambda_mpf_detected.per_hour() + lambda_safe.per_hour();
  }
};

RowPartition classify_fmeda_row(const FmedaRow& row);

struct HwMetricsResult {
  UnitInterval spfm;
  UnitInterval lfm;
  FailureRate pmhf;
  FailureRate lambda_sr_total;
  FailureRate lambda_spf_total;
  FailureRate lambda_rf_total;
  FailureRate lambda_mpf_latent_total;
};

/// SPFM = 1 - (spf + rf) / sr, LFM = 1 - latent / (sr - spf - rf), PMHF = spf + rf.
/// Either ratio is 1 when its denominator is 0. Sums are compensated, so the result
/// does not depend on row order beyond rounding of the final divisions.
/// Throws EmptyInput when `rows` is empty.
HwMetricsResult compute_hw_metrics(const std::vector<FmedaRow>& rows);

enum class Metric : std::uint8_t { SPFM, LFM, PMHF };
enum class TargetVerdict : std::uint8_t { Pass, Fail, NoTarget };

std::string_view to_string(Metric m) noexcept;
std::string_view to_string(TargetVerdict v) noexcept;

struct MetricVerdict {
  Metric metric = Metric::SPFM;
  TargetVerdict verdict = TargetVerdict::NoTarget;
  double observed = 0.0;
  std::optional<double> target;  // SPFM/LFM: inclusive lower bound; PMHF: strict upper bound per hour
};

/// Target value of one hardware metric for an ASIL, if the ASIL carries one (B, C, D).
std::optional<double> metric_target(Metric m, Asil asil) noexcept;

/// Verdicts for SPFM, LFM, PMHF in that order.
std::vector<MetricVerdict> check_metric_targets(const HwMetricsResult& result, Asil asil);

/// Failure-rate-class target: class 1 is the ASIL D PMHF target over 100 (1e-10/h),
/// class i is 10^(i-1) times class 1. Throws InvalidClass for i < 1 or overflow.
FailureRate frc_target(int class_index);

struct FrcVerdict {
  int required_class = 1;
  FailureRate class_target;
  FailureRate observed_residual;  // the part's failure rate compared against the class target
  bool passes = false;
  bool dedicated_measures_required = false;
};

/// Throws NotApplicable when the row cannot directly violate a goal or the goal is QM/A.
FrcVerdict check_frc(const FmedaRow& row, Asil goal_asil);

}  // namespace fusa
