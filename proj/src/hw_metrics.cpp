#include "fusa/hw_metrics.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <string>

namespace fusa {

std::string_view to_string(Metric m) noexcept {
  switch (m) {
    case Metric::SPFM: return "SPFM";
    case Metric::LFM: return "LFM";
    case Metric::PMHF: return "PMHF";
  }
  return "?";
}

std::string_view to_string(TargetVerdict v) noexcept {
  switch (v) {
    case TargetVerdict::Pass: return "pass";
    case TargetVerdict::Fail: return "fail";
    case TargetVerdict::NoTarget: return "no target";
  }
  return "?";
}

RowPartition classify_fmeda_row(const FmedaRow& row) {
  RowPartition p;
  const double total = row.lambda_total.per_hour();
  if (!row.safety_related) {
    p.lambda_safe = row.lambda_total;
    return p;
  }

  double pool = total;
  if (row.can_violate_goal_directly) {
    if (!row.dc_residual) {
      p.lambda_spf = row.lambda_total;
      return p;
    }
    const double dc = row.dc_residual->value();
    p.lambda_rf = FailureRate::per_hour(total * (1.0 - dc));
    pool = total * dc;
  }

  if (row.can_be_latent) {
    const double dc = row.dc_latent ? row.dc_latent->value() : 0.0;
    p.lambda_mpf_latent = FailureRate::per_hour(pool * (1.0 - dc));
    p.lambda_mpf_detected = FailureRate::per_hour(pool * dc);
  } else {
    p.lambda_safe = FailureRate::per_hour(pool);
  }
  return p;
}

HwMetricsResult compute_hw_metrics(const std::vector<FmedaRow>& rows) {
  if (rows.empty()) throw EmptyInput("hardware metrics need at least one FMEDA row");

  // Each ratio subtracts whichever share is smaller, so neither cancels near 0 or 1.
  KahanSum sr, spf, rf, latent, pool, not_latent;
  for (const auto& row : rows) {
    if (!row.safety_related) continue;
    const auto p = classify_fmeda_row(row);
    sr.add(row.lambda_total.per_hour());
    spf.add(p.lambda_spf.per_hour());
    rf.add(p.lambda_rf.per_hour());
    latent.add(p.lambda_mpf_latent.per_hour());
    pool.add(p.lambda_mpf_latent.per_hour());
    pool.add(p.lambda_mpf_detected.per_hour());
    pool.add(p.lambda_safe.per_hour());
    not_latent.add(p.lambda_mpf_detected.per_hour());
    not_latent.add(p.lambda_safe.per_hour());
  }

  const double sr_total = sr.value();
  const double direct = spf.value() + rf.value();
  const auto share = [](double kept, double lost) {
    const double whole = kept + lost;
    if (whole <= 0.0) return 1.0;
    return lost <= kept ? 1.0 - lost / whole : kept / whole;
  };
  const double spfm = sr_total > 0.0 ? share(pool.value(), direct) : 1.0;
  const double lfm = share(not_latent.value(), latent.value());

  HwMetricsResult r;
  r.spfm = UnitInterval(std::clamp(spfm, 0.0, 1.0));
  r.lfm = UnitInterval(std::clamp(lfm, 0.0, 1.0));
  r.pmhf = FailureRate::per_hour(direct);
  r.lambda_sr_total = FailureRate::per_hour(sr_total);
  r.lambda_spf_total = FailureRate::per_hour(spf.value());
  r.lambda_rf_total = FailureRate::per_hour(rf.value());
  r.lambda_mpf_latent_total = FailureRate::per_hour(latent.value());
  return r;
}

std::optional<double> metric_target(Metric m, Asil asil) noexcept {
  // Rows: B, C, D.
  static constexpr std::array<double, 3> kSpfm = {0.90, 0.97, 0.99};
  static constexpr std::array<double, 3> kLfm = {0.60, 0.80, 0.90};
  static constexpr std::array<double, 3> kPmhf = {1e-7, 1e-7, 1e-8};
  if (asil < Asil::B) return std::nullopt;
  const auto i = static_cast<std::size_t>(asil) - static_cast<std::size_t>(Asil::B);
  switch (m) {
    case Metric::SPFM: return kSpfm[i];
    case Metric::LFM: return kLfm[i];
    case Metric::PMHF: return kPmhf[i];
  }
  return std::nullopt;
}

std::vector<MetricVerdict> check_metric_targets(const HwMetricsResult& result, Asil asil) {
  std::vector<MetricVerdict> out;
  const std::array<std::pair<Metric, double>, 3> observed = {{
      {Metric::SPFM, result.spfm.value()},
      {Metric::LFM, result.lfm.value()},
      {Metric::PMHF, result.pmhf.per_hour()},
  }};
  for (const auto& [metric, value] : observed) {
    MetricVerdict v;
    v.metric = metric;
    v.observed = value;
    v.target = metric_target(metric, asil);
    if (v.target) {
      const bool ok = metric == Metric::PMHF ? value < *v.target : value >= *v.target;
      v.verdict = ok ? TargetVerdict::Pass : TargetVerdict::Fail;
    }
    out.push_back(v);
  }
  return out;
}

FailureRate frc_target(int class_index) {
  if (class_index < 1)
    throw InvalidClass("failure rate class must be >= 1, got " + std::to_string(class_index));
  // 10^(i-1) * 1e-10 == 1e(i-11); parsing the literal gives the correctly rounded power of ten.
  const std::string literal = "1e" + std::to_string(class_index - 11);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(literal.data(), literal.data() + literal.size(), v);
  if (ec != std::errc{} || !std::isfinite(v))
    throw InvalidClass("failure rate class " + std::to_string(class_index) + " is out of range");
  return FailureRate::per_hour(v);
}

FrcVerdict check_frc(const FmedaRow& row, Asil goal_asil) {
  if (!row.safety_related || !row.can_violate_goal_directly)
    throw NotApplicable("row '" + row.id + "' cannot directly violate a safety goal");
  if (goal_asil < Asil::B)
    throw NotApplicable("failure rate classes apply to ASIL B, C and D goals only");

  // Columns: DC >= 99.9 %, >= 99 %, >= 90 %, < 90 % (or no mechanism).
  static constexpr std::array<std::array<int, 4>, 3> kClass = {{
      {5, 4, 3, 2},  // B
      {5, 4, 3, 2},  // C
      {4, 3, 2, 1},  // D
  }};
  static constexpr std::array<std::array<bool, 4>, 3> kDedicated = {{
      {false, false, false, false},
      {false, false, false, true},
      {false, false, false, true},
  }};

  std::size_t band = 3;
  if (row.dc_residual) {
    const double dc = row.dc_residual->value();
    if (dc >= 0.999)
      band = 0;
    else if (dc >= 0.99)
      band = 1;
    else if (dc >= 0.90)
      band = 2;
  }
  const auto asil_row = static_cast<std::size_t>(goal_asil) - static_cast<std::size_t>(Asil::B);

  FrcVerdict v;
  v.required_class = kClass[asil_row][band];
  v.dedicated_measures_required = kDedicated[asil_row][band];
  v.class_target = frc_target(v.required_class);
  v.observed_residual = row.lambda_total;
  const double observed = row.lambda_total.per_hour();
  const double target = v.class_target.per_hour();
  v.passes = v.required_class == 1 ? observed < target : observed <= target;
  return v;
}

}  // namespace fusa
