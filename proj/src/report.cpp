#include "fusa/report.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

namespace fusa {

std::string_view to_string(Section s) noexcept {
  switch (s) {
    case Section::Validation: return "validation";
    case Section::Rigor: return "rigor";
    case Section::StateMachines: return "state machines";
    case Section::Hara: return "hara";
    case Section::Hw: return "hw metrics";
    case Section::Frc: return "frc";
    case Section::Sotif: return "sotif";
    case Section::Trace: return "trace";
    case Section::Cca: return "cca";
  }
  return "?";
}

std::string_view to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::PassWithWarnings: return "pass_with_warnings";
    case Verdict::Fail: return "fail";
  }
  return "?";
}

std::vector<Finding> AnalysisReport::all_findings() const {
  std::vector<Finding> out;
  const auto add = [&](const std::vector<Finding>& f) { out.insert(out.end(), f.begin(), f.end()); };
  add(validation);
  add(signal_findings);
  for (const auto& m : machines) add(m.findings);
  add(hara);
  add(sotif.findings);
  add(trace.findings);
  add(cca.findings);
  return out;
}

bool AnalysisReport::any_failed_target() const {
  for (const auto& v : hw.verdicts)
    if (v.verdict == TargetVerdict::Fail) return true;
  for (const auto& e : frc)
    if (e.verdict && !e.verdict->passes) return true;
  for (const auto& t : sotif.targets)
    if (!t.passes) return true;
  return false;
}

Verdict compute_verdict(const AnalysisReport& report) {
  const auto findings = report.all_findings();
  if (has_errors(findings) || report.any_failed_target()) return Verdict::Fail;
  if (has_warnings(findings)) return Verdict::PassWithWarnings;
  return Verdict::Pass;
}

namespace {

void run_sotif(const SafetyModel& model, const AnalysisOptions& opt, SotifSection& s) {
  s.seed = opt.seed;
  s.has_leaves = model.sotif.has_value();
  if (!model.sotif) {
    for (const auto& t : model.targets)
      s.findings.push_back({"SOTIF-NO-LEAVES", Severity::Warning, t.name,
                            "target cannot be checked because the model declares no SOTIF leaves"});
    return;
  }
  const auto& leaves = *model.sotif;
  try {
    auto ev = compute_harm(leaves, opt.strict);
    s.result = ev.result;
    s.findings = std::move(ev.findings);
  } catch (const StrictModelViolation& e) {
    s.findings.push_back({"SOTIF-SUPRA-UNIT", Severity::Error, "sotif", e.what()});
    return;
  }
  s.targets = check_sotif_targets(leaves, *s.result, model.targets);
  s.sensitivities = sensitivity(leaves);
  s.monte_carlo = monte_carlo_harm(leaves, opt.mc_samples, opt.seed, opt.mc_workers);
}

void run_cca(const SafetyModel& model, const AnalysisOptions& opt, CcaSection& c) {
  c.threshold = opt.cca_threshold;
  c.has_case = model.safety_case.has_value();
  if (!model.safety_case) return;
  try {
    c.result = assess_cca(*model.safety_case);
    c.findings = find_case_gaps(*model.safety_case, *c.result, opt.cca_threshold);
  } catch (const CyclicCase& e) {
    c.findings.push_back({"CCA-CYCLE", Severity::Error, model.safety_case->root, e.what()});
  }
}

}  // namespace

AnalysisReport build_report(const SafetyModel& model, const std::set<Section>& sections,
                            const AnalysisOptions& opt, const std::vector<Finding>& load_warnings) {
  AnalysisReport r;
  r.model_name = model.item.name;
  r.sections = sections;
  const auto on = [&](Section s) { return sections.count(s) > 0; };

  if (on(Section::Validation)) {
    r.validation = load_warnings;
    const auto v = validate_model(model);
    r.validation.insert(r.validation.end(), v.begin(), v.end());
    sort_findings(r.validation);
  }
  if (on(Section::Rigor)) {
    r.rigor = score_item_rigor(model.item, model.state_machines);
    r.signal_findings = check_signals(model.item);
  }
  if (on(Section::StateMachines))
    for (const auto& sm : model.state_machines) r.machines.push_back({sm.name, validate_state_machine(sm)});
  if (on(Section::Hara)) r.hara = check_hara(model);

  if (on(Section::Hw)) {
    r.hw.rows = model.fmeda.size();
    r.hw.target_asil = hardware_target_asil(model);
    if (!model.fmeda.empty()) {
      r.hw.metrics = compute_hw_metrics(model.fmeda);
      r.hw.verdicts = check_metric_targets(*r.hw.metrics, r.hw.target_asil);
    }
  }
  if (on(Section::Frc)) {
    const Asil fallback = hardware_target_asil(model);
    for (const auto& row : model.fmeda) {
      if (!row.safety_related || !row.can_violate_goal_directly) continue;
      FrcEntry e;
      e.row_id = row.id;
      const SafetyGoal* g = row.safety_goal ? model.find_goal(*row.safety_goal) : nullptr;
      e.goal_asil = g ? g->asil : fallback;
      if (e.goal_asil >= Asil::B) e.verdict = check_frc(row, e.goal_asil);
      r.frc.push_back(std::move(e));
    }
  }
  if (on(Section::Sotif)) run_sotif(model, opt, r.sotif);
  if (on(Section::Trace)) {
    const auto graph = build_trace_graph(model);
    r.trace.findings = check_traceability(graph);
    const auto cycles = detect_cycles(graph);
    r.trace.findings.insert(r.trace.findings.end(), cycles.begin(), cycles.end());
    sort_findings(r.trace.findings);
    r.trace.hazard_to_test = trace_matrix(graph, NodeKind::Hazard, NodeKind::Test);
  }
  if (on(Section::Cca)) run_cca(model, opt, r.cca);

  r.overall_verdict = compute_verdict(r);
  return r;
}

// -----------------------------
// Text
// -----------------------------
namespace {

std::string num(double v) { return format_double(v); }

void write_findings(std::ostream& os, const std::vector<Finding>& findings, std::string_view indent = "  ") {
  if (findings.empty()) {
    os << indent << "no findings\n";
    return;
  }
  for (const auto& f : findings)
    os << indent << "[" << to_string(f.severity) << "] " << f.rule_id << " " << f.subject << ": "
       << f.message << "\n";
}

std::string_view comparator_text(Comparator c) {
  switch (c) {
    case Comparator::Le: return "<=";
    case Comparator::Lt: return "<";
    case Comparator::Ge: return ">=";
    case Comparator::Gt: return ">";
  }
  return "?";
}

std::string emit_text(const AnalysisReport& r) {
  std::ostringstream os;
  os << "functional safety report: " << r.model_name << "\n";
  os << "tool: fusacheck " << r.tool_version << "\n";
  const auto on = [&](Section s) { return r.sections.count(s) > 0; };

  if (on(Section::Validation)) {
    os << "\n== validation\n";
    write_findings(os, r.validation);
  }
  if (on(Section::Rigor) && r.rigor) {
    os << "\n== rigor\n";
    os << "  score: " << num(r.rigor->score) << " (" << r.rigor->satisfied << "/" << r.rigor->total << ")\n";
    os << "  missing:";
    if (r.rigor->missing.empty()) os << " none";
    for (const auto& m : r.rigor->missing) os << "\n    " << m;
    os << "\n  signals:\n";
    write_findings(os, r.signal_findings, "    ");
  }
  if (on(Section::StateMachines)) {
    os << "\n== state machines\n";
    if (r.machines.empty()) os << "  no state machines declared\n";
    for (const auto& m : r.machines) {
      os << "  " << m.name << ":\n";
      write_findings(os, m.findings, "    ");
    }
  }
  if (on(Section::Hara)) {
    os << "\n== hara\n";
    write_findings(os, r.hara);
  }
  if (on(Section::Hw)) {
    os << "\n== hw metrics\n";
    os << "  rows: " << r.hw.rows << "\n";
    os << "  target ASIL: " << to_string(r.hw.target_asil) << "\n";
    if (!r.hw.metrics) {
      os << "  no FMEDA rows declared\n";
    } else {
      const auto& m = *r.hw.metrics;
      os << "  lambda safety-related: " << num(m.lambda_sr_total.per_hour()) << " /h\n";
      os << "  lambda single-point: " << num(m.lambda_spf_total.per_hour()) << " /h\n";
      os << "  lambda residual: " << num(m.lambda_rf_total.per_hour()) << " /h\n";
      os << "  lambda latent multi-point: " << num(m.lambda_mpf_latent_total.per_hour()) << " /h\n";
      for (const auto& v : r.hw.verdicts) {
        os << "  " << to_string(v.metric) << ": " << num(v.observed);
        if (v.metric == Metric::PMHF) os << " /h";
        if (v.target) os << " (target " << (v.metric == Metric::PMHF ? "< " : ">= ") << num(*v.target) << ")";
        os << " " << to_string(v.verdict) << "\n";
      }
    }
  }
  if (on(Section::Frc)) {
    os << "\n== frc\n";
    if (r.frc.empty()) os << "  no rows can directly violate a safety goal\n";
    for (const auto& e : r.frc) {
      os << "  " << e.row_id << " (goal ASIL " << to_string(e.goal_asil) << "): ";
      if (!e.verdict) {
        os << "not applicable\n";
        continue;
      }
      const auto& v = *e.verdict;
      os << "FRC " << v.required_class << (v.dedicated_measures_required ? " + dedicated measures" : "")
         << ", target " << num(v.class_target.per_hour()) << " /h, rate "
         << num(v.observed_residual.per_hour()) << " /h, " << (v.passes ? "pass" : "fail") << "\n";
    }
  }
  if (on(Section::Sotif)) {
    const auto& s = r.sotif;
    os << "\n== sotif\n";
    if (!s.has_leaves) os << "  no SOTIF leaves declared\n";
    if (s.result) {
      os << "  p_fi: " << num(s.result->p_fi) << "\n";
      os << "  p_ub: " << num(s.result->p_ub) << "\n";
      os << "  p_h: " << num(s.result->p_h) << " /h\n";
    }
    for (const auto& t : s.targets)
      os << "  target " << t.target.name << ": " << t.target.symbol << " = " << num(t.observed) << " "
         << comparator_text(t.target.comparator) << " " << num(t.target.threshold) << " "
         << (t.passes ? "pass" : "fail") << "\n";
    if (!s.sensitivities.empty()) {
      os << "  sensitivity of p_h:\n";
      for (auto sym : kLeafSymbols)
        os << "    " << sym << ": " << num(s.sensitivities.at(std::string(sym))) << "\n";
    }
    if (s.monte_carlo) {
      os << "  monte carlo: " << num(s.monte_carlo->estimate) << " +/- " << num(s.monte_carlo->std_error)
         << " (samples " << s.monte_carlo->samples << ", seed " << s.seed << ")\n";
    }
    os << "  findings:\n";
    write_findings(os, s.findings, "    ");
  }
  if (on(Section::Trace)) {
    os << "\n== trace\n";
    write_findings(os, r.trace.findings);
    os << "  hazard -> test:\n";
    if (r.trace.hazard_to_test.empty()) os << "    no hazards\n";
    for (const auto& [hazard, tests] : r.trace.hazard_to_test) {
      os << "    " << hazard << ":";
      if (tests.empty()) os << " (none)";
      for (const auto& t : tests) os << " " << t;
      os << "\n";
    }
  }
  if (on(Section::Cca)) {
    const auto& c = r.cca;
    os << "\n== cca\n";
    if (!c.has_case) os << "  no safety case declared\n";
    if (c.result) {
      os << "  root credibility: " << num(c.result->root_credibility) << "\n";
      os << "  threshold: " << num(c.threshold) << "\n";
      os << "  nodes:\n";
      for (const auto& [id, n] : c.result->nodes)
        os << "    " << id << ": " << num(n.credibility) << " (limited by " << n.limiter.node << " "
           << n.limiter.factor << ")\n";
    }
    if (c.has_case) write_findings(os, c.findings);
  }

  os << "\nverdict: " << to_string(r.overall_verdict) << "\n";
  return os.str();
}

// -----------------------------
// JSON
// -----------------------------
using ojson = nlohmann::ordered_json;

ojson findings_json(const std::vector<Finding>& findings) {
  ojson arr = ojson::array();
  for (const auto& f : findings)
    arr.push_back({{"rule_id", f.rule_id},
                   {"severity", std::string(to_string(f.severity))},
                   {"subject", f.subject},
                   {"message", f.message}});
  return arr;
}

std::string emit_json(const AnalysisReport& r) {
  ojson doc;
  doc["schema"] = std::string(kReportSchema);
  doc["tool_version"] = r.tool_version;
  doc["model_name"] = r.model_name;
  doc["sections"] = ojson::array();
  for (auto s : r.sections) doc["sections"].push_back(std::string(to_string(s)));

  doc["validation"] = {{"findings", findings_json(r.validation)}};

  ojson rigor{{"score", nullptr}, {"satisfied", nullptr}, {"total", kRigorCriteria},
              {"missing", ojson::array()}, {"findings", findings_json(r.signal_findings)}};
  if (r.rigor) {
    rigor["score"] = r.rigor->score;
    rigor["satisfied"] = r.rigor->satisfied;
    rigor["missing"] = r.rigor->missing;
  }
  doc["rigor"] = std::move(rigor);

  doc["state_machines"] = ojson::array();
  for (const auto& m : r.machines)
    doc["state_machines"].push_back({{"name", m.name}, {"findings", findings_json(m.findings)}});

  doc["hara"] = {{"findings", findings_json(r.hara)}};

  ojson hw{{"rows", r.hw.rows}, {"target_asil", std::string(to_string(r.hw.target_asil))},
           {"metrics", nullptr}, {"verdicts", ojson::array()}};
  if (r.hw.metrics) {
    const auto& m = *r.hw.metrics;
    hw["metrics"] = {{"spfm", m.spfm.value()},
                     {"lfm", m.lfm.value()},
                     {"pmhf_per_hour", m.pmhf.per_hour()},
                     {"lambda_sr_total_per_hour", m.lambda_sr_total.per_hour()},
                     {"lambda_spf_total_per_hour", m.lambda_spf_total.per_hour()},
                     {"lambda_rf_total_per_hour", m.lambda_rf_total.per_hour()},
                     {"lambda_mpf_latent_total_per_hour", m.lambda_mpf_latent_total.per_hour()}};
  }
  for (const auto& v : r.hw.verdicts) {
    ojson jv{{"metric", std::string(to_string(v.metric))},
             {"observed", v.observed},
             {"target", nullptr},
             {"verdict", std::string(to_string(v.verdict))}};
    if (v.target) jv["target"] = *v.target;
    hw["verdicts"].push_back(std::move(jv));
  }
  doc["hw_metrics"] = std::move(hw);

  doc["frc"] = ojson::array();
  for (const auto& e : r.frc) {
    ojson je{{"row", e.row_id}, {"goal_asil", std::string(to_string(e.goal_asil))}, {"applicable", e.verdict.has_value()}};
    if (e.verdict) {
      je["required_class"] = e.verdict->required_class;
      je["class_target_per_hour"] = e.verdict->class_target.per_hour();
      je["observed_per_hour"] = e.verdict->observed_residual.per_hour();
      je["dedicated_measures_required"] = e.verdict->dedicated_measures_required;
      je["passes"] = e.verdict->passes;
    }
    doc["frc"].push_back(std::move(je));
  }

  const auto& s = r.sotif;
  ojson sotif{{"has_leaves", s.has_leaves}, {"result", nullptr}, {"targets", ojson::array()},
              {"sensitivities", ojson::object()}, {"monte_carlo", nullptr},
              {"findings", findings_json(s.findings)}};
  if (s.result) sotif["result"] = {{"p_fi", s.result->p_fi}, {"p_ub", s.result->p_ub}, {"p_h", s.result->p_h}};
  for (const auto& t : s.targets)
    sotif["targets"].push_back({{"name", t.target.name},
                                {"symbol", t.target.symbol},
                                {"comparator", std::string(to_string(t.target.comparator))},
                                {"threshold", t.target.threshold},
                                {"observed", t.observed},
                                {"passes", t.passes}});
  for (auto sym : kLeafSymbols) {
    auto it = s.sensitivities.find(std::string(sym));
    if (it != s.sensitivities.end()) sotif["sensitivities"][std::string(sym)] = it->second;
  }
  if (s.monte_carlo)
    sotif["monte_carlo"] = {{"estimate", s.monte_carlo->estimate},
                            {"std_error", s.monte_carlo->std_error},
                            {"samples", s.monte_carlo->samples},
                            {"harm_count", s.monte_carlo->harm_count},
                            {"seed", s.seed}};
  doc["sotif"] = std::move(sotif);

  ojson matrix = ojson::object();
  for (const auto& [h, tests] : r.trace.hazard_to_test) matrix[h] = tests;
  doc["trace"] = {{"findings", findings_json(r.trace.findings)}, {"hazard_to_test", std::move(matrix)}};

  const auto& c = r.cca;
  ojson cca{{"has_case", c.has_case}, {"threshold", c.threshold}, {"root_credibility", nullptr},
            {"nodes", ojson::array()}, {"findings", findings_json(c.findings)}};
  if (c.result) {
    cca["root_credibility"] = c.result->root_credibility;
    for (const auto& [id, n] : c.result->nodes)
      cca["nodes"].push_back({{"id", id},
                              {"credibility", n.credibility},
                              {"limited_by", {{"node", n.limiter.node}, {"factor", n.limiter.factor}, {"value", n.limiter.value}}}});
  }
  doc["cca"] = std::move(cca);

  doc["overall_verdict"] = std::string(to_string(r.overall_verdict));
  return doc.dump(2) + "\n";
}

}  // namespace

std::string emit_report(const AnalysisReport& report, ReportFormat format) {
  return format == ReportFormat::Json ? emit_json(report) : emit_text(report);
}

}  // namespace fusa
