#include "fusa/cli.hpp"

#include <fstream>
#include <map>

#include <CLI11.hpp>

#include "fusa/report.hpp"

namespace fusa {

namespace {

struct CommandLine {
  std::string model_file;
  std::string format = "text";
  std::string out_file;
  bool strict = false;
  std::uint64_t seed = 0;
  std::uint64_t mc_samples = 100000;
  double cca_threshold = 0.8;
};

const std::map<std::string, std::set<Section>>& subcommands() {
  static const std::map<std::string, std::set<Section>> kTable = {
      {"validate", {Section::Validation}},
      {"score", {Section::Rigor, Section::StateMachines}},
      {"hara", {Section::Hara}},
      {"hw", {Section::Hw}},
      {"frc", {Section::Frc}},
      {"sotif", {Section::Sotif}},
      {"trace", {Section::Trace}},
      {"cca", {Section::Cca}},
      {"report",
       {Section::Validation, Section::Rigor, Section::StateMachines, Section::Hara, Section::Hw,
        Section::Frc, Section::Sotif, Section::Trace, Section::Cca}},
  };
  return kTable;
}

const char* describe(const std::string& name) {
  static const std::map<std::string, const char*> kHelp = {
      {"validate", "load the model and run semantic validation"},
      {"score", "score item-definition rigor and validate state machines"},
      {"hara", "check hazard coverage by safety goals"},
      {"hw", "compute SPFM, LFM and PMHF against their ASIL targets"},
      {"frc", "check failure-rate classes of single-point failure modes"},
      {"sotif", "evaluate the harm model, its targets and sensitivities"},
      {"trace", "check requirement, ASIL and test traceability"},
      {"cca", "assess safety-case credibility"},
      {"report", "run every analysis"},
  };
  return kHelp.at(name);
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Functional-safety analysis workbench", "fusacheck"};
  app.require_subcommand(1, 1);
  app.set_version_flag("--version", std::string(kToolVersion));

  CommandLine cl;
  for (const auto& [name, sections] : subcommands()) {
    auto* sub = app.add_subcommand(name, describe(name));
    sub->add_option("model-file", cl.model_file, "model file (JSON)")->required();
    sub->add_option("--format", cl.format, "report format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    sub->add_option("--out", cl.out_file, "write the report to FILE instead of stdout");
    sub->add_flag("--strict", cl.strict,
                  "reject unknown keys, treat warnings as failures, abort on supra-unit SOTIF terms");
    sub->add_option("--seed", cl.seed, "Monte-Carlo seed")->capture_default_str();
    sub->add_option("--mc-samples", cl.mc_samples, "Monte-Carlo trials")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub->add_option("--cca-threshold", cl.cca_threshold, "credibility below which CCA-WEAK is raised")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
  }

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  AnalysisOptions options;
  options.strict = cl.strict;
  options.seed = cl.seed;
  options.mc_samples = cl.mc_samples;
  options.cca_threshold = cl.cca_threshold;

  AnalysisReport report;
  try {
    auto loaded = load_model_file(cl.model_file, LoadOptions{cl.strict});
    report = build_report(loaded.model, subcommands().at(command), options, loaded.warnings);
  } catch (const Error& e) {
    err << "fusacheck: " << e.what() << "\n";
    return kExitUsage;
  }

  const auto text = emit_report(report, cl.format == "json" ? ReportFormat::Json : ReportFormat::Text);
  if (cl.out_file.empty()) {
    out << text;
  } else {
    std::ofstream file(cl.out_file, std::ios::binary);
    file << text;
    if (!file) {
      err << "fusacheck: cannot write report to '" << cl.out_file << "'\n";
      return kExitUsage;
    }
  }

  switch (report.overall_verdict) {
    case Verdict::Pass: return kExitPass;
    case Verdict::PassWithWarnings: return cl.strict ? kExitFail : kExitPass;
    case Verdict::Fail: return kExitFail;
  }
  return kExitFail;
}

}  // namespace fusa
