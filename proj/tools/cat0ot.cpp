#include "cat0ot/error.hpp"
#include "cat0ot/harness.hpp"
#include "cat0ot/transport.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;

struct Options {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out = "-";
  std::string format = "json";
  std::string plan_csv;
  bool timing = false;
};

nlohmann::json read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw cat0ot::Error(cat0ot::ErrorKind::ConfigInvalid, "cannot read config " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw cat0ot::Error(cat0ot::ErrorKind::ConfigInvalid, path + ": " + e.what());
  }
}

void write_plan_csv(const cat0ot::Report& report, const std::string& path) {
  const nlohmann::json& a = report.artifacts;
  if (!a.contains("plan"))
    throw cat0ot::Error(cat0ot::ErrorKind::ConfigInvalid, "--plan-csv needs a single solve instance");
  const cat0ot::TransportPlan plan =
      cat0ot::plan_from_json(a["plan"], cat0ot::measure_from_json(a["mu"]), cat0ot::measure_from_json(a["nu"]));
  cat0ot::write_text(cat0ot::plan_to_csv(plan), path);
}

int run(const std::string& experiment, const Options& opt) {
  const nlohmann::json doc = read_config(opt.config);
  std::vector<cat0ot::Scenario> scenarios;
  if (doc.is_array()) {
    for (std::size_t k = 0; k < doc.size(); ++k) {
      try {
        scenarios.push_back(cat0ot::scenario_from_json(doc[k], experiment, opt.seed));
      } catch (const cat0ot::Error& e) {
        throw cat0ot::Error(e.kind(), "[" + std::to_string(k) + "] " + e.what());
      }
    }
  } else {
    scenarios.push_back(cat0ot::scenario_from_json(doc, experiment, opt.seed));
  }
  if (!opt.plan_csv.empty() && (experiment != "solve" || scenarios.size() != 1))
    throw cat0ot::Error(cat0ot::ErrorKind::ConfigInvalid, "--plan-csv needs a single solve scenario");

  const std::vector<cat0ot::Report> reports = cat0ot::run_batch(scenarios, opt.timing);
  const auto format = opt.format == "csv" ? cat0ot::ReportFormat::Csv : cat0ot::ReportFormat::Json;
  cat0ot::write_text(cat0ot::format_reports(reports, format), opt.out);
  if (!opt.plan_csv.empty()) write_plan_csv(reports[0], opt.plan_csv);

  bool pass = true;
  for (const cat0ot::Report& r : reports) pass = pass && r.pass;
  return pass ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Optimal transport experiments on CAT(0) spaces"};
  app.require_subcommand(1);
  Options opt;
  std::uint64_t seed = 0;
  std::string chosen;
  for (const std::string& name : cat0ot::experiment_names()) {
    CLI::App* sub = app.add_subcommand(name, "Run the " + name + " experiment");
    sub->add_option("--config", opt.config, "Scenario JSON file (object or array of objects)")->required();
    sub->add_option("--seed", seed, "Override the scenario seed");
    sub->add_option("--out", opt.out, "Output path, - for standard output");
    sub->add_option("--format", opt.format, "Report format")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--plan-csv", opt.plan_csv, "Also write the plan as i,j,mass rows (solve only)");
    sub->add_flag("--timing", opt.timing, "Include runtime_ms in reports");
    sub->callback([&chosen, name] { chosen = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitConfig;
  }
  for (CLI::App* sub : app.get_subcommands())
    if (sub->count("--seed") > 0) opt.seed = seed;

  try {
    return run(chosen, opt);
  } catch (const cat0ot::Error& e) {
    std::cerr << "cat0ot: " << e.what() << "\n";
    return e.kind() == cat0ot::ErrorKind::ConfigInvalid ? kExitConfig : kExitFail;
  } catch (const std::exception& e) {
    std::cerr << "cat0ot: " << e.what() << "\n";
    return kExitFail;
  }
}
