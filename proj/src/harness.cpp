#include "cat0ot/harness.hpp"

#include "cat0ot/spaces.hpp"
#include "experiment_support.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace cat0ot {

using nlohmann::json;

namespace {

using Runner = Report (*)(const Space&, const Scenario&);

struct Entry {
  const char* name;
  Runner run;
};

constexpr Entry kExperiments[] = {
    {"solve", detail::run_solve},
    {"monotonicity", detail::run_monotonicity},
    {"twist", detail::run_twist},
    {"fermat", detail::run_fermat},
    {"eilenberg", detail::run_eilenberg},
    {"transport-identity", detail::run_transport_identity},
    {"polar", detail::run_polar},
    {"geometry-suite", detail::run_geometry_suite},
};

Runner find_runner(const std::string& name) {
  for (const Entry& e : kExperiments)
    if (name == e.name) return e.run;
  throw Error(ErrorKind::ConfigInvalid, "experiment '" + name + "' is not recognised");
}

std::string number(double v) {
  std::ostringstream out;
  out.precision(17);
  out << v;
  return out.str();
}

}  // namespace

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const Entry& e : kExperiments) v.emplace_back(e.name);
    return v;
  }();
  return names;
}

Scenario scenario_from_json(const json& j, const std::string& experiment, std::optional<std::uint64_t> seed) {
  if (!j.is_object()) throw Error(ErrorKind::ConfigInvalid, "scenario must be an object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (it.key() != "experiment" && it.key() != "space" && it.key() != "params" && it.key() != "seed")
      throw Error(ErrorKind::ConfigInvalid, it.key() + " is not a scenario field");

  Scenario s;
  if (j.contains("experiment")) {
    if (!j["experiment"].is_string()) throw Error(ErrorKind::ConfigInvalid, "experiment must be a string");
    s.experiment = j["experiment"].get<std::string>();
    if (!experiment.empty() && experiment != s.experiment)
      throw Error(ErrorKind::ConfigInvalid,
                  "experiment: config says '" + s.experiment + "' but '" + experiment + "' was requested");
  } else {
    s.experiment = experiment;
  }
  if (s.experiment.empty()) throw Error(ErrorKind::ConfigInvalid, "experiment is required");
  find_runner(s.experiment);

  if (!j.contains("space")) throw Error(ErrorKind::ConfigInvalid, "space is required");
  s.space = j["space"];
  if (j.contains("params")) {
    if (!j["params"].is_object()) throw Error(ErrorKind::ConfigInvalid, "params must be an object");
    s.params = j["params"];
  }
  if (seed) {
    s.seed = *seed;
  } else {
    if (!j.contains("seed")) throw Error(ErrorKind::ConfigInvalid, "seed is required");
    if (!j["seed"].is_number_unsigned()) throw Error(ErrorKind::ConfigInvalid, "seed must be a non-negative integer");
    s.seed = j["seed"].get<std::uint64_t>();
  }
  return s;
}

json scenario_to_json(const Scenario& s) {
  return {{"experiment", s.experiment}, {"space", s.space}, {"params", s.params}, {"seed", s.seed}};
}

void Report::add(std::string name, double value, std::optional<double> sigma) {
  metrics.push_back({std::move(name), value, sigma});
}

double Report::metric(const std::string& name) const {
  for (const Metric& m : metrics)
    if (m.name == name) return m.value;
  throw Error(ErrorKind::ParamOutOfRange, "no metric named " + name);
}

Report run_scenario(const Scenario& scenario, bool timing) {
  const Runner run = find_runner(scenario.experiment);
  Space space = [&] {
    try {
      return space_from_json(scenario.space);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::ConfigInvalid) throw;
      throw Error(ErrorKind::ConfigInvalid, std::string("space: ") + e.what());
    }
  }();
  const auto start = std::chrono::steady_clock::now();
  Report report = run(space, scenario);
  report.scenario = scenario;
  if (timing)
    report.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start)
                            .count();
  return report;
}

std::vector<Report> run_batch(const std::vector<Scenario>& scenarios, bool timing) {
  return detail::parallel_map<Report>(static_cast<long>(scenarios.size()),
                                      [&](long i) { return run_scenario(scenarios[i], timing); });
}

int thread_budget() {
  int n = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  if (const char* cap = std::getenv("CAT0OT_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(cap, &end, 10);
    if (end != cap && *end == '\0' && v >= 1) n = std::min<long>(n, v);
  }
  return n;
}

json report_to_json(const Report& report) {
  json metrics = json::array();
  for (const Metric& m : report.metrics) {
    json entry = {{"name", m.name}, {"value", m.value}};
    if (m.sigma) entry["sigma"] = *m.sigma;
    metrics.push_back(std::move(entry));
  }
  json j = {{"scenario", scenario_to_json(report.scenario)}, {"metrics", metrics}, {"pass", report.pass}};
  if (!report.artifacts.empty()) j["artifacts"] = report.artifacts;
  if (report.runtime_ms) j["runtime_ms"] = *report.runtime_ms;
  return j;
}

std::string report_to_csv(const Report& report) {
  std::string out = "metric,value,sigma\n";
  for (const Metric& m : report.metrics)
    out += m.name + "," + number(m.value) + "," + (m.sigma ? number(*m.sigma) : "") + "\n";
  out += std::string("pass,") + (report.pass ? "1" : "0") + ",\n";
  if (report.runtime_ms) out += "runtime_ms," + std::to_string(*report.runtime_ms) + ",\n";
  return out;
}

std::string format_report(const Report& report, ReportFormat format) {
  return format == ReportFormat::Json ? report_to_json(report).dump(2) + "\n" : report_to_csv(report);
}

std::string format_reports(const std::vector<Report>& reports, ReportFormat format) {
  if (reports.size() == 1) return format_report(reports[0], format);
  if (format == ReportFormat::Json) {
    json all = json::array();
    for (const Report& r : reports) all.push_back(report_to_json(r));
    return all.dump(2) + "\n";
  }
  std::string out = "metric,value,sigma\n";
  for (std::size_t k = 0; k < reports.size(); ++k) {
    const std::string csv = report_to_csv(reports[k]);
    std::istringstream lines(csv.substr(csv.find('\n') + 1));
    for (std::string line; std::getline(lines, line);) out += std::to_string(k) + "/" + line + "\n";
  }
  return out;
}

void write_text(const std::string& text, const std::string& path) {
  if (path == "-") {
    std::cout << text << std::flush;
    if (!std::cout) throw Error(ErrorKind::IoFailure, "cannot write to standard output");
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::IoFailure, "cannot open " + path + " for writing");
  out << text;
  out.close();
  if (!out) throw Error(ErrorKind::IoFailure, "write to " + path + " failed");
}

namespace detail {

double quantile95(std::vector<double> values) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const auto rank = static_cast<std::size_t>(std::ceil(0.95 * static_cast<double>(values.size())));
  return values[std::max<std::size_t>(rank, 1) - 1];
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  double mx = 0, my = 0;
  for (std::size_t k = 0; k < n; ++k) {
    mx += std::log(x[k]) / n;
    my += std::log(y[k]) / n;
  }
  double sxy = 0, sxx = 0;
  for (std::size_t k = 0; k < n; ++k) {
    sxy += (std::log(x[k]) - mx) * (std::log(y[k]) - my);
    sxx += (std::log(x[k]) - mx) * (std::log(x[k]) - mx);
  }
  return sxy / sxx;
}

}  // namespace detail

}  // namespace cat0ot
