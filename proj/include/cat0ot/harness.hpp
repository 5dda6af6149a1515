#pragma once

#include "json.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cat0ot {

/// One experiment run: {experiment, space, params, seed}.
struct Scenario {
  std::string experiment;
  nlohmann::json space;
  nlohmann::json params = nlohmann::json::object();
  std::uint64_t seed = 0;
};

const std::vector<std::string>& experiment_names();

/// Reads a scenario document. `experiment` (from the command line) must agree
/// with the document's own tag when both are present; `seed` overrides the
/// document's seed. Throws ConfigInvalid naming the offending field.
Scenario scenario_from_json(const nlohmann::json& j, const std::string& experiment = "",
                            std::optional<std::uint64_t> seed = std::nullopt);
nlohmann::json scenario_to_json(const Scenario& s);

struct Metric {
  std::string name;
  double value = 0.0;
  std::optional<double> sigma;
};

struct Report {
  Scenario scenario;
  std::vector<Metric> metrics;
  nlohmann::json artifacts = nlohmann::json::object();
  bool pass = false;
  std::optional<long> runtime_ms;

  void add(std::string name, double value, std::optional<double> sigma = std::nullopt);
  /// Throws ParamOutOfRange for an unknown name.
  double metric(const std::string& name) const;
};

/// Validates params for the experiment tag, then runs it. Deterministic for a
/// fixed scenario; `timing` fills runtime_ms.
Report run_scenario(const Scenario& scenario, bool timing = false);

/// Runs independent scenarios on up to thread_budget() threads; reports come
/// back in input order.
std::vector<Report> run_batch(const std::vector<Scenario>& scenarios, bool timing = false);

/// Hardware concurrency, capped by the CAT0OT_THREADS environment variable.
int thread_budget();

enum class ReportFormat { Json, Csv };

nlohmann::json report_to_json(const Report& report);
/// CSV rows "metric,value,sigma" followed by a pass row.
std::string report_to_csv(const Report& report);
std::string format_report(const Report& report, ReportFormat format);
std::string format_reports(const std::vector<Report>& reports, ReportFormat format);
/// Writes to `path`, or to standard output for "-". Throws IoFailure.
void write_text(const std::string& text, const std::string& path);

}  // namespace cat0ot
