// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "cat0ot/geodesic.hpp"
#include "cat0ot/harness.hpp"
#include "cat0ot/rng.hpp"
#include "cat0ot/sampling.hpp"
#include "cat0ot/spaces.hpp"
#include "cat0ot/transport.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

using namespace cat0ot;
using nlohmann::json;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  std::string bytes;
  double seconds = 0.0;
};

struct NamedSpace {
  const char* name;
  json spec;
};

const std::vector<NamedSpace>& all_spaces() {
  static const std::vector<NamedSpace> spaces = {
      {"R2", {{"kind", "euclidean"}, {"dim", 2}}},
      {"R3", {{"kind", "euclidean"}, {"dim", 3}}},
      {"tripod", {{"kind", "star"}, {"legs", 3}}},
      {"comb", {{"kind", "comb"}, {"depth", 1}, {"grid", 4}}},
      {"book3", {{"kind", "open_book"}, {"pages", 3}}},
  };
  return spaces;
}

const json& space_named(const std::string& name) {
  for (const NamedSpace& s : all_spaces())
    if (name == s.name) return s.spec;
  throw std::runtime_error("unknown space " + name);
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::string exact(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

class Runner {
 public:
  explicit Runner(Outcome& out) : out_(out) {}

  Report operator()(const std::string& experiment, const json& space, const json& params, std::uint64_t seed) {
    const Report r = run_scenario(
        scenario_from_json({{"experiment", experiment}, {"space", space}, {"params", params}, {"seed", seed}}));
    out_.bytes += format_report(r, ReportFormat::Json);
    return r;
  }

 private:
  Outcome& out_;
};

Outcome geometry() {
  Outcome o;
  Runner run(o);
  double slowest = 0.0, worst_defect = 0.0;
  for (const NamedSpace& s : all_spaces()) {
    const auto start = std::chrono::steady_clock::now();
    const Report r =
        run("geometry-suite", s.spec, {{"samples", 10000}, {"angle_pairs", 0}, {"projection_samples", 0}}, 101);
    const double t = seconds_since(start);
    slowest = std::max(slowest, t);
    worst_defect = std::min(worst_defect, r.metric("min_defect"));
    o.pass = o.pass && r.pass && t < 10.0;
    if (!r.pass) o.detail += std::string(s.name) + " failed; ";
  }
  o.detail += "5 spaces x 1e4 samples, min defect " + num(worst_defect) + ", slowest " + num(slowest) + " s";
  return o;
}

Outcome angles() {
  Outcome o;
  Runner run(o);
  const auto start = std::chrono::steady_clock::now();
  double opposite = 0.0, shared = 1.0, cos_decrease = 0.0;
  for (const NamedSpace& s : all_spaces()) {
    const Report r =
        run("geometry-suite", s.spec, {{"samples", 0}, {"angle_pairs", 1000}, {"projection_samples", 0}}, 102);
    o.pass = o.pass && r.pass;
    cos_decrease = std::max(cos_decrease, r.metric("max_cos_decrease"));
    if (std::string(s.name) == "tripod") opposite = r.metric("opposite_leg_angle");
    if (std::string(s.name) == "comb") shared = r.metric("shared_segment_angle");
  }
  o.seconds = seconds_since(start);
  o.pass = o.pass && std::abs(opposite - std::numbers::pi) <= 1e-7 && shared <= 1e-7 && o.seconds < 5.0;
  o.detail = "opposite-leg |a-pi| " + num(std::abs(opposite - std::numbers::pi)) + ", shared-segment " + num(shared) +
             ", max cos decrease " + num(cos_decrease);
  return o;
}

Outcome projection() {
  Outcome o;
  Runner run(o);
  const auto start = std::chrono::steady_clock::now();
  double excess = 0.0, idem = 0.0;
  for (const NamedSpace& s : all_spaces()) {
    const Report r =
        run("geometry-suite", s.spec, {{"samples", 0}, {"angle_pairs", 0}, {"projection_samples", 1000}}, 103);
    o.pass = o.pass && r.pass;
    excess = std::max(excess, r.metric("max_projection_excess"));
    idem = std::max(idem, r.metric("max_idempotence_error"));
  }
  o.seconds = seconds_since(start);
  o.pass = o.pass && o.seconds < 5.0;
  o.detail = "5 spaces x 1e3 samples, excess " + num(excess) + ", idempotence " + num(idem);
  return o;
}

// Solver runs shared by the oracle and cycle criteria.
struct SolveRuns {
  std::vector<Report> reports;
  std::string bytes;
  double seconds = 0.0;
};

SolveRuns solve_runs() {
  SolveRuns runs;
  Outcome o;
  Runner run(o);
  const auto start = std::chrono::steady_clock::now();
  for (const NamedSpace& s : all_spaces())
    runs.reports.push_back(run("solve", s.spec, {{"n_max", 7}, {"instances", 200}, {"max_cycle_len", 3}}, 104));
  runs.seconds = seconds_since(start);
  runs.bytes = o.bytes;
  return runs;
}

Outcome oracle(const SolveRuns& runs) {
  Outcome o;
  o.bytes = runs.bytes;
  o.seconds = runs.seconds;
  double gap = 0.0, duality = 0.0, slack = 0.0;
  for (const Report& r : runs.reports) {
    gap = std::max(gap, r.metric("max_oracle_gap"));
    duality = std::max(duality, r.metric("max_duality_gap"));
    slack = std::max(slack, r.metric("max_slack"));
    o.pass = o.pass && r.metric("oracle_checked") == 200;
  }
  o.pass = o.pass && gap <= 1e-9 && duality <= 1e-9 && slack <= 1e-9 && o.seconds < 60.0;
  o.detail = "5 spaces x 200 instances, oracle gap " + num(gap) + ", duality gap " + num(duality) + ", slack " + num(slack);
  return o;
}

Outcome cycles(const SolveRuns& runs) {
  Outcome o;
  Runner run(o);
  const auto start = std::chrono::steady_clock::now();
  double violations = 0.0, tuples = 0.0;
  for (const Report& r : runs.reports) {
    violations += r.metric("cycle_violations");
    tuples += r.metric("cycle_tuples");
  }
  const Report swapped = run("monotonicity", {{"kind", "euclidean"}, {"dim", 1}},
                             json::parse(R"({"mu": {"points": [[0, 0], [0, 1]]}, "nu": {"points": [[0, 2], [0, 3]]},
                                             "plan": {"entries": [[0, 1, 0.5], [1, 0, 0.5]]}, "max_len": 2})"),
                             105);
  o.seconds = runs.seconds + seconds_since(start);
  o.pass = violations == 0 && tuples > 0 && swapped.metric("violations") == 1 && o.seconds < 30.0;
  o.detail = num(tuples) + " cycles of length 2-3, " + num(violations) + " violations; swapped plan " +
             num(swapped.metric("violations")) + " violation";
  return o;
}

Outcome monge() {
  Outcome o;
  Runner run(o);
  const auto start = std::chrono::steady_clock::now();
  const Report r = run("solve", space_named("R2"), {{"n", 20}, {"instances", 100}, {"oracle", false}}, 106);

  const Space line = build_euclidean(1);
  DiscreteMeasure mu{{euclidean_point({0.0})}, Eigen::VectorXd::Ones(1)};
  DiscreteMeasure nu = uniform_measure({euclidean_point({-1.0}), euclidean_point({1.0})});
  const MongeResult split = extract_monge_map(solve_kantorovich(line, mu, nu).plan);
  o.bytes += exact(split.split_mass) + "\n";

  o.seconds = seconds_since(start);
  const double maps = r.metric("monge_maps");
  o.pass = r.pass && maps >= 99 && !split.deterministic() && split.split_mass > 0 && o.seconds < 30.0;
  o.detail = num(maps) + "/100 maps at n = 20; split instance " +
             (split.deterministic() ? std::string("deterministic") : "NotDeterministic, split mass " +
                                                                         num(split.split_mass));
  return o;
}

Outcome twist() {
  Outcome o;
  Runner run(o);
  const auto start = std::chrono::steady_clock::now();
  double flat_min = 1e300, tree_max = 0.0;
  for (const char* name : {"R2", "book3"}) {
    const Report r = run("twist", space_named(name), {{"instances", 200}}, 107);
    o.pass = o.pass && r.pass && r.metric("min_gap") > 1e-6 && r.metric("distinguished") == 200;
    flat_min = std::min(flat_min, r.metric("min_gap"));
  }
  for (const char* name : {"tripod", "comb"}) {
    const Report r = run("twist", space_named(name), {{"instances", 50}}, 107);
    o.pass = o.pass && r.pass && r.metric("max_gap") < 1e-9;
    tree_max = std::max(tree_max, r.metric("max_gap"));
  }
  o.seconds = seconds_since(start);
  o.pass = o.pass && o.seconds < 20.0;
  o.detail = "R2 and book min gap " + num(flat_min) + " (200 each); tree max gap " + num(tree_max) + " (50 each)";
  return o;
}

Outcome fermat() {
  Outcome o;
  Runner run(o);
  const auto start = std::chrono::steady_clock::now();
  const Report grid = run("fermat", space_named("R2"), {{"grid", 17}, {"targets", 9}, {"C", 2.0}}, 108);
  const Report leaf = run("fermat", space_named("tripod"), {{"instances", 20}}, 108);
  o.seconds = seconds_since(start);
  o.pass = grid.pass && leaf.pass && o.seconds < 10.0;
  o.detail = "grid min directional " + num(grid.metric("min_directional")) + " vs bound " + num(grid.metric("bound")) +
             "; tripod leaf min directional " + num(leaf.metric("min_directional"));
  return o;
}

Outcome identity() {
  Outcome o;
  Runner run(o);
  const auto start = std::chrono::steady_clock::now();
  const Report r = run("transport-identity", space_named("R2"), {{"grids", {5, 9, 17, 33, 50}}, {"v", {1.0, 0.0}}}, 109);
  o.seconds = seconds_since(start);
  o.pass = r.pass && r.metric("order") >= 0.9 && r.metric("grid50.coverage") >= 0.95 &&
           r.metric("grid50.brenier_coverage") >= 0.95 && o.seconds < 60.0;
  o.detail = "grids 5..50, C " + num(r.metric("C")) + ", order " + num(r.metric("order")) + ", 50x50 coverage " +
             num(r.metric("grid50.coverage")) + ", Brenier coverage " + num(r.metric("grid50.brenier_coverage"));
  return o;
}

Outcome lipschitz() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  double worst = -1e300;
  long pairs = 0;
  for (const NamedSpace& named : all_spaces()) {
    const Space space = space_from_json(named.spec);
    CounterRng rng = CounterRng::substream(110, std::string("psi-lipschitz/") + named.name);
    const DiscreteMeasure a = uniform_measure(random_distinct_points(space, rng, 15));
    const DiscreteMeasure b = uniform_measure(random_distinct_points(space, rng, 15));
    const KantorovichSolution sol = solve_kantorovich(space, a, b);
    for (int k = 0; k < 1000; ++k, ++pairs) {
      const Point y0 = b.points[rng.below(15)];
      const double r = rng.uniform(0.2, 1.0);
      auto inside = [&] {
        const Point z = random_point(space, rng);
        const double d = space.distance(y0, z);
        return d < r ? z : Geodesic(space, y0, z).eval(rng.uniform() * r / d);
      };
      const Point x1 = inside(), x2 = inside();
      const double diff = std::abs(psi_R(space, b, sol.potentials, x1, y0, r) - psi_R(space, b, sol.potentials, x2, y0, r));
      const double excess = diff - 2 * r * space.distance(x1, x2);
      worst = std::max(worst, excess);
      o.bytes += exact(diff) + "\n";
    }
  }
  o.seconds = seconds_since(start);
  o.pass = worst <= 1e-9 && o.seconds < 5.0;
  o.detail = std::to_string(pairs) + " pairs over 5 spaces, max |dpsi| - 2r d = " + num(worst);
  return o;
}

Outcome eilenberg() {
  Outcome o;
  Runner run(o);
  const auto start = std::chrono::steady_clock::now();
  const Report square = run("eilenberg", space_named("R2"),
                            {{"gamma", {{0, 0, 0}, {0, 1, 0}}},
                             {"region", {{"box", {{"chart", 0}, {"lo", {0, 0}}, {"hi", {1, 1}}}}}},
                             {"samples", 1000000},
                             {"expect_lhs", std::numbers::pi / 4},
                             {"tolerance", 0.02}},
                            111);
  const Report tripod = run("eilenberg", space_named("tripod"),
                            {{"gamma", {{0, 0.0}, {0, 1.0}}},
                             {"region", {{"subtree", {0, 1, 2}}}},
                             {"samples", 100000},
                             {"expect_lhs", 3.0},
                             {"expect_rhs", 3.0},
                             {"tolerance", 0.02}},
                            111);
  long holds = 0;
  for (const NamedSpace& s : all_spaces()) {
    const Report r = run("eilenberg", s.spec, {{"instances", 100}}, 111);
    holds += static_cast<long>(r.metric("holds"));
    o.pass = o.pass && r.pass;
  }
  o.seconds = seconds_since(start);
  o.pass = o.pass && square.pass && tripod.pass && holds == 500 && o.seconds < 120.0;
  o.detail = "square lhs " + num(square.metric("lhs")) + " vs pi/4, tripod lhs " + num(tripod.metric("lhs")) +
             " rhs " + num(tripod.metric("rhs")) + ", random " + std::to_string(holds) + "/500 hold";
  return o;
}

Outcome polar() {
  Outcome o;
  Runner run(o);
  const auto start = std::chrono::steady_clock::now();
  double residual = 0.0;
  for (const NamedSpace& s : all_spaces()) {
    const Report r = run("polar", s.spec, {{"instances", 100}}, 112);
    o.pass = o.pass && r.pass && r.metric("measure_preserving") == 100 && r.metric("inverse_consistent") == 100 &&
             r.metric("reorder_stable") == 100;
    residual = std::max(residual, r.metric("max_residual"));
  }
  const Report line = run("polar", {{"kind", "euclidean"}, {"dim", 1}},
                          json::parse(R"({"mu": {"points": [[0, 0], [0, 1]]}, "s": [[0, 3], [0, 2]], "expect_u": [1, 0]})"),
                          112);
  o.seconds = seconds_since(start);
  o.pass = o.pass && line.pass && line.metric("expected_u_match") == 1 && residual <= 1e-9 && o.seconds < 60.0;
  o.detail = "5 spaces x 100 instances, max residual " + num(residual) + "; line swap " +
             (line.metric("expected_u_match") == 1 ? "reproduced" : "differs");
  return o;
}

std::vector<Outcome> run_criteria() {
  std::vector<Outcome> out;
  auto timed = [&](const std::function<Outcome()>& fn) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o = fn();
    if (o.seconds == 0.0) o.seconds = seconds_since(start);
    out.push_back(std::move(o));
  };
  timed(geometry);
  timed(angles);
  timed(projection);
  const SolveRuns runs = solve_runs();
  timed([&] { return oracle(runs); });
  timed([&] { return cycles(runs); });
  timed(monge);
  timed(twist);
  timed(fermat);
  timed(identity);
  timed(lipschitz);
  timed(eilenberg);
  timed(polar);
  return out;
}

void print(int id, const char* title, bool pass, const std::string& detail, double seconds) {
  std::printf("[%s] %2d %-22s %s (%.2f s)\n", pass ? "PASS" : "FAIL", id, title, detail.c_str(), seconds);
  std::fflush(stdout);
}

}  // namespace

int main() {
  const char* titles[] = {"geometry suite",    "angle suite",       "projection suite", "solver vs oracle",
                          "cyclic monotonicity", "Monge maps",       "twist",            "Fermat",
                          "transport identity", "psi_R Lipschitz",  "Eilenberg",        "polar factorization",
                          "determinism"};
  bool all = true;
  std::vector<Outcome> first;
  try {
    first = run_criteria();
  } catch (const std::exception& e) {
    std::printf("[FAIL] acceptance run aborted: %s\n", e.what());
    return 1;
  }
  for (std::size_t k = 0; k < first.size(); ++k) {
    print(static_cast<int>(k + 1), titles[k], first[k].pass, first[k].detail, first[k].seconds);
    all = all && first[k].pass;
  }

  const auto start = std::chrono::steady_clock::now();
  const std::vector<Outcome> second = run_criteria();
  std::size_t same = 0, bytes = 0;
  for (std::size_t k = 0; k < first.size(); ++k) {
    same += first[k].bytes == second[k].bytes && !first[k].bytes.empty();
    bytes += first[k].bytes.size();
  }
  const bool deterministic = same == first.size();
  print(13, titles[12], deterministic,
        std::to_string(same) + "/" + std::to_string(first.size()) + " criteria byte-identical on rerun (" +
            std::to_string(bytes) + " bytes)",
        seconds_since(start));
  all = all && deterministic;
  return all ? 0 : 1;
}
