#include "cat0ot/polar.hpp"
#include "cat0ot/rng.hpp"
#include "cat0ot/sampling.hpp"
#include "cat0ot/spaces.hpp"
#include "cat0ot/transport.hpp"
#include "experiment_support.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace cat0ot::detail {

using nlohmann::json;

namespace {

constexpr int kOracleMax = 7;

DualSelection read_duals(ParamReader& p, const char* fallback) {
  const std::string d = p.get<std::string>("duals", fallback);
  if (d == "automatic") return DualSelection::Automatic;
  if (d == "basis") return DualSelection::Basis;
  if (d == "centered") return DualSelection::Centered;
  ParamReader::fail(ParamReader::path("duals"), "must be automatic, basis or centered");
}

CycleMode read_mode(ParamReader& p) {
  const std::string m = p.get<std::string>("mode", "exhaustive");
  if (m == "exhaustive") return CycleMode::Exhaustive;
  if (m == "sampled") return CycleMode::Sampled;
  ParamReader::fail(ParamReader::path("mode"), "must be exhaustive or sampled");
}

DiscreteMeasure read_measure(ParamReader& p, const std::string& key, const Space& space) {
  try {
    DiscreteMeasure mu = measure_from_json(p.raw(key));
    validate_measure(space, mu);
    return mu;
  } catch (const Error& e) {
    ParamReader::fail(ParamReader::path(key), e.what());
  }
}

std::vector<Point> read_points(ParamReader& p, const std::string& key, const Space& space) {
  const json& arr = p.raw(key);
  if (!arr.is_array()) ParamReader::fail(ParamReader::path(key), "must be an array of points");
  std::vector<Point> pts;
  try {
    for (const json& q : arr) {
      pts.push_back(point_from_json(q));
      space.validate(pts.back());
    }
  } catch (const Error& e) {
    ParamReader::fail(ParamReader::path(key), e.what());
  }
  return pts;
}

bool equal_weights(const DiscreteMeasure& mu) {
  for (int i = 0; i < mu.size(); ++i)
    if (std::abs(mu.weights[i] - 1.0 / mu.size()) > kWeightTol) return false;
  return true;
}

bool oracle_applies(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  return mu.size() == nu.size() && mu.size() <= kOracleMax && equal_weights(mu) && equal_weights(nu);
}

DiscreteMeasure random_measure(const Space& space, CounterRng& rng, int n, bool random_weights) {
  DiscreteMeasure mu = uniform_measure(random_distinct_points(space, rng, n));
  if (random_weights) {
    for (int i = 0; i < n; ++i) mu.weights[i] = 0.5 + rng.uniform();
    mu.weights /= mu.weights.sum();
  }
  return mu;
}

json vector_json(const Eigen::VectorXd& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

}  // namespace

Report run_solve(const Space& space, const Scenario& s) {
  ParamReader p(s.params);
  const double tol = p.positive("tol", 1e-9);
  const DualSelection duals = read_duals(p, "automatic");
  const bool use_oracle = p.get<bool>("oracle", true);
  const int cycle_len = static_cast<int>(p.count("max_cycle_len", 0, 0, 12));
  const bool given = p.has("mu") || p.has("nu");
  DiscreteMeasure mu0, nu0;
  long instances = 1;
  int n = 0, m = 0, n_max = 0;
  bool random_weights = false;
  if (given) {
    mu0 = read_measure(p, "mu", space);
    nu0 = read_measure(p, "nu", space);
  } else {
    if (p.has("n_max")) {
      if (p.has("n") || p.has("m")) ParamReader::fail(ParamReader::path("n_max"), "excludes n and m");
      n_max = static_cast<int>(p.count("n_max", 7, 1, kMaxSupport));
    } else {
      n = static_cast<int>(p.count("n", 5, 1, kMaxSupport));
      m = static_cast<int>(p.count("m", n, 1, kMaxSupport));
    }
    instances = p.count("instances", 1, 1, 1000000);
    random_weights = p.get<bool>("random_weights", false);
  }
  p.finish();

  struct Outcome {
    KantorovichSolution sol;
    double oracle_gap = -1.0;
    bool monge = false;
    MonotonicityReport cycles;
  };
  const std::vector<Outcome> out = parallel_map<Outcome>(instances, [&](long k) {
    DiscreteMeasure mu = mu0, nu = nu0;
    if (!given) {
      CounterRng rng = CounterRng::substream(s.seed, instance_tag("solve", k));
      const int nk = n_max > 0 ? 1 + static_cast<int>(rng.below(n_max)) : n;
      mu = random_measure(space, rng, nk, random_weights);
      nu = random_measure(space, rng, n_max > 0 ? nk : m, random_weights);
    }
    Outcome o{solve_kantorovich(space, mu, nu, duals), -1.0, false, {}};
    if (use_oracle && oracle_applies(mu, nu)) o.oracle_gap = std::abs(o.sol.cost - brute_force_oracle(space, mu, nu).cost);
    const MongeResult monge = extract_monge_map(o.sol.plan);
    o.monge = monge.deterministic() && monge.split_mass == 0.0;
    if (cycle_len >= 2) o.cycles = check_cyclic_monotonicity(space, o.sol.plan, cycle_len);
    return o;
  });

  Report r;
  double cost = 0, gap = 0, slack = 0, support = 0, marginal = 0, oracle_gap = 0;
  long pivots = 0, checked = 0, maps = 0, violations = 0, tuples = 0;
  for (const Outcome& o : out) {
    maps += o.monge;
    violations += o.cycles.violations;
    tuples += o.cycles.tuples_checked;
    cost += o.sol.cost;
    gap = std::max(gap, std::abs(o.sol.cost - o.sol.dual_objective));
    slack = std::max(slack, o.sol.potentials.slack_max);
    support = std::max(support, o.sol.potentials.support_gap);
    marginal = std::max(marginal, marginal_error(o.sol.plan));
    pivots += o.sol.pivots;
    if (o.oracle_gap >= 0) {
      ++checked;
      oracle_gap = std::max(oracle_gap, o.oracle_gap);
    }
  }
  r.add("instances", static_cast<double>(instances));
  r.add(instances == 1 ? "cost" : "mean_cost", cost / instances);
  r.add("max_duality_gap", gap);
  r.add("max_slack", slack);
  r.add("max_support_gap", support);
  r.add("max_marginal_error", marginal);
  r.add("pivots", static_cast<double>(pivots));
  r.add("oracle_checked", static_cast<double>(checked));
  if (checked > 0) r.add("max_oracle_gap", oracle_gap);
  r.add("monge_maps", static_cast<double>(maps));
  if (cycle_len >= 2) {
    r.add("cycle_violations", static_cast<double>(violations));
    r.add("cycle_tuples", static_cast<double>(tuples));
  }
  r.pass = gap <= tol && slack <= tol && support <= tol && marginal <= tol && oracle_gap <= tol && violations == 0;
  if (instances == 1) {
    const KantorovichSolution& sol = out[0].sol;
    r.artifacts["mu"] = measure_to_json(sol.plan.source);
    r.artifacts["nu"] = measure_to_json(sol.plan.target);
    r.artifacts["plan"] = plan_to_json(sol.plan);
    r.artifacts["potentials"] = {{"psi", vector_json(sol.potentials.psi)}, {"phi", vector_json(sol.potentials.phi)}};
  }
  return r;
}

Report run_monotonicity(const Space& space, const Scenario& s) {
  ParamReader p(s.params);
  const bool given = p.has("plan");
  const int max_len = static_cast<int>(p.count("max_len", given ? 2 : 3, 2, 12));
  const CycleMode mode = read_mode(p);
  const long samples = p.count("samples", mode == CycleMode::Sampled ? 10000 : 0, 0, 100000000);
  const long expect = p.count("expect_violations", 0, 0, std::numeric_limits<long>::max());
  std::optional<TransportPlan> plan;
  long instances = 1;
  int n_max = 0;
  if (given) {
    DiscreteMeasure mu = read_measure(p, "mu", space), nu = read_measure(p, "nu", space);
    try {
      plan = plan_from_json(p.raw("plan"), mu, nu);
    } catch (const Error& e) {
      ParamReader::fail(ParamReader::path("plan"), e.what());
    }
  } else {
    instances = p.count("instances", 200, 1, 1000000);
    n_max = static_cast<int>(p.count("n_max", kOracleMax, 1, kMaxSupport));
  }
  p.finish();

  const std::vector<MonotonicityReport> out = parallel_map<MonotonicityReport>(instances, [&](long k) {
    const std::uint64_t sub = CounterRng::substream(s.seed, instance_tag("monotonicity", k)).key();
    if (plan) return check_cyclic_monotonicity(space, *plan, max_len, mode, samples, sub);
    CounterRng rng(sub);
    const int n = 1 + static_cast<int>(rng.below(n_max));
    const DiscreteMeasure mu = random_measure(space, rng, n, false), nu = random_measure(space, rng, n, false);
    return check_cyclic_monotonicity(space, solve_kantorovich(space, mu, nu).plan, max_len, mode, samples, sub);
  });

  Report r;
  long violations = 0, tuples = 0;
  double worst = std::numeric_limits<double>::infinity();
  for (const MonotonicityReport& m : out) {
    violations += m.violations;
    tuples += m.tuples_checked;
    worst = std::min(worst, m.worst_slack);
  }
  r.add("instances", static_cast<double>(instances));
  r.add("violations", static_cast<double>(violations));
  r.add("worst_slack", worst);
  r.add("tuples_checked", static_cast<double>(tuples));
  r.pass = violations == expect;
  return r;
}

Report run_transport_identity(const Space& space, const Scenario& s) {
  if (space.kind() != SpaceKind::Euclidean || space.dim() != 2)
    throw Error(ErrorKind::ConfigInvalid, "space: transport-identity runs in the Euclidean plane");
  ParamReader p(s.params);
  const std::vector<int> grids = p.get<std::vector<int>>("grids", {5, 9, 17, 33, 50});
  if (grids.size() < 2) ParamReader::fail(ParamReader::path("grids"), "needs at least two sizes");
  for (int g : grids)
    if (g < 3 || g > 100) ParamReader::fail(ParamReader::path("grids"), "sizes must lie in [3, 100]");
  const std::vector<double> vv = p.get<std::vector<double>>("v", {1.0, 0.0});
  if (vv.size() != 2 || std::hypot(vv[0], vv[1]) == 0.0)
    ParamReader::fail(ParamReader::path("v"), "must be a nonzero 2-vector");
  const Eigen::Vector2d v(vv[0], vv[1]);
  const double given_c = p.has("C") ? p.positive("C", 1.0) : 0.0;
  const double coverage = p.get<double>("coverage", 0.95);
  const double min_order = p.get<double>("min_order", 0.9);
  const DualSelection duals = read_duals(p, "basis");
  p.finish();

  struct Study {
    double h;
    std::vector<double> residual, brenier;
  };
  const std::vector<Study> studies = parallel_map<Study>(static_cast<long>(grids.size()), [&](long k) {
    const int n = grids[k];
    const double h = 1.0 / (n - 1);
    std::vector<Point> src, dst;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const Eigen::Vector2d x(i * h, j * h);
        src.emplace_back(0, x);
        dst.emplace_back(0, x + v);
      }
    const DiscreteMeasure mu = uniform_measure(src), nu = uniform_measure(dst);
    const KantorovichSolution sol = solve_kantorovich(space, mu, nu, duals);
    const MongeResult monge = extract_monge_map(sol.plan);
    if (!monge.deterministic()) throw Error(ErrorKind::NotDeterministic, "translation plan splits mass");
    const GridFunction2 psi(Eigen::Vector2d::Zero(), h,
                            Eigen::Map<const Eigen::MatrixXd>(sol.potentials.psi.data(), n, n).transpose());
    Study st{h, {}, {}};
    for (int i = 1; i < n - 1; ++i)
      for (int j = 1; j < n - 1; ++j) {
        const IdentityResidual res = verify_transport_identity(space, psi, *monge.map, mu, i * n + j, h);
        st.residual.push_back(res.residual);
        st.brenier.push_back(res.brenier);
      }
    return st;
  });

  std::size_t coarsest = 0;
  for (std::size_t k = 1; k < studies.size(); ++k)
    if (studies[k].h > studies[coarsest].h) coarsest = k;
  const double c = given_c > 0.0 ? given_c : 2.0 * quantile95(studies[coarsest].residual) / studies[coarsest].h;

  Report r;
  bool ok = true;
  std::vector<double> hs, r95, b95;
  for (std::size_t k = 0; k < studies.size(); ++k) {
    const Study& st = studies[k];
    auto within = [&](const std::vector<double>& xs) {
      const auto good = std::count_if(xs.begin(), xs.end(), [&](double x) { return x <= c * st.h; });
      return static_cast<double>(good) / static_cast<double>(xs.size());
    };
    const std::string tag = "grid" + std::to_string(grids[k]) + ".";
    const double cov = within(st.residual), bcov = within(st.brenier);
    hs.push_back(st.h);
    r95.push_back(quantile95(st.residual));
    b95.push_back(quantile95(st.brenier));
    r.add(tag + "h", st.h);
    r.add(tag + "residual_p95", r95.back());
    r.add(tag + "residual_max", *std::max_element(st.residual.begin(), st.residual.end()));
    r.add(tag + "coverage", cov);
    r.add(tag + "brenier_p95", b95.back());
    r.add(tag + "brenier_coverage", bcov);
    ok = ok && cov >= coverage && bcov >= coverage;
  }
  r.add("C", c);
  auto positive = [](const std::vector<double>& xs) {
    return std::all_of(xs.begin(), xs.end(), [](double x) { return x > 0.0; });
  };
  if (positive(r95)) {
    const double order = loglog_slope(hs, r95);
    r.add("order", order);
    ok = ok && order >= min_order;
  }
  if (positive(b95)) r.add("brenier_order", loglog_slope(hs, b95));
  r.pass = ok;
  return r;
}

Report run_polar(const Space& space, const Scenario& s) {
  ParamReader p(s.params);
  const double tol = p.positive("tol", 1e-9);
  const bool given = p.has("mu") || p.has("s");
  DiscreteMeasure mu0;
  TransportMap s0;
  std::optional<std::vector<int>> expect_u;
  long instances = 1;
  int n_max = 0;
  if (given) {
    mu0 = read_measure(p, "mu", space);
    s0.image = read_points(p, "s", space);
    if (p.has("expect_u")) expect_u = p.get<std::vector<int>>("expect_u");
  } else {
    instances = p.count("instances", 100, 1, 1000000);
    n_max = static_cast<int>(p.count("n_max", 30, 2, 2000));
  }
  const bool use_oracle = p.get<bool>("oracle", true);
  p.finish();

  struct Outcome {
    bool deterministic = true;
    double residual = 0, asymmetry = 0;
    bool preserving = false, inverse = false, stable = false, oracle_checked = false, oracle_agree = false;
    json factorization;
  };
  const std::vector<Outcome> out = parallel_map<Outcome>(instances, [&](long k) {
    CounterRng rng = CounterRng::substream(s.seed, instance_tag("polar", k));
    DiscreteMeasure mu = mu0;
    TransportMap sm = s0;
    if (!given) {
      const int n = 2 + static_cast<int>(rng.below(n_max - 1));
      mu = random_measure(space, rng, n, false);
      sm.image = random_distinct_points(space, rng, n);
    }
    Outcome o;
    Factorization f;
    try {
      f = polar_factorize(space, mu, sm);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NotDeterministic) throw;
      o.deterministic = false;
      return o;
    }
    const int n = mu.size();
    o.residual = f.residual;
    o.preserving = verify_measure_preserving(space, mu, f.u);
    const InverseMaps maps = inverse_map(space, mu, f.target);
    o.inverse = true;
    for (int i = 0; i < n; ++i) o.inverse = o.inverse && maps.T_star.target[maps.T.target[i]] == i;
    o.asymmetry = std::abs(solve_kantorovich(space, mu, f.target).cost - solve_kantorovich(space, f.target, mu).cost);
    if (use_oracle && oracle_applies(mu, f.target)) {
      o.oracle_checked = true;
      o.oracle_agree = brute_force_oracle(space, mu, f.target).permutation == f.T.target;
    }

    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = n - 1; i > 0; --i) std::swap(perm[i], perm[rng.below(i + 1)]);
    std::vector<Point> pts, img;
    for (int i : perm) {
      pts.push_back(mu.points[i]);
      img.push_back(sm.image[i]);
    }
    DiscreteMeasure shuffled = uniform_measure(pts);
    for (int k2 = 0; k2 < n; ++k2) shuffled.weights[k2] = mu.weights[perm[k2]];
    const Factorization g = polar_factorize(space, shuffled, TransportMap{img, {}});
    o.stable = true;
    for (int k2 = 0; k2 < n; ++k2)
      o.stable = o.stable && space.same_point(g.T.image[k2], f.T.image[perm[k2]]) &&
                 space.same_point(g.u.image[k2], f.u.image[perm[k2]]);
    if (given) o.factorization = factorization_to_json(f);
    return o;
  });

  Report r;
  long split = 0, preserving = 0, inverse = 0, stable = 0, checked = 0, agree = 0;
  double residual = 0, asym = 0;
  for (const Outcome& o : out) {
    if (!o.deterministic) {
      ++split;
      continue;
    }
    residual = std::max(residual, o.residual);
    asym = std::max(asym, o.asymmetry);
    preserving += o.preserving;
    inverse += o.inverse;
    stable += o.stable;
    checked += o.oracle_checked;
    agree += o.oracle_agree;
  }
  r.add("instances", static_cast<double>(instances));
  r.add("not_deterministic", static_cast<double>(split));
  r.add("max_residual", residual);
  r.add("measure_preserving", static_cast<double>(preserving));
  r.add("inverse_consistent", static_cast<double>(inverse));
  r.add("reorder_stable", static_cast<double>(stable));
  r.add("max_cost_asymmetry", asym);
  r.add("oracle_checked", static_cast<double>(checked));
  r.add("oracle_agree", static_cast<double>(agree));
  r.pass = split == 0 && residual <= tol && asym <= tol && preserving == instances && inverse == instances &&
           stable == instances && agree == checked;
  if (given && out[0].deterministic) {
    r.artifacts["factorization"] = out[0].factorization;
    if (expect_u) {
      const bool match = out[0].factorization["u"]["target"].get<std::vector<int>>() == *expect_u;
      r.add("expected_u_match", match ? 1.0 : 0.0);
      r.pass = r.pass && match;
    }
  }
  return r;
}

}  // namespace cat0ot::detail
