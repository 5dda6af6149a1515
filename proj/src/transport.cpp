#include "cat0ot/transport.hpp"

#include "cat0ot/error.hpp"
#include "cat0ot/rng.hpp"
#include "cat0ot/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numeric>
#include <sstream>

namespace cat0ot {

using nlohmann::json;

DiscreteMeasure uniform_measure(std::vector<Point> points) {
  DiscreteMeasure mu;
  const auto n = static_cast<Eigen::Index>(points.size());
  mu.points = std::move(points);
  mu.weights = Eigen::VectorXd::Constant(n, n ? 1.0 / static_cast<double>(n) : 0.0);
  return mu;
}

void validate_measure(const Space& space, const DiscreteMeasure& mu) {
  if (mu.points.empty()) throw Error(ErrorKind::InvalidMeasure, "measure has no atoms");
  if (mu.weights.size() != mu.size()) throw Error(ErrorKind::InvalidMeasure, "one weight per atom required");
  for (Eigen::Index i = 0; i < mu.weights.size(); ++i)
    if (!(mu.weights[i] > 0.0) || !std::isfinite(mu.weights[i]))
      throw Error(ErrorKind::InvalidMeasure, "weights must be positive");
  if (std::abs(mu.weights.sum() - 1.0) > kWeightTol) throw Error(ErrorKind::InvalidMeasure, "weights must sum to 1");

  std::vector<Point> normalized;
  normalized.reserve(mu.points.size());
  try {
    for (const Point& p : mu.points) normalized.push_back(space.normalize(p));
  } catch (const Error& e) {
    throw Error(ErrorKind::InvalidMeasure, std::string("invalid atom: ") + e.what());
  }
  auto less = [](const Point& a, const Point& b) {
    if (a.chart != b.chart) return a.chart < b.chart;
    return std::lexicographical_compare(a.coords.data(), a.coords.data() + a.coords.size(), b.coords.data(),
                                        b.coords.data() + b.coords.size());
  };
  std::sort(normalized.begin(), normalized.end(), less);
  for (std::size_t k = 1; k < normalized.size(); ++k)
    if (!less(normalized[k - 1], normalized[k])) throw Error(ErrorKind::InvalidMeasure, "atoms must be distinct");
}

double marginal_error(const TransportPlan& plan) {
  Eigen::VectorXd rows = Eigen::VectorXd::Zero(plan.source.size());
  Eigen::VectorXd cols = Eigen::VectorXd::Zero(plan.target.size());
  for (const FlowEntry& e : plan.entries) {
    rows[e.i] += e.mass;
    cols[e.j] += e.mass;
  }
  return std::max((rows - plan.source.weights).cwiseAbs().maxCoeff(), (cols - plan.target.weights).cwiseAbs().maxCoeff());
}

Eigen::MatrixXd cost_matrix(const Space& space, const std::vector<Point>& xs, const std::vector<Point>& ys) {
  Eigen::MatrixXd c(xs.size(), ys.size());
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = 0; j < ys.size(); ++j) {
      const double d = space.distance(xs[i], ys[j]);
      c(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = 0.5 * d * d;
    }
  return c;
}

namespace {

// Mean over all roots of shortest-path potentials in the residual graph,
// computed with reduced arc lengths. Arcs tight under the result are exactly
// the arcs of some optimal plan.
void center_potentials(const Eigen::MatrixXd& c, const std::vector<FlowEntry>& support, Eigen::VectorXd& psi,
                       Eigen::VectorXd& phi) {
  const int n = static_cast<int>(c.rows()), m = static_cast<int>(c.cols()), total = n + m;
  Eigen::MatrixXd reduced = (c.colwise() + psi).rowwise() - phi.transpose();
  reduced = reduced.cwiseMax(0.0);
  std::vector<std::vector<int>> back(m);
  for (const FlowEntry& e : support) back[e.j].push_back(e.i);

  Eigen::VectorXd acc = Eigen::VectorXd::Zero(total);
  Eigen::VectorXd dist(total);
  std::vector<char> done(total);
  for (int root = 0; root < total; ++root) {
    dist.setConstant(std::numeric_limits<double>::infinity());
    std::fill(done.begin(), done.end(), 0);
    dist[root] = 0.0;
    for (int step = 0; step < total; ++step) {
      int u = -1;
      for (int v = 0; v < total; ++v)
        if (!done[v] && (u < 0 || dist[v] < dist[u])) u = v;
      if (u < 0 || !std::isfinite(dist[u])) break;
      done[u] = 1;
      if (u < n) {
        for (int j = 0; j < m; ++j) dist[n + j] = std::min(dist[n + j], dist[u] + reduced(u, j));
      } else {
        for (int i : back[u - n]) dist[i] = std::min(dist[i], dist[u]);
      }
    }
    acc += dist;
  }
  acc /= total;
  psi += acc.head(n);
  phi += acc.tail(m);
}

}  // namespace

KantorovichSolution solve_kantorovich(const Space& space, const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                                      DualSelection duals) {
  if (mu.size() > kMaxSupport || nu.size() > kMaxSupport)
    throw Error(ErrorKind::SupportTooLarge, "supports are capped at 10^4 atoms");
  if (std::abs(mu.weights.sum() - nu.weights.sum()) > kWeightTol)
    throw Error(ErrorKind::WeightMismatch, "source and target masses differ");
  validate_measure(space, mu);
  validate_measure(space, nu);

  const Eigen::MatrixXd c = cost_matrix(space, mu.points, nu.points);
  FlowSolution flow = network_simplex(c, mu.weights, nu.weights);

  KantorovichSolution sol;
  sol.pivots = flow.pivots;
  sol.plan.entries = std::move(flow.flows);
  sol.plan.source = mu;
  sol.plan.target = nu;

  PotentialPair& pot = sol.potentials;
  const double shift = mu.weights.dot(flow.u);
  pot.psi = flow.u.array() - shift;
  pot.phi = (c.colwise() + pot.psi).colwise().minCoeff().transpose();
  const bool centered = duals == DualSelection::Centered ||
                        (duals == DualSelection::Automatic && mu.size() + nu.size() <= kCenteringMaxNodes);
  if (centered) {
    center_potentials(c, sol.plan.entries, pot.psi, pot.phi);
    const double recentre = mu.weights.dot(pot.psi);
    pot.psi.array() -= recentre;
    pot.phi = (c.colwise() + pot.psi).colwise().minCoeff().transpose();
  }
  Eigen::MatrixXd slack = (-c).colwise() - pot.psi;
  slack.rowwise() += pot.phi.transpose();
  pot.slack_max = std::max(0.0, slack.maxCoeff());
  for (const FlowEntry& e : sol.plan.entries) {
    sol.cost += e.mass * c(e.i, e.j);
    pot.support_gap = std::max(pot.support_gap, std::abs(pot.phi[e.j] - pot.psi[e.i] - c(e.i, e.j)));
  }
  pot.feasible = pot.slack_max <= kMarginalTol;
  sol.dual_objective = nu.weights.dot(pot.phi) - mu.weights.dot(pot.psi);
  return sol;
}

OracleSolution brute_force_oracle(const Space& space, const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  const int n = mu.size();
  if (n != nu.size() || n < 1 || n > 8) throw Error(ErrorKind::UnsupportedShape, "oracle needs n = m <= 8");
  for (int i = 0; i < n; ++i)
    if (std::abs(mu.weights[i] - 1.0 / n) > kWeightTol || std::abs(nu.weights[i] - 1.0 / n) > kWeightTol)
      throw Error(ErrorKind::UnsupportedShape, "oracle needs equal weights");
  const Eigen::MatrixXd c = cost_matrix(space, mu.points, nu.points);
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  OracleSolution best;
  best.cost = std::numeric_limits<double>::infinity();
  do {
    double total = 0.0;
    for (int i = 0; i < n; ++i) total += c(i, perm[i]);
    total /= n;
    if (total < best.cost) {
      best.cost = total;
      best.permutation = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  best.plan.source = mu;
  best.plan.target = nu;
  for (int i = 0; i < n; ++i) best.plan.entries.push_back({i, best.permutation[i], 1.0 / n});
  return best;
}

namespace {

double binomial(long k, long r) {
  double out = 1.0;
  for (long t = 1; t <= r; ++t) out = out * static_cast<double>(k - r + t) / static_cast<double>(t);
  return out;
}

}  // namespace

MonotonicityReport check_cyclic_monotonicity(const Space& space, const TransportPlan& plan, int max_len,
                                             CycleMode mode, long n_samples, std::uint64_t seed) {
  if (max_len < 2) throw Error(ErrorKind::ParamOutOfRange, "cycles need length >= 2");
  const int k = static_cast<int>(plan.entries.size());
  std::vector<Point> xs, ys;
  for (const FlowEntry& e : plan.entries) {
    xs.push_back(plan.source.points[e.i]);
    ys.push_back(plan.target.points[e.j]);
  }
  const int top = std::min(max_len, k);
  if (mode == CycleMode::Exhaustive) {
    double count = 0.0;
    for (int len = 2; len <= top; ++len) count += binomial(k, len);
    if (count > kMaxCycleTuples) throw Error(ErrorKind::TooManyTuples, "exhaustive cycle check is too large");
  }
  const Eigen::MatrixXd c = cost_matrix(space, xs, ys);

  MonotonicityReport report;
  report.worst_slack = std::numeric_limits<double>::infinity();
  auto check = [&](const std::vector<int>& cyc) {
    double slack = 0.0;
    for (std::size_t a = 0; a < cyc.size(); ++a)
      slack += c(cyc[a], cyc[(a + 1) % cyc.size()]) - c(cyc[a], cyc[a]);
    ++report.tuples_checked;
    report.worst_slack = std::min(report.worst_slack, slack);
    if (slack < -kMarginalTol) ++report.violations;
  };

  if (mode == CycleMode::Exhaustive) {
    for (int len = 2; len <= top; ++len) {
      std::vector<int> pick(len);
      std::iota(pick.begin(), pick.end(), 0);
      while (true) {
        // Every cyclic order of the chosen pairs: fix the first, permute the rest.
        std::vector<int> cyc = pick;
        do check(cyc);
        while (std::next_permutation(cyc.begin() + 1, cyc.end()));
        int pos = len - 1;
        while (pos >= 0 && pick[pos] == k - len + pos) --pos;
        if (pos < 0) break;
        ++pick[pos];
        for (int q = pos + 1; q < len; ++q) pick[q] = pick[q - 1] + 1;
      }
    }
  } else if (top >= 2) {
    CounterRng rng = CounterRng::substream(seed, "cyclic-monotonicity");
    std::vector<int> idx(k);
    for (long s = 0; s < n_samples; ++s) {
      const int len = 2 + static_cast<int>(rng.below(static_cast<std::uint64_t>(top - 1)));
      std::iota(idx.begin(), idx.end(), 0);
      for (int a = 0; a < len; ++a) std::swap(idx[a], idx[a + rng.below(static_cast<std::uint64_t>(k - a))]);
      check(std::vector<int>(idx.begin(), idx.begin() + len));
    }
  }
  if (report.tuples_checked == 0) report.worst_slack = 0.0;
  return report;
}

Eigen::VectorXd c_transform(const Space& space, const std::vector<Point>& a, const Eigen::VectorXd& psi,
                            const std::vector<Point>& b) {
  if (a.empty()) throw Error(ErrorKind::EmptySet, "c-transform over an empty set");
  if (psi.size() != static_cast<Eigen::Index>(a.size()))
    throw Error(ErrorKind::ParamOutOfRange, "one potential value per point required");
  const Eigen::MatrixXd c = cost_matrix(space, a, b);
  return (c.colwise() + psi).colwise().minCoeff().transpose();
}

std::vector<int> c_subdifferential(const Space& space, const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                                   const PotentialPair& potentials, int x_index, double tol) {
  if (x_index < 0 || x_index >= mu.size()) throw Error(ErrorKind::ParamOutOfRange, "source index out of range");
  std::vector<int> out;
  for (int j = 0; j < nu.size(); ++j) {
    const double d = space.distance(mu.points[x_index], nu.points[j]);
    if (std::abs(potentials.phi[j] - potentials.psi[x_index] - 0.5 * d * d) <= tol) out.push_back(j);
  }
  return out;
}

MongeResult extract_monge_map(const TransportPlan& plan, double tol) {
  const int n = plan.source.size();
  std::vector<int> best(n, -1);
  std::vector<double> best_mass(n, 0.0), off(n, 0.0);
  for (const FlowEntry& e : plan.entries) {
    if (e.mass > best_mass[e.i]) {
      if (best[e.i] >= 0) off[e.i] += best_mass[e.i];
      best[e.i] = e.j;
      best_mass[e.i] = e.mass;
    } else {
      off[e.i] += e.mass;
    }
  }
  MongeResult result;
  bool deterministic = true;
  for (int i = 0; i < n; ++i) {
    if (best[i] < 0) throw Error(ErrorKind::MapUndefined, "source atom carries no mass");
    result.split_mass += off[i];
    if (off[i] > tol * plan.source.weights[i]) deterministic = false;
  }
  if (deterministic) {
    TransportMap map;
    for (int i = 0; i < n; ++i) {
      map.image.push_back(plan.target.points[best[i]]);
      map.target.push_back(best[i]);
    }
    result.map = std::move(map);
  }
  return result;
}

double psi_R(const Space& space, const DiscreteMeasure& nu, const PotentialPair& potentials, const Point& x,
             const Point& y0, double R) {
  if (!(R > 0.0)) throw Error(ErrorKind::ParamOutOfRange, "radius must be positive");
  double best = std::numeric_limits<double>::infinity();
  for (int j = 0; j < nu.size(); ++j) {
    if (!(space.distance(y0, nu.points[j]) < R)) continue;
    const double d = space.distance(x, nu.points[j]);
    best = std::min(best, potentials.phi[j] - 0.5 * d * d);
  }
  if (!std::isfinite(best)) throw Error(ErrorKind::EmptyBall, "no target atom inside B(y0, R)");
  return best;
}

IdentityResidual verify_transport_identity(const Space& space, const GridFunction2& psi, const TransportMap& map,
                                           const DiscreteMeasure& mu, int x_index, double h) {
  if (!space.euclidean() || space.dim() != 2)
    throw Error(ErrorKind::UnsupportedShape, "grid potentials live in the Euclidean plane");
  if (!(h > 0.0)) throw Error(ErrorKind::ParamOutOfRange, "step must be positive");
  if (x_index < 0 || x_index >= mu.size()) throw Error(ErrorKind::ParamOutOfRange, "source index out of range");
  if (x_index >= static_cast<int>(map.image.size())) throw Error(ErrorKind::MapUndefined, "map undefined at x");

  const Eigen::Vector2d x = mu.points[x_index].coords, tx = map.image[x_index].coords;
  const Eigen::Vector2d ex(h, 0.0), ey(0.0, h);
  for (const Eigen::Vector2d& p : {Eigen::Vector2d(x + ex), Eigen::Vector2d(x - ex), Eigen::Vector2d(x + ey), Eigen::Vector2d(x - ey)})
    if (!psi.contains(p)) throw Error(ErrorKind::BoundaryPoint, "x is not an interior grid point");

  IdentityResidual out;
  const double len = (tx - x).norm();
  if (len > 0.0) {
    const Eigen::Vector2d step = x + h * (tx - x) / len;
    if (!psi.contains(step)) throw Error(ErrorKind::BoundaryPoint, "difference step leaves the grid");
    const double dpsi = (psi(step) - psi(x)) / h * len;
    out.residual = std::abs(dpsi - len * len);
  }
  out.brenier = (tx - x - psi.gradient(x, h)).norm();
  return out;
}

json measure_to_json(const DiscreteMeasure& mu) {
  json points = json::array();
  for (const Point& p : mu.points) points.push_back(point_to_json(p));
  return {{"points", points}, {"weights", std::vector<double>(mu.weights.data(), mu.weights.data() + mu.weights.size())}};
}

DiscreteMeasure measure_from_json(const json& j) {
  if (!j.is_object() || !j.contains("points") || !j["points"].is_array())
    throw Error(ErrorKind::ConfigInvalid, "measure.points must be an array");
  DiscreteMeasure mu;
  for (const json& p : j["points"]) mu.points.push_back(point_from_json(p));
  if (j.contains("weights")) {
    if (!j["weights"].is_array()) throw Error(ErrorKind::ConfigInvalid, "measure.weights must be an array");
    std::vector<double> w;
    try {
      w = j["weights"].get<std::vector<double>>();
    } catch (const json::exception&) {
      throw Error(ErrorKind::ConfigInvalid, "measure.weights must be numbers");
    }
    mu.weights = Eigen::Map<Eigen::VectorXd>(w.data(), static_cast<Eigen::Index>(w.size()));
  } else {
    mu = uniform_measure(std::move(mu.points));
  }
  return mu;
}

json plan_to_json(const TransportPlan& plan) {
  json entries = json::array();
  for (const FlowEntry& e : plan.entries) entries.push_back(json::array({e.i, e.j, e.mass}));
  return {{"entries", entries}};
}

TransportPlan plan_from_json(const json& j, DiscreteMeasure source, DiscreteMeasure target) {
  if (!j.is_object() || !j.contains("entries") || !j["entries"].is_array())
    throw Error(ErrorKind::ConfigInvalid, "plan.entries must be an array");
  TransportPlan plan;
  for (const json& e : j["entries"]) {
    if (!e.is_array() || e.size() != 3 || !e[0].is_number_integer() || !e[1].is_number_integer() || !e[2].is_number())
      throw Error(ErrorKind::ConfigInvalid, "plan entries are [i, j, mass]");
    const FlowEntry f{e[0].get<int>(), e[1].get<int>(), e[2].get<double>()};
    if (f.i < 0 || f.i >= source.size() || f.j < 0 || f.j >= target.size() || !(f.mass > 0.0))
      throw Error(ErrorKind::ConfigInvalid, "plan entry out of range");
    plan.entries.push_back(f);
  }
  plan.source = std::move(source);
  plan.target = std::move(target);
  return plan;
}

std::string plan_to_csv(const TransportPlan& plan) {
  std::ostringstream out;
  out << "i,j,mass\n" << std::setprecision(17);
  for (const FlowEntry& e : plan.entries) out << e.i << ',' << e.j << ',' << e.mass << '\n';
  return out.str();
}

json map_to_json(const TransportMap& map) {
  json image = json::array();
  for (const Point& p : map.image) image.push_back(point_to_json(p));
  return {{"image", image}, {"target", map.target}};
}

}  // namespace cat0ot
