#include "cat0ot/calculus.hpp"

#include "cat0ot/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace cat0ot {

double cost(const Space& space, const Point& x, const Point& y) {
  const double d = space.distance(x, y);
  return 0.5 * d * d;
}

double cost_derivative_closed(const Geodesic& gamma, double t, double s) {
  if (!(t >= 0.0 && t <= 1.0 && s >= 0.0 && s <= 1.0))
    throw Error(ErrorKind::ParamOutOfRange, "parameters must lie in [0,1]");
  return (t - s) * gamma.length() * gamma.length();
}

std::vector<double> default_derivative_schedule() {
  std::vector<double> steps;
  double h = 1.0 / 16.0;
  for (int k = 0; k <= 10; ++k, h *= 0.5) steps.push_back(h);
  return steps;
}

DerivativeEstimate geodesic_derivative(const PointFunction& f, const Point& x, const Geodesic& gamma,
                                       const std::vector<double>& schedule) {
  if (schedule.empty()) throw Error(ErrorKind::ScheduleTooShort, "empty step schedule");
  for (std::size_t k = 0; k < schedule.size(); ++k)
    if (!(schedule[k] > 0.0) || (k > 0 && !(schedule[k] < schedule[k - 1])))
      throw Error(ErrorKind::ParamOutOfRange, "steps must be positive and strictly decreasing");
  const PieceNearest at = gamma.locate(x);
  if (at.distance > 1e-9) throw Error(ErrorKind::PointNotOnGeodesic, "point is not on the geodesic");

  DerivativeEstimate est;
  if (gamma.length() == 0.0) {
    est.has_plus = est.has_minus = est.differentiable = true;
    return est;
  }
  const double s = at.param;
  const double f0 = f(gamma.eval(s));

  struct Side {
    bool ok = false;
    double value = 0.0;
    double step = 0.0;
  };
  auto side = [&](double sign) {
    double h_prev = 0.0, q_prev = 0.0;
    Side out;
    for (double h : schedule) {
      const double t = s + sign * h;
      if (t < 0.0 || t > 1.0) continue;
      const double q = sign * (f(gamma.eval(t)) - f0) / h;
      out.value = out.ok ? (h_prev * q - h * q_prev) / (h_prev - h) : q;
      out.step = h;
      out.ok = true;
      h_prev = h;
      q_prev = q;
    }
    return out;
  };

  const Side plus = side(1.0), minus = side(-1.0);
  est.has_plus = plus.ok;
  est.has_minus = minus.ok;
  est.one_sided_plus = plus.ok ? plus.value : minus.value;
  est.one_sided_minus = minus.ok ? minus.value : plus.value;
  est.step = std::min(plus.ok ? plus.step : 1.0, minus.ok ? minus.step : 1.0);
  const double tol = 1e-5 * (1.0 + std::abs(est.one_sided_plus) + std::abs(est.one_sided_minus));
  est.differentiable = std::abs(est.one_sided_plus - est.one_sided_minus) < tol;
  if (!est.has_minus)
    est.value = est.one_sided_plus;
  else if (!est.has_plus)
    est.value = est.one_sided_minus;
  else
    est.value = 0.5 * (est.one_sided_plus + est.one_sided_minus);
  return est;
}

DerivativeEstimate geodesic_derivative(const PointFunction& f, const Point& x, const Geodesic& gamma) {
  return geodesic_derivative(f, x, gamma, default_derivative_schedule());
}

namespace {

std::vector<Eigen::VectorXd> flat_directions(int dim, int n) {
  std::vector<Eigen::VectorXd> dirs;
  if (dim == 2) {
    for (int k = 0; k < n; ++k) {
      const double a = 2.0 * std::numbers::pi * k / n;
      dirs.push_back(Eigen::Vector2d(std::cos(a), std::sin(a)));
    }
    return dirs;
  }
  for (int i = 0; i < dim; ++i) {
    for (double sign : {1.0, -1.0}) dirs.push_back(sign * Eigen::VectorXd::Unit(dim, i));
    for (int j = i + 1; j < dim; ++j)
      for (double si : {1.0, -1.0})
        for (double sj : {1.0, -1.0})
          dirs.push_back((si * Eigen::VectorXd::Unit(dim, i) + sj * Eigen::VectorXd::Unit(dim, j)) / std::sqrt(2.0));
  }
  return dirs;
}

// Unit step from page point (u, v) in direction `dir` of the page plane,
// continuing straight through the spine onto the next page.
Point book_step(const OpenBook& book, const Point& x, const Eigen::Vector2d& dir) {
  const double u = x.coords[0] + dir[0], v = x.coords[1] + dir[1];
  if (u >= 0.0) return book.normalize(Point(x.chart, Eigen::Vector2d(u, v)));
  return book.normalize(Point(x.chart == 0 ? 1 : 0, Eigen::Vector2d(-u, v)));
}

}  // namespace

std::vector<Geodesic> sample_directions(const Space& space, const Point& x, int n,
                                        const std::vector<Point>& toward) {
  if (n < 1) throw Error(ErrorKind::ParamOutOfRange, "need at least one direction");
  const Point xn = space.normalize(x);
  std::vector<Geodesic> out;
  if (const MetricTree* t = space.tree()) {
    if (const auto v = t->vertex_of(xn)) {
      for (int e : t->incident(*v)) {
        const TreeEdge& ed = t->edges()[e];
        out.emplace_back(space, xn, t->vertex_point(ed.a == *v ? ed.b : ed.a));
      }
    } else {
      const TreeEdge& ed = t->edges()[xn.chart];
      out.emplace_back(space, xn, t->vertex_point(ed.a));
      out.emplace_back(space, xn, t->vertex_point(ed.b));
    }
  } else if (const OpenBook* b = space.book()) {
    if (OpenBook::on_spine(xn)) {
      const int half = std::max(1, n / 2);
      for (int page = 0; page < b->pages(); ++page)
        for (int k = 0; k <= half; ++k) {
          const double a = std::numbers::pi * (static_cast<double>(k) / half - 0.5);
          const Eigen::Vector2d target(std::cos(a), xn.coords[1] + std::sin(a));
          out.emplace_back(space, xn, b->normalize(Point(page, target)));
        }
    } else {
      for (const Eigen::VectorXd& d : flat_directions(2, n)) out.emplace_back(space, xn, book_step(*b, xn, d));
    }
  } else {
    const int dim = space.dim();
    if (dim == 1) {
      for (double sign : {1.0, -1.0}) out.emplace_back(space, xn, Point(0, xn.coords.array() + sign));
    } else {
      for (const Eigen::VectorXd& d : flat_directions(dim, n)) out.emplace_back(space, xn, Point(0, xn.coords + d));
    }
  }
  for (const Point& y : toward)
    if (!space.same_point(xn, y)) out.emplace_back(space, xn, y);
  return out;
}

TwistReport twist_test(const Space& space, const Point& x, const Point& y1, const Point& y2,
                       const std::vector<Geodesic>& directions, double gap_tol) {
  const PointFunction c1 = [&](const Point& p) { return cost(space, p, y1); };
  const PointFunction c2 = [&](const Point& p) { return cost(space, p, y2); };
  TwistReport report;
  std::size_t best = 0;
  for (std::size_t k = 0; k < directions.size(); ++k) {
    const Geodesic& g = directions[k];
    if (!space.same_point(g.start(), x)) throw Error(ErrorKind::OriginMismatch, "direction does not start at x");
    const double gap = std::abs(geodesic_derivative(c1, g.start(), g).value - geodesic_derivative(c2, g.start(), g).value);
    if (gap > report.max_gap) {
      report.max_gap = gap;
      best = k;
    }
  }
  report.twist_holds = report.max_gap > gap_tol;
  if (report.twist_holds) report.distinguishing_geodesic = directions[best];
  return report;
}

FermatReport fermat_check(const Space& space, const PointFunction& f, const Point& x_star,
                          const std::vector<Geodesic>& directions, double tol) {
  FermatReport report;
  report.min_directional = std::numeric_limits<double>::infinity();
  for (const Geodesic& g : directions) {
    if (!space.same_point(g.start(), x_star))
      throw Error(ErrorKind::OriginMismatch, "direction does not start at x_star");
    report.min_directional = std::min(report.min_directional, geodesic_derivative(f, g.start(), g).value);
    if (g.length() == 0.0) continue;
    std::optional<Geodesic> through;
    try {
      through = extend(g.reversed(), g.length());
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NotExtendable) throw;
    }
    if (!through) continue;
    const DerivativeEstimate d = geodesic_derivative(f, g.start(), *through);
    ++report.two_sided_checked;
    if (!(std::abs(d.one_sided_plus) < tol && std::abs(d.one_sided_minus) < tol)) report.two_sided_zero = false;
  }
  if (directions.empty()) report.min_directional = 0.0;
  return report;
}

Point radial_projection(const Space& space, const Geodesic& gamma, const Point& x) {
  const double r = space.distance(gamma.start(), x);
  return gamma.at_arclength(std::min(r, gamma.length()));
}

namespace {

constexpr int kBatches = 20;

// Mean and batch-means standard error of per-sample values.
struct BatchStats {
  explicit BatchStats(long n) : n_(n), sums_(kBatches, 0.0) {}
  void add(long i, double value) { sums_[static_cast<std::size_t>(i * kBatches / n_)] += value; }
  double mean() const {
    double s = 0.0;
    for (double b : sums_) s += b;
    return s / n_;
  }
  double std_error() const {
    std::vector<double> means(kBatches);
    for (int b = 0; b < kBatches; ++b) {
      const long lo = (b * n_ + kBatches - 1) / kBatches, hi = ((b + 1) * n_ + kBatches - 1) / kBatches;
      means[b] = sums_[b] / static_cast<double>(hi - lo);
    }
    double m = 0.0;
    for (double x : means) m += x;
    m /= kBatches;
    double var = 0.0;
    for (double x : means) var += (x - m) * (x - m);
    var /= kBatches - 1;
    return std::sqrt(var / kBatches);
  }

 private:
  long n_;
  std::vector<double> sums_;
};

double shell_weight(double rho, double eps, double length) {
  const double lo = std::max(rho - eps, 0.0), hi = std::min(rho + eps, length);
  return hi > lo ? std::min(1.0, (hi - lo) / (2.0 * eps)) : 0.0;
}

}  // namespace

EilenbergEstimate eilenberg_estimate(const Space& space, const Geodesic& gamma, const Region& region,
                                     long n_samples, std::optional<double> epsilon, std::uint64_t seed) {
  const RegionSampler sampler(space, region);
  EilenbergEstimate est;
  if (sampler.empty()) return est;
  const double diam = sampler.diameter();
  est.epsilon = epsilon.value_or(diam / 200.0);
  if (!(est.epsilon > 0.0) || est.epsilon > diam / 10.0)
    throw Error(ErrorKind::BadEpsilon, "epsilon must lie in (0, diam/10]");
  if (n_samples < kBatches) throw Error(ErrorKind::ParamOutOfRange, "need at least 20 samples");

  CounterRng rng = CounterRng::substream(seed, "eilenberg");
  const double volume = sampler.proposal_volume();
  BatchStats lhs(n_samples), rhs(n_samples), diff(n_samples);
  for (long i = 0; i < n_samples; ++i) {
    const std::optional<Point> p = sampler.draw(rng);
    if (!p) continue;
    const double w = shell_weight(space.distance(gamma.start(), *p), est.epsilon, gamma.length());
    lhs.add(i, volume * w);
    rhs.add(i, volume);
    diff.add(i, volume * (w - 1.0));
  }
  est.lhs = lhs.mean();
  est.rhs = rhs.mean();
  est.sigma = diff.std_error();
  est.holds = est.lhs <= est.rhs + 3.0 * est.sigma;
  return est;
}

ZetaReport zeta_positivity(const Space& space, const Point& x, const Geodesic& gamma,
                           const std::vector<Point>& probes, double epsilon, long n_samples,
                           std::uint64_t seed) {
  if (!space.same_point(gamma.start(), x)) throw Error(ErrorKind::OriginMismatch, "geodesic does not start at x");
  if (!(epsilon > 0.0)) throw Error(ErrorKind::BadEpsilon, "epsilon must be positive");
  if (n_samples < kBatches) throw Error(ErrorKind::ParamOutOfRange, "need at least 20 samples");
  for (const Point& p : probes)
    if (space.same_point(p, x)) throw Error(ErrorKind::ProbeAtCenter, "probe coincides with the center");

  const double radius = 5.0 * epsilon;
  const double k = space.dim() - 1;
  const double section = std::pow(std::numbers::pi, k / 2.0) / std::tgamma(k / 2.0 + 1.0) * std::pow(radius, k);
  CounterRng rng = CounterRng::substream(seed, "zeta");
  ZetaReport report;
  report.min_density = std::numeric_limits<double>::infinity();
  report.positive = true;
  for (const Point& probe : probes) {
    const RegionSampler sampler(space, BallRegion{probe, radius});
    const double rho = space.distance(x, probe);
    const double scale = sampler.proposal_volume() / (2.0 * epsilon * section);
    BatchStats stats(n_samples);
    for (long i = 0; i < n_samples; ++i) {
      const std::optional<Point> u = sampler.draw(rng);
      if (u && std::abs(space.distance(x, *u) - rho) < epsilon) stats.add(i, scale);
    }
    const ProbeDensity pd{stats.mean(), stats.std_error()};
    report.probes.push_back(pd);
    report.min_density = std::min(report.min_density, pd.density);
    if (!(pd.density - 3.0 * pd.sigma > 0.0)) report.positive = false;
  }
  if (probes.empty()) report.min_density = 0.0;
  return report;
}

}  // namespace cat0ot
