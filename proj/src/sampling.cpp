#include "cat0ot/sampling.hpp"

#include "cat0ot/error.hpp"

namespace cat0ot {

Point random_point(const Space& space, CounterRng& rng, double boundary_prob) {
  const bool boundary = boundary_prob > 0.0 && rng.uniform() < boundary_prob;
  if (const auto* e = space.euclidean()) {
    Eigen::VectorXd c(e->dim());
    for (int i = 0; i < e->dim(); ++i) c[i] = rng.uniform(-1.0, 1.0);
    return Point(0, c);
  }
  if (const auto* b = space.book()) {
    const int page = static_cast<int>(rng.below(static_cast<std::uint64_t>(b->pages())));
    const double u = rng.uniform();
    const double v = rng.uniform(-1.0, 1.0);
    Eigen::VectorXd c(2);
    c << (boundary ? 0.0 : u), v;
    return b->normalize(Point(page, c));
  }
  const MetricTree& t = *space.tree();
  double target = rng.uniform() * t.total_length();
  int edge = 0;
  for (; edge + 1 < static_cast<int>(t.edges().size()); ++edge) {
    if (target < t.edges()[edge].length) break;
    target -= t.edges()[edge].length;
  }
  const double len = t.edges()[edge].length;
  double s = rng.uniform() * len;
  if (boundary) s = rng.uniform() < 0.5 ? 0.0 : len;
  Eigen::VectorXd c(1);
  c[0] = s;
  return t.normalize(Point(edge, c));
}

std::vector<Point> random_points(const Space& space, CounterRng& rng, std::size_t n,
                                 double boundary_prob) {
  std::vector<Point> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(random_point(space, rng, boundary_prob));
  return out;
}

std::vector<Point> random_distinct_points(const Space& space, CounterRng& rng, std::size_t n,
                                          double min_separation) {
  std::vector<Point> out;
  out.reserve(n);
  std::size_t attempts = 0;
  while (out.size() < n) {
    if (++attempts > 1000 * (n + 1))
      throw Error(ErrorKind::ParamOutOfRange, "cannot place that many separated points");
    Point p = random_point(space, rng, 0.0);
    bool ok = true;
    for (const Point& q : out)
      if (space.distance(p, q) < min_separation) {
        ok = false;
        break;
      }
    if (ok) out.push_back(std::move(p));
  }
  return out;
}

}  // namespace cat0ot
