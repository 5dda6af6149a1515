#include "cat0ot/geometry.hpp"

#include "cat0ot/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>

namespace cat0ot {

double distance(const Space& space, const Point& p, const Point& q) { return space.distance(p, q); }

Point convex_combination(const Space& space, const Point& p, const Point& q, double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw Error(ErrorKind::ParamOutOfRange, "t must lie in [0,1]");
  return Geodesic(space, p, q).eval(t);
}

double comparison_angle(double a, double b, double c) {
  if (!(a > 0.0) || !(b > 0.0)) throw Error(ErrorKind::DegenerateTriangle, "sides a and b must be positive");
  if (c < 0.0) throw Error(ErrorKind::NotATriangle, "negative side");
  const double slack = kTriangleSlack * std::max(1.0, a + b + c);
  if (c > a + b + slack || c < std::abs(a - b) - slack)
    throw Error(ErrorKind::NotATriangle, "sides violate the triangle inequality");
  const double cosine = (a * a + b * b - c * c) / (2.0 * a * b);
  return std::acos(std::clamp(cosine, -1.0, 1.0));
}

std::vector<double> default_angle_schedule(const Geodesic& gamma, const Geodesic& eta) {
  std::vector<double> radii;
  double r = std::min(gamma.length(), eta.length()) / 4.0;
  for (int k = 0; k <= 12; ++k, r *= 0.5) radii.push_back(r);
  return radii;
}

AngleEstimate alexandrov_angle(const Geodesic& gamma, const Geodesic& eta,
                               const std::vector<double>& schedule, double tol) {
  const Space& space = gamma.space();
  if (!space.same_point(gamma.start(), eta.start()))
    throw Error(ErrorKind::OriginMismatch, "geodesics do not share their origin");
  if (schedule.size() < 2) throw Error(ErrorKind::ScheduleTooShort, "need at least two radii");
  const double reach = std::min(gamma.length(), eta.length());
  for (std::size_t k = 0; k < schedule.size(); ++k) {
    if (!(schedule[k] > 0.0) || schedule[k] > reach || (k > 0 && !(schedule[k] < schedule[k - 1])))
      throw Error(ErrorKind::ParamOutOfRange, "schedule must be strictly decreasing within (0, length]");
  }

  AngleEstimate est;
  for (double r : schedule) {
    const double c = space.distance(gamma.at_arclength(r), eta.at_arclength(r));
    est.sequence.push_back(comparison_angle(r, r, c));
  }
  est.value = est.sequence.back();
  est.bracket_low = *std::min_element(est.sequence.begin(), est.sequence.end());
  est.bracket_high = *std::max_element(est.sequence.begin(), est.sequence.end());
  est.converged = std::abs(est.sequence.back() - est.sequence[est.sequence.size() - 2]) < tol;
  return est;
}

AngleEstimate alexandrov_angle(const Geodesic& gamma, const Geodesic& eta) {
  return alexandrov_angle(gamma, eta, default_angle_schedule(gamma, eta));
}

double cat0_defect(const Space& space, const Point& x, const Point& y, const Point& z, double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw Error(ErrorKind::ParamOutOfRange, "t must lie in [0,1]");
  const double dxz = space.distance(x, z), dyz = space.distance(y, z), dxy = space.distance(x, y);
  const double dtz = space.distance(convex_combination(space, x, y, t), z);
  return (1.0 - t) * dxz * dxz + t * dyz * dyz - t * (1.0 - t) * dxy * dxy - dtz * dtz;
}

namespace {

Point project_segment(const Space& space, const Point& x, const SegmentSet& s) {
  const Geodesic seg(space, s.a, s.b);
  return seg.eval(seg.locate(x).param);
}

Point project_ball(const Space& space, const Point& x, const BallSet& b) {
  if (!(b.radius >= 0.0)) throw Error(ErrorKind::UnsupportedConvexSet, "ball radius must be >= 0");
  const double d = space.distance(b.center, x);
  if (d <= b.radius) return space.normalize(x);
  return Geodesic(space, b.center, x).eval(b.radius / d);
}

Point project_subtree(const Space& space, const Point& x, const SubtreeSet& s) {
  const MetricTree* tree = space.tree();
  if (!tree) throw Error(ErrorKind::UnsupportedConvexSet, "subtrees exist only in metric trees");
  if (s.edges.empty()) throw Error(ErrorKind::UnsupportedConvexSet, "empty subtree");
  std::set<int> vertices;
  for (int e : s.edges) {
    if (e < 0 || e >= static_cast<int>(tree->edges().size()))
      throw Error(ErrorKind::UnsupportedConvexSet, "subtree edge out of range");
    vertices.insert(tree->edges()[e].a);
    vertices.insert(tree->edges()[e].b);
  }
  if (vertices.size() != s.edges.size() + 1)
    throw Error(ErrorKind::UnsupportedConvexSet, "subtree edges are not connected");

  const Point xn = space.normalize(x);
  const std::set<int> edge_set(s.edges.begin(), s.edges.end());
  if (edge_set.count(xn.chart)) return xn;
  if (auto v = tree->vertex_of(xn); v && vertices.count(*v)) return xn;
  // Outside the subtree the nearest point is its unique gate vertex.
  Point best;
  double best_d = std::numeric_limits<double>::infinity();
  for (int v : vertices) {
    const Point vp = tree->vertex_point(v);
    const double d = space.distance(vp, xn);
    if (d < best_d) {
      best_d = d;
      best = vp;
    }
  }
  return best;
}

}  // namespace

Point project_convex(const Space& space, const Point& x, const ConvexSet& set) {
  return std::visit(
      [&](const auto& s) -> Point {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, SegmentSet>)
          return project_segment(space, x, s);
        else if constexpr (std::is_same_v<T, BallSet>)
          return project_ball(space, x, s);
        else
          return project_subtree(space, x, s);
      },
      set);
}

Geodesic extend(const Geodesic& gamma, double delta) {
  if (!(delta > 0.0)) throw Error(ErrorKind::ParamOutOfRange, "extension length must be positive");
  if (gamma.length() == 0.0) throw Error(ErrorKind::NotExtendable, "constant geodesic has no direction");
  const auto end = gamma.space().extend_end(gamma.pieces(), delta);
  if (!end) throw Error(ErrorKind::NotExtendable, "geodesic ends at a point with no continuation");
  return Geodesic(gamma.space(), gamma.start(), *end);
}

}  // namespace cat0ot
