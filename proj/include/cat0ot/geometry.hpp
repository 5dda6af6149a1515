#pragma once

#include "cat0ot/geodesic.hpp"

#include <variant>
#include <vector>

namespace cat0ot {

double distance(const Space& space, const Point& p, const Point& q);

/// x_t on [p, q] with d(p, x_t) = t d(p, q).
Point convex_combination(const Space& space, const Point& p, const Point& q, double t);

inline constexpr double kTriangleSlack = 1e-12;

/// Angle of the Euclidean triangle with sides a, b, c at the vertex between a and b.
double comparison_angle(double a, double b, double c);

struct AngleEstimate {
  double value = 0.0;
  double bracket_low = 0.0;
  double bracket_high = 0.0;
  bool converged = false;
  /// Comparison angle at each schedule radius, in schedule order.
  std::vector<double> sequence;
};

/// Radii r0, r0/2, ... with r0 = min(lengths)/4 and 12 halvings.
std::vector<double> default_angle_schedule(const Geodesic& gamma, const Geodesic& eta);

/// Alexandrov angle between two geodesics with a common origin, estimated on
/// the diagonal: both geodesics are probed at arc length r for each schedule
/// radius r (strictly decreasing). Comparison angles do not increase as r
/// shrinks, so the last value bounds the limit from above.
AngleEstimate alexandrov_angle(const Geodesic& gamma, const Geodesic& eta,
                               const std::vector<double>& schedule, double tol = 1e-7);
AngleEstimate alexandrov_angle(const Geodesic& gamma, const Geodesic& eta);

/// (1-t) d(x,z)^2 + t d(y,z)^2 - t(1-t) d(x,y)^2 - d(x_t,z)^2; never below
/// round-off in a CAT(0) space, identically zero in Euclidean space.
double cat0_defect(const Space& space, const Point& x, const Point& y, const Point& z, double t);

struct SegmentSet {
  Point a;
  Point b;
};

struct BallSet {
  Point center;
  double radius = 0.0;
};

/// Union of whole tree edges; must be connected.
struct SubtreeSet {
  std::vector<int> edges;
};

using ConvexSet = std::variant<SegmentSet, BallSet, SubtreeSet>;

Point project_convex(const Space& space, const Point& x, const ConvexSet& set);

/// Continues gamma past its end by `delta`, keeping constant speed. At branch
/// points the continuation enters the admissible chart with the lowest index.
/// Throws NotExtendable at tree leaves.
Geodesic extend(const Geodesic& gamma, double delta);

}  // namespace cat0ot
