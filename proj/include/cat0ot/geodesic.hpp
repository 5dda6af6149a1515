#pragma once

#include "cat0ot/space.hpp"

#include <vector>

namespace cat0ot {

struct Breakpoint {
  double t = 0.0;
  Point point;
};

/// Constant-speed geodesic on [0,1], stored as a chain of chart-local
/// straight pieces.
class Geodesic {
 public:
  Geodesic(Space space, const Point& start, const Point& end);

  const Space& space() const { return space_; }
  const Point& start() const { return start_; }
  const Point& end() const { return end_; }
  double length() const { return length_; }
  const std::vector<Piece>& pieces() const { return pieces_; }

  /// Point at parameter t in [0,1]; d(start, eval(t)) = t * length.
  Point eval(double t) const;
  Point at_arclength(double r) const;
  /// Interior transition points (spine crossings, tree vertices), in order.
  std::vector<Breakpoint> breakpoints() const;
  Geodesic reversed() const;

  /// Parameter of the point of the geodesic nearest to x, and the distance.
  PieceNearest locate(const Point& x) const;

 private:
  Point point_on_piece(std::size_t k, double lambda) const;

  Space space_;
  Point start_;
  Point end_;
  std::vector<Piece> pieces_;
  std::vector<double> offsets_;
  double length_ = 0.0;
};

inline Geodesic geodesic(const Space& space, const Point& p, const Point& q) {
  return Geodesic(space, p, q);
}

}  // namespace cat0ot
