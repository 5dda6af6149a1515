#include "cat0ot/geodesic.hpp"

#include "cat0ot/error.hpp"

#include <algorithm>
#include <limits>

namespace cat0ot {

Geodesic::Geodesic(Space space, const Point& start, const Point& end)
    : space_(std::move(space)), start_(space_.normalize(start)), end_(space_.normalize(end)) {
  pieces_ = space_.path(start_, end_);
  offsets_.reserve(pieces_.size() + 1);
  offsets_.push_back(0.0);
  for (const Piece& p : pieces_) offsets_.push_back(offsets_.back() + p.length);
  length_ = offsets_.back();
}

Point Geodesic::point_on_piece(std::size_t k, double lambda) const {
  const Piece& piece = pieces_[k];
  return space_.chart_point(piece.chart, piece.from + lambda * (piece.to - piece.from));
}

Point Geodesic::eval(double t) const {
  if (!(t >= -1e-12 && t <= 1.0 + 1e-12))
    throw Error(ErrorKind::ParamOutOfRange, "geodesic parameter must lie in [0,1]");
  if (t <= 0.0 || pieces_.empty()) return start_;
  if (t >= 1.0) return end_;
  const double r = t * length_;
  auto it = std::upper_bound(offsets_.begin(), offsets_.end(), r);
  std::size_t k = static_cast<std::size_t>(std::distance(offsets_.begin(), it));
  k = std::min(k == 0 ? 0 : k - 1, pieces_.size() - 1);
  const double lambda = std::clamp((r - offsets_[k]) / pieces_[k].length, 0.0, 1.0);
  return point_on_piece(k, lambda);
}

Point Geodesic::at_arclength(double r) const {
  if (length_ == 0.0) return start_;
  return eval(std::min(r / length_, 1.0));
}

std::vector<Breakpoint> Geodesic::breakpoints() const {
  std::vector<Breakpoint> out;
  for (std::size_t k = 1; k < pieces_.size(); ++k)
    out.push_back({offsets_[k] / length_, point_on_piece(k, 0.0)});
  return out;
}

Geodesic Geodesic::reversed() const {
  Geodesic g = *this;
  std::swap(g.start_, g.end_);
  std::reverse(g.pieces_.begin(), g.pieces_.end());
  for (Piece& p : g.pieces_) std::swap(p.from, p.to);
  g.offsets_.assign(1, 0.0);
  for (const Piece& p : g.pieces_) g.offsets_.push_back(g.offsets_.back() + p.length);
  g.length_ = g.offsets_.back();
  return g;
}

PieceNearest Geodesic::locate(const Point& x) const {
  if (pieces_.empty()) return {0.0, space_.distance(start_, x)};
  PieceNearest best{0.0, std::numeric_limits<double>::infinity()};
  for (std::size_t k = 0; k < pieces_.size(); ++k) {
    const PieceNearest n = space_.nearest_on_piece(x, pieces_[k]);
    if (n.distance < best.distance)
      best = {(offsets_[k] + n.param * pieces_[k].length) / length_, n.distance};
  }
  best.param = std::clamp(best.param, 0.0, 1.0);
  return best;
}

}  // namespace cat0ot
