#include "cat0ot/regions.hpp"

#include "cat0ot/error.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace cat0ot {

namespace {

Eigen::VectorXd scalar(double s) { return Eigen::VectorXd::Constant(1, s); }

// Farthest vertex from `from` inside the edge set, by tree traversal.
std::pair<int, double> farthest(const MetricTree& t, const std::set<int>& edges, int from) {
  std::vector<double> dist(t.num_vertices(), -1.0);
  std::vector<int> stack{from};
  dist[from] = 0.0;
  std::pair<int, double> best{from, 0.0};
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int e : t.incident(v)) {
      if (!edges.count(e)) continue;
      const TreeEdge& ed = t.edges()[e];
      const int w = ed.a == v ? ed.b : ed.a;
      if (dist[w] >= 0.0) continue;
      dist[w] = dist[v] + ed.length;
      if (dist[w] > best.second) best = {w, dist[w]};
      stack.push_back(w);
    }
  }
  return best;
}

}  // namespace

RegionSampler::RegionSampler(const Space& space, const Region& region) : space_(space) {
  if (const auto* box = std::get_if<BoxRegion>(&region)) {
    if (space.tree()) throw Error(ErrorKind::UnsupportedRegion, "boxes need a flat chart");
    if (box->lo.size() != space.dim() || box->hi.size() != space.dim())
      throw Error(ErrorKind::UnsupportedRegion, "box dimension does not match the space");
    if (space.book()) {
      if (box->chart < 0 || box->chart >= space.book()->pages())
        throw Error(ErrorKind::UnsupportedRegion, "box page out of range");
      if (box->lo[0] < 0.0) throw Error(ErrorKind::UnsupportedRegion, "box leaves its page");
    } else if (box->chart != 0) {
      throw Error(ErrorKind::UnsupportedRegion, "Euclidean space has a single chart");
    }
    if ((box->hi.array() <= box->lo.array()).any()) return;
    const double vol = (box->hi - box->lo).prod();
    pieces_.push_back({box->chart, box->lo, box->hi, vol});
    total_ = vol;
    diameter_ = (box->hi - box->lo).norm();
    return;
  }

  if (const auto* sub = std::get_if<SubtreeRegion>(&region)) {
    const MetricTree* t = space.tree();
    if (!t) throw Error(ErrorKind::UnsupportedRegion, "subtrees exist only in metric trees");
    if (sub->edges.empty()) return;
    std::set<int> edges, vertices;
    for (int e : sub->edges) {
      if (e < 0 || e >= static_cast<int>(t->edges().size()))
        throw Error(ErrorKind::UnsupportedRegion, "subtree edge out of range");
      edges.insert(e);
      vertices.insert(t->edges()[e].a);
      vertices.insert(t->edges()[e].b);
    }
    if (vertices.size() != edges.size() + 1)
      throw Error(ErrorKind::UnsupportedRegion, "subtree edges are not connected");
    for (int e : edges) {
      const double len = t->edges()[e].length;
      pieces_.push_back({e, scalar(0.0), scalar(len), len});
      total_ += len;
    }
    const int end = farthest(*t, edges, *vertices.begin()).first;
    diameter_ = farthest(*t, edges, end).second;
    return;
  }

  const BallRegion& ball = std::get<BallRegion>(region);
  const Point c = space.normalize(ball.center);
  const double r = ball.radius;
  if (!(r > 0.0)) return;
  ball_ = BallRegion{c, r};
  diameter_ = 2.0 * r;

  if (const MetricTree* t = space.tree()) {
    // Exact: the ball meets each edge in at most one interval.
    double reach = 0.0;
    for (int e = 0; e < static_cast<int>(t->edges().size()); ++e) {
      const TreeEdge& ed = t->edges()[e];
      double lo, hi;
      if (c.chart == e) {
        lo = std::max(0.0, c.coords[0] - r);
        hi = std::min(ed.length, c.coords[0] + r);
      } else {
        const double da = space.distance(c, t->vertex_point(ed.a));
        const double db = space.distance(c, t->vertex_point(ed.b));
        if (da <= db) {
          lo = 0.0;
          hi = std::min(ed.length, r - da);
        } else {
          lo = std::max(0.0, ed.length - (r - db));
          hi = ed.length;
        }
      }
      if (hi > lo) {
        pieces_.push_back({e, scalar(lo), scalar(hi), hi - lo});
        total_ += hi - lo;
        reach = std::max({reach, space.distance(c, Point(e, scalar(lo))), space.distance(c, Point(e, scalar(hi)))});
      }
    }
    diameter_ = std::min(diameter_, 2.0 * reach);
    return;
  }

  exact_ = false;
  if (space.euclidean()) {
    const Eigen::VectorXd lo = c.coords.array() - r, hi = c.coords.array() + r;
    const double vol = std::pow(2.0 * r, space.dim());
    pieces_.push_back({0, lo, hi, vol});
    total_ = vol;
    return;
  }

  const OpenBook& book = *space.book();
  const double u0 = c.coords[0], v0 = c.coords[1];
  for (int page = 0; page < book.pages(); ++page) {
    Eigen::VectorXd lo(2), hi(2);
    if (page == c.chart) {
      lo << std::max(0.0, u0 - r), v0 - r;
      hi << u0 + r, v0 + r;
    } else {
      if (r <= u0) continue;
      lo << 0.0, v0 - r;
      hi << r - u0, v0 + r;
    }
    const double vol = (hi - lo).prod();
    pieces_.push_back({page, lo, hi, vol});
    total_ += vol;
  }
}

std::optional<Point> RegionSampler::draw(CounterRng& rng) const {
  double pick = rng.uniform() * total_;
  std::size_t k = 0;
  for (; k + 1 < pieces_.size(); ++k) {
    if (pick < pieces_[k].volume) break;
    pick -= pieces_[k].volume;
  }
  const Piece& piece = pieces_[k];
  Eigen::VectorXd x(piece.lo.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) x[i] = rng.uniform(piece.lo[i], piece.hi[i]);
  Point p = space_.normalize(Point(piece.chart, x));
  if (!exact_ && space_.distance(ball_->center, p) > ball_->radius) return std::nullopt;
  return p;
}

}  // namespace cat0ot
