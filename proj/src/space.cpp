#include "cat0ot/space.hpp"

#include "cat0ot/error.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <set>
#include <sstream>

namespace cat0ot {

namespace {

bool all_finite(const Eigen::VectorXd& v) { return v.allFinite(); }

PieceNearest nearest_on_segment(const Eigen::VectorXd& x, const Piece& piece) {
  const Eigen::VectorXd dir = piece.to - piece.from;
  const double len2 = dir.squaredNorm();
  double lambda = 0.0;
  if (len2 > 0.0) lambda = std::clamp((x - piece.from).dot(dir) / len2, 0.0, 1.0);
  const Eigen::VectorXd foot = piece.from + lambda * dir;
  return {lambda, (foot - x).norm()};
}

std::string describe(const Point& p) {
  std::ostringstream os;
  os << "chart " << p.chart << " coords [";
  for (Eigen::Index i = 0; i < p.coords.size(); ++i) os << (i ? ", " : "") << p.coords[i];
  os << "]";
  return os.str();
}

}  // namespace

// ---------------------------------------------------------------------------
// Euclidean

EuclideanSpace::EuclideanSpace(int dim) : dim_(dim) {
  if (dim < 1) throw Error(ErrorKind::ParamOutOfRange, "Euclidean dimension must be >= 1");
}

void EuclideanSpace::validate(const Point& p) const {
  if (p.chart != 0 || p.coords.size() != dim_ || !all_finite(p.coords))
    throw Error(ErrorKind::InvalidPoint, describe(p));
}

Point EuclideanSpace::normalize(const Point& p) const { return p; }

Point EuclideanSpace::chart_point(int, const Eigen::VectorXd& coords) const { return Point(0, coords); }

double EuclideanSpace::distance(const Point& p, const Point& q) const {
  return (p.coords - q.coords).norm();
}

std::vector<Piece> EuclideanSpace::path(const Point& p, const Point& q) const {
  const double len = distance(p, q);
  if (len == 0.0) return {};
  return {Piece{0, p.coords, q.coords, len}};
}

PieceNearest EuclideanSpace::nearest_on_piece(const Point& x, const Piece& piece) const {
  return nearest_on_segment(x.coords, piece);
}

std::optional<Point> EuclideanSpace::extend_end(const std::vector<Piece>& pieces, double delta) const {
  if (pieces.empty()) return std::nullopt;
  const Piece& last = pieces.back();
  const Eigen::VectorXd dir = (last.to - last.from) / last.length;
  return Point(0, last.to + delta * dir);
}

// ---------------------------------------------------------------------------
// Open book

OpenBook::OpenBook(int pages) : pages_(pages) {
  if (pages < 2) throw Error(ErrorKind::ParamOutOfRange, "open book needs at least 2 pages");
}

void OpenBook::validate(const Point& p) const {
  if (p.chart < 0 || p.chart >= pages_ || p.coords.size() != 2 || !all_finite(p.coords) ||
      p.coords[0] < 0.0)
    throw Error(ErrorKind::InvalidPoint, describe(p));
}

Point OpenBook::normalize(const Point& p) const {
  Point out = p;
  if (out.coords[0] == 0.0) {
    out.coords[0] = 0.0;  // drops a negative zero
    out.chart = 0;
  }
  return out;
}

Point OpenBook::chart_point(int chart, const Eigen::VectorXd& coords) const {
  Point p(chart, coords);
  p.coords[0] = std::max(p.coords[0], 0.0);
  return normalize(p);
}

double OpenBook::distance(const Point& p, const Point& q) const {
  if (p.chart == q.chart || on_spine(p) || on_spine(q)) return (p.coords - q.coords).norm();
  return std::hypot(p.coords[0] + q.coords[0], p.coords[1] - q.coords[1]);
}

std::vector<Piece> OpenBook::path(const Point& p, const Point& q) const {
  const double len = distance(p, q);
  if (len == 0.0) return {};
  const bool ps = on_spine(p), qs = on_spine(q);
  if (p.chart == q.chart || ps || qs) {
    const int chart = ps && qs ? 0 : (ps ? q.chart : p.chart);
    return {Piece{chart, p.coords, q.coords, len}};
  }
  // Unfold the two pages into one plane; the straight line meets the spine at v*.
  const double u1 = p.coords[0], v1 = p.coords[1];
  const double u2 = q.coords[0], v2 = q.coords[1];
  const double vstar = v1 + u1 * (v2 - v1) / (u1 + u2);
  Eigen::VectorXd cross(2);
  cross << 0.0, vstar;
  return {Piece{p.chart, p.coords, cross, std::hypot(u1, vstar - v1)},
          Piece{q.chart, cross, q.coords, std::hypot(u2, v2 - vstar)}};
}

PieceNearest OpenBook::nearest_on_piece(const Point& x, const Piece& piece) const {
  Eigen::VectorXd image = x.coords;
  // Seen from another page, x sits at its mirror image across the spine.
  if (!on_spine(x) && x.chart != piece.chart) image[0] = -image[0];
  return nearest_on_segment(image, piece);
}

std::optional<Point> OpenBook::extend_end(const std::vector<Piece>& pieces, double delta) const {
  if (pieces.empty()) return std::nullopt;
  const Piece& last = pieces.back();
  const Eigen::VectorXd dir = (last.to - last.from) / last.length;
  const Eigen::VectorXd& end = last.to;
  const double du = dir[0];
  if (du >= 0.0 || delta * (-du) <= end[0]) return chart_point(last.chart, end + delta * dir);

  const double to_spine = end[0] / (-du);
  const double rest = delta - to_spine;
  const int next_page = last.chart == 0 ? 1 : 0;
  Eigen::VectorXd out(2);
  out << rest * (-du), end[1] + delta * dir[1];
  return chart_point(next_page, out);
}

// ---------------------------------------------------------------------------
// Metric tree

MetricTree::MetricTree(std::vector<int> vertex_ids, std::vector<TreeEdge> edges, int root)
    : vertex_ids_(std::move(vertex_ids)), edges_(std::move(edges)), root_(root) {
  const int n = num_vertices();
  if (n < 2) throw Error(ErrorKind::InvalidSpace, "tree needs at least two vertices");
  if (static_cast<int>(edges_.size()) != n - 1)
    throw Error(ErrorKind::InvalidSpace, "a tree on n vertices has n-1 edges");
  if (std::set<int>(vertex_ids_.begin(), vertex_ids_.end()).size() != vertex_ids_.size())
    throw Error(ErrorKind::InvalidSpace, "duplicate vertex ids");
  if (root_ < 0 || root_ >= n) throw Error(ErrorKind::InvalidSpace, "root out of range");

  incident_.assign(n, {});
  for (int e = 0; e < static_cast<int>(edges_.size()); ++e) {
    const TreeEdge& ed = edges_[e];
    if (ed.a < 0 || ed.a >= n || ed.b < 0 || ed.b >= n || ed.a == ed.b)
      throw Error(ErrorKind::InvalidSpace, "edge " + std::to_string(e) + " has bad endpoints");
    if (!(ed.length > 0.0) || !std::isfinite(ed.length))
      throw Error(ErrorKind::InvalidSpace, "edge " + std::to_string(e) + " needs positive length");
    incident_[ed.a].push_back(e);
    incident_[ed.b].push_back(e);
  }

  parent_.assign(n, -1);
  parent_edge_.assign(n, -1);
  hops_.assign(n, -1);
  depth_.assign(n, 0.0);
  std::deque<int> queue{root_};
  hops_[root_] = 0;
  int seen = 1;
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    for (int e : incident_[v]) {
      const int w = edges_[e].a == v ? edges_[e].b : edges_[e].a;
      if (hops_[w] >= 0) continue;
      hops_[w] = hops_[v] + 1;
      depth_[w] = depth_[v] + edges_[e].length;
      parent_[w] = v;
      parent_edge_[w] = e;
      queue.push_back(w);
      ++seen;
    }
  }
  if (seen != n) throw Error(ErrorKind::InvalidSpace, "edge list is not connected");
}

double MetricTree::total_length() const {
  double total = 0.0;
  for (const TreeEdge& e : edges_) total += e.length;
  return total;
}

Point MetricTree::vertex_point(int v) const {
  const int e = incident_.at(v).front();
  Eigen::VectorXd s(1);
  s[0] = edges_[e].a == v ? 0.0 : edges_[e].length;
  return Point(e, s);
}

std::optional<int> MetricTree::vertex_of(const Point& p) const {
  const TreeEdge& e = edges_[p.chart];
  if (p.coords[0] <= 0.0) return e.a;
  if (p.coords[0] >= e.length) return e.b;
  return std::nullopt;
}

std::vector<std::pair<int, int>> MetricTree::vertex_path(int u, int v) const {
  std::vector<std::pair<int, int>> up, down;
  while (hops_[u] > hops_[v]) {
    up.emplace_back(parent_edge_[u], u);
    u = parent_[u];
  }
  while (hops_[v] > hops_[u]) {
    down.emplace_back(parent_edge_[v], parent_[v]);
    v = parent_[v];
  }
  while (u != v) {
    up.emplace_back(parent_edge_[u], u);
    u = parent_[u];
    down.emplace_back(parent_edge_[v], parent_[v]);
    v = parent_[v];
  }
  up.insert(up.end(), down.rbegin(), down.rend());
  return up;
}

double MetricTree::vertex_distance(int u, int v) const {
  double d = 0.0;
  for (const auto& [e, from] : vertex_path(u, v)) d += edges_[e].length;
  return d;
}

void MetricTree::validate(const Point& p) const {
  if (p.chart < 0 || p.chart >= static_cast<int>(edges_.size()) || p.coords.size() != 1 ||
      !all_finite(p.coords) || p.coords[0] < 0.0 || p.coords[0] > edges_[p.chart].length)
    throw Error(ErrorKind::InvalidPoint, describe(p));
}

Point MetricTree::normalize(const Point& p) const {
  if (auto v = vertex_of(p)) return vertex_point(*v);
  return p;
}

Point MetricTree::chart_point(int chart, const Eigen::VectorXd& coords) const {
  Point p(chart, coords);
  p.coords[0] = std::clamp(p.coords[0], 0.0, edges_[chart].length);
  return normalize(p);
}

MetricTree::Route MetricTree::best_route(const Point& p, const Point& q) const {
  const TreeEdge& ep = edges_[p.chart];
  const TreeEdge& eq = edges_[q.chart];
  const double sp = p.coords[0], sq = q.coords[0];
  const int ends_p[2] = {ep.a, ep.b};
  const double off_p[2] = {sp, ep.length - sp};
  const int ends_q[2] = {eq.a, eq.b};
  const double off_q[2] = {sq, eq.length - sq};
  Route best{ep.a, eq.a, std::numeric_limits<double>::infinity()};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const double len = off_p[i] + vertex_distance(ends_p[i], ends_q[j]) + off_q[j];
      if (len < best.length) best = {ends_p[i], ends_q[j], len};
    }
  return best;
}

double MetricTree::distance(const Point& p, const Point& q) const {
  if (p.chart == q.chart) return std::abs(p.coords[0] - q.coords[0]);
  return best_route(p, q).length;
}

std::vector<Piece> MetricTree::path(const Point& p, const Point& q) const {
  auto make = [](int chart, double from, double to) {
    Eigen::VectorXd f(1), t(1);
    f[0] = from;
    t[0] = to;
    return Piece{chart, f, t, std::abs(to - from)};
  };
  std::vector<Piece> pieces;
  if (p.chart == q.chart) {
    if (p.coords[0] != q.coords[0]) pieces.push_back(make(p.chart, p.coords[0], q.coords[0]));
    return pieces;
  }
  const Route r = best_route(p, q);
  const TreeEdge& ep = edges_[p.chart];
  const TreeEdge& eq = edges_[q.chart];
  const double exit_s = r.end_p == ep.a ? 0.0 : ep.length;
  if (p.coords[0] != exit_s) pieces.push_back(make(p.chart, p.coords[0], exit_s));
  for (const auto& [e, from] : vertex_path(r.end_p, r.end_q)) {
    const TreeEdge& ed = edges_[e];
    if (from == ed.a)
      pieces.push_back(make(e, 0.0, ed.length));
    else
      pieces.push_back(make(e, ed.length, 0.0));
  }
  const double entry_s = r.end_q == eq.a ? 0.0 : eq.length;
  if (q.coords[0] != entry_s) pieces.push_back(make(q.chart, entry_s, q.coords[0]));
  return pieces;
}

PieceNearest MetricTree::nearest_on_piece(const Point& x, const Piece& piece) const {
  // Distance to x is affine along an edge, except for a V at x itself.
  std::vector<double> candidates{0.0, 1.0};
  const double s0 = piece.from[0], s1 = piece.to[0];
  if (x.chart == piece.chart && s1 != s0) {
    const double lambda = (x.coords[0] - s0) / (s1 - s0);
    if (lambda > 0.0 && lambda < 1.0) candidates.push_back(lambda);
  }
  PieceNearest best{0.0, std::numeric_limits<double>::infinity()};
  for (double lambda : candidates) {
    Eigen::VectorXd s(1);
    s[0] = s0 + lambda * (s1 - s0);
    const double d = distance(chart_point(piece.chart, s), x);
    if (d < best.distance) best = {lambda, d};
  }
  return best;
}

std::optional<Point> MetricTree::extend_end(const std::vector<Piece>& pieces, double delta) const {
  if (pieces.empty()) return std::nullopt;
  const Piece& last = pieces.back();
  int edge = last.chart;
  double s = last.to[0];
  int dir = last.to[0] > last.from[0] ? 1 : -1;
  double remaining = delta;
  for (;;) {
    const TreeEdge& ed = edges_[edge];
    const double room = dir > 0 ? ed.length - s : s;
    if (remaining <= room) {
      Eigen::VectorXd c(1);
      c[0] = s + dir * remaining;
      return chart_point(edge, c);
    }
    remaining -= room;
    const int vertex = dir > 0 ? ed.b : ed.a;
    int next = -1;
    for (int e : incident_[vertex])
      if (e != edge) {
        next = e;
        break;
      }
    if (next < 0) return std::nullopt;  // leaf
    edge = next;
    dir = edges_[next].a == vertex ? 1 : -1;
    s = dir > 0 ? 0.0 : edges_[next].length;
  }
}

// ---------------------------------------------------------------------------
// Space

Space::Space(Model model) : model_(std::make_shared<const Model>(std::move(model))) {}

SpaceKind Space::kind() const {
  switch (model_->index()) {
    case 0: return SpaceKind::Euclidean;
    case 1: return SpaceKind::MetricTree;
    default: return SpaceKind::OpenBook;
  }
}

std::string Space::kind_name() const {
  switch (kind()) {
    case SpaceKind::Euclidean: return "euclidean";
    case SpaceKind::MetricTree: return "tree";
    case SpaceKind::OpenBook: return "open_book";
  }
  return "unknown";
}

int Space::dim() const {
  return std::visit([](const auto& m) { return m.dim(); }, *model_);
}

void Space::validate(const Point& p) const {
  std::visit([&](const auto& m) { m.validate(p); }, *model_);
}

Point Space::normalize(const Point& p) const {
  return std::visit(
      [&](const auto& m) {
        m.validate(p);
        return m.normalize(p);
      },
      *model_);
}

Point Space::chart_point(int chart, const Eigen::VectorXd& coords) const {
  return std::visit([&](const auto& m) { return m.chart_point(chart, coords); }, *model_);
}

double Space::distance(const Point& p, const Point& q) const {
  return std::visit(
      [&](const auto& m) {
        m.validate(p);
        m.validate(q);
        return m.distance(m.normalize(p), m.normalize(q));
      },
      *model_);
}

std::vector<Piece> Space::path(const Point& p, const Point& q) const {
  return std::visit(
      [&](const auto& m) {
        m.validate(p);
        m.validate(q);
        return m.path(m.normalize(p), m.normalize(q));
      },
      *model_);
}

PieceNearest Space::nearest_on_piece(const Point& x, const Piece& piece) const {
  return std::visit(
      [&](const auto& m) {
        m.validate(x);
        return m.nearest_on_piece(m.normalize(x), piece);
      },
      *model_);
}

std::optional<Point> Space::extend_end(const std::vector<Piece>& pieces, double delta) const {
  return std::visit([&](const auto& m) { return m.extend_end(pieces, delta); }, *model_);
}

bool Space::same_point(const Point& p, const Point& q, double tol) const {
  return distance(p, q) <= tol;
}

}  // namespace cat0ot
