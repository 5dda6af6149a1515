#pragma once

#include <Eigen/Core>

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace cat0ot {

/// A point of a piecewise-flat space, given in the coordinates of one chart.
///
/// Charts are: the single chart 0 of Euclidean space; a page index of an
/// open book, with coordinates (u, v), u >= 0; an edge index of a metric
/// tree, with the arc-length parameter s measured from the edge's first
/// vertex.
struct Point {
  int chart = 0;
  Eigen::VectorXd coords;

  Point() = default;
  Point(int chart_id, Eigen::VectorXd c) : chart(chart_id), coords(std::move(c)) {}
};

/// Straight segment of a geodesic inside a single chart.
struct Piece {
  int chart = 0;
  Eigen::VectorXd from;
  Eigen::VectorXd to;
  double length = 0.0;
};

/// Nearest point of a piece to some point x: `param` in [0,1] along the piece.
struct PieceNearest {
  double param = 0.0;
  double distance = 0.0;
};

enum class SpaceKind { Euclidean, MetricTree, OpenBook };

class EuclideanSpace {
 public:
  explicit EuclideanSpace(int dim);

  int dim() const { return dim_; }
  void validate(const Point& p) const;
  Point normalize(const Point& p) const;
  Point chart_point(int chart, const Eigen::VectorXd& coords) const;
  double distance(const Point& p, const Point& q) const;
  std::vector<Piece> path(const Point& p, const Point& q) const;
  PieceNearest nearest_on_piece(const Point& x, const Piece& piece) const;
  std::optional<Point> extend_end(const std::vector<Piece>& pieces, double delta) const;

 private:
  int dim_;
};

/// k closed half-planes {(u, v) : u >= 0} glued along the spine u = 0.
class OpenBook {
 public:
  explicit OpenBook(int pages);

  int dim() const { return 2; }
  int pages() const { return pages_; }
  void validate(const Point& p) const;
  Point normalize(const Point& p) const;
  Point chart_point(int chart, const Eigen::VectorXd& coords) const;
  double distance(const Point& p, const Point& q) const;
  std::vector<Piece> path(const Point& p, const Point& q) const;
  PieceNearest nearest_on_piece(const Point& x, const Piece& piece) const;
  std::optional<Point> extend_end(const std::vector<Piece>& pieces, double delta) const;

  static bool on_spine(const Point& p) { return p.coords[0] == 0.0; }

 private:
  int pages_;
};

struct TreeEdge {
  int a = 0;
  int b = 0;
  double length = 1.0;
};

/// Finite metric tree. Vertices are dense indices 0..n-1; `vertex_ids` keeps
/// the caller's labels. Points live on edges: chart = edge index, coords = (s).
class MetricTree {
 public:
  MetricTree(std::vector<int> vertex_ids, std::vector<TreeEdge> edges, int root);

  int dim() const { return 1; }
  int num_vertices() const { return static_cast<int>(vertex_ids_.size()); }
  const std::vector<int>& vertex_ids() const { return vertex_ids_; }
  const std::vector<TreeEdge>& edges() const { return edges_; }
  int root() const { return root_; }
  /// Edge indices incident to vertex v, ascending.
  const std::vector<int>& incident(int v) const { return incident_[v]; }
  double total_length() const;

  Point vertex_point(int v) const;
  /// The vertex a point sits on, if any.
  std::optional<int> vertex_of(const Point& p) const;
  double vertex_distance(int u, int v) const;
  /// Edges of the vertex path u -> v, each as (edge, vertex it is entered from).
  std::vector<std::pair<int, int>> vertex_path(int u, int v) const;

  void validate(const Point& p) const;
  Point normalize(const Point& p) const;
  Point chart_point(int chart, const Eigen::VectorXd& coords) const;
  double distance(const Point& p, const Point& q) const;
  std::vector<Piece> path(const Point& p, const Point& q) const;
  PieceNearest nearest_on_piece(const Point& x, const Piece& piece) const;
  std::optional<Point> extend_end(const std::vector<Piece>& pieces, double delta) const;

 private:
  struct Route {
    int end_p, end_q;
    double length;
  };
  Route best_route(const Point& p, const Point& q) const;

  std::vector<int> vertex_ids_;
  std::vector<TreeEdge> edges_;
  int root_;
  std::vector<std::vector<int>> incident_;
  std::vector<int> parent_;
  std::vector<int> parent_edge_;
  std::vector<int> hops_;
  std::vector<double> depth_;
};

/// Immutable handle to one of the concrete CAT(0) spaces. Copies share state.
class Space {
 public:
  using Model = std::variant<EuclideanSpace, MetricTree, OpenBook>;

  explicit Space(Model model);

  SpaceKind kind() const;
  std::string kind_name() const;
  int dim() const;

  const EuclideanSpace* euclidean() const { return std::get_if<EuclideanSpace>(model_.get()); }
  const MetricTree* tree() const { return std::get_if<MetricTree>(model_.get()); }
  const OpenBook* book() const { return std::get_if<OpenBook>(model_.get()); }

  void validate(const Point& p) const;
  Point normalize(const Point& p) const;
  Point chart_point(int chart, const Eigen::VectorXd& coords) const;
  double distance(const Point& p, const Point& q) const;
  std::vector<Piece> path(const Point& p, const Point& q) const;
  PieceNearest nearest_on_piece(const Point& x, const Piece& piece) const;
  std::optional<Point> extend_end(const std::vector<Piece>& pieces, double delta) const;

  /// Equality after normalization, up to `tol` in the metric.
  bool same_point(const Point& p, const Point& q, double tol = 1e-9) const;

 private:
  std::shared_ptr<const Model> model_;
};

}  // namespace cat0ot
