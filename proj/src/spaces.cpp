#include "cat0ot/spaces.hpp"

#include "cat0ot/error.hpp"

#include <map>
#include <string>

namespace cat0ot {

Space build_euclidean(int dim) { return Space(EuclideanSpace(dim)); }

Space build_open_book(int pages) { return Space(OpenBook(pages)); }

Space build_tree(const TreeParams& params) {
  std::map<int, int> index;
  for (int id : params.vertices) {
    if (!index.emplace(id, static_cast<int>(index.size())).second)
      throw Error(ErrorKind::InvalidSpace, "duplicate vertex id " + std::to_string(id));
  }
  auto lookup = [&](int id) {
    auto it = index.find(id);
    if (it == index.end()) throw Error(ErrorKind::InvalidSpace, "unknown vertex id " + std::to_string(id));
    return it->second;
  };
  std::vector<TreeEdge> edges;
  edges.reserve(params.edges.size());
  for (const TreeEdgeSpec& e : params.edges) edges.push_back({lookup(e.a), lookup(e.b), e.length});
  return Space(MetricTree(params.vertices, std::move(edges), lookup(params.root)));
}

Space build_star(int legs, double length) {
  if (legs < 1) throw Error(ErrorKind::ParamOutOfRange, "star needs at least one leg");
  TreeParams p;
  p.vertices.push_back(0);
  for (int i = 0; i < legs; ++i) {
    p.vertices.push_back(i + 1);
    p.edges.push_back({0, i + 1, length});
  }
  return build_tree(p);
}

Space build_comb(int depth, int grid) {
  if (depth < 0 || grid < 1) throw Error(ErrorKind::ParamOutOfRange, "comb needs depth >= 0, grid >= 1");
  if (depth > kCombMaxDepth || grid > kCombMaxGrid)
    throw Error(ErrorKind::CapExceeded, "comb capped at depth " + std::to_string(kCombMaxDepth) +
                                            ", grid " + std::to_string(kCombMaxGrid));
  TreeParams p;
  auto new_vertex = [&] {
    p.vertices.push_back(static_cast<int>(p.vertices.size()));
    return p.vertices.back();
  };
  // A unit segment hanging from `root`; subdivided at the grid points when
  // further teeth will be glued onto it. Returns its grid vertices.
  auto segment = [&](int root, bool subdivide) {
    std::vector<int> marks{root};
    const int steps = subdivide ? grid : 1;
    for (int j = 0; j < steps; ++j) {
      const int v = new_vertex();
      p.edges.push_back({marks.back(), v, 1.0 / steps});
      marks.push_back(v);
    }
    return marks;
  };

  const int base_root = new_vertex();
  p.root = base_root;
  std::vector<std::vector<int>> generation{segment(base_root, depth > 0)};
  for (int level = 1; level <= depth; ++level) {
    std::vector<std::vector<int>> next;
    for (const auto& tooth : generation)
      for (int mark : tooth) next.push_back(segment(mark, level < depth));
    generation = std::move(next);
  }
  return build_tree(p);
}

Point euclidean_point(std::initializer_list<double> coords) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(coords.size()));
  Eigen::Index i = 0;
  for (double c : coords) v[i++] = c;
  return Point(0, v);
}

Point euclidean_point(const Eigen::VectorXd& coords) { return Point(0, coords); }

Point page_point(int page, double u, double v) {
  Eigen::VectorXd c(2);
  c << u, v;
  return Point(page, c);
}

Point edge_point(int edge, double s) {
  Eigen::VectorXd c(1);
  c[0] = s;
  return Point(edge, c);
}

namespace {

template <typename T>
T field(const nlohmann::json& j, const char* name) {
  if (!j.contains(name)) throw Error(ErrorKind::ConfigInvalid, std::string("space.") + name + " is missing");
  try {
    return j.at(name).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw Error(ErrorKind::ConfigInvalid, std::string("space.") + name + " has the wrong type");
  }
}

}  // namespace

Space space_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorKind::ConfigInvalid, "space must be an object");
  const auto kind = field<std::string>(j, "kind");
  if (kind == "euclidean") return build_euclidean(field<int>(j, "dim"));
  if (kind == "open_book") return build_open_book(field<int>(j, "pages"));
  if (kind == "star") return build_star(field<int>(j, "legs"), j.value("length", 1.0));
  if (kind == "comb") return build_comb(field<int>(j, "depth"), field<int>(j, "grid"));
  if (kind == "tree") {
    TreeParams p;
    p.vertices = field<std::vector<int>>(j, "vertices");
    for (const auto& e : field<nlohmann::json>(j, "edges")) {
      if (!e.is_array() || e.size() != 3)
        throw Error(ErrorKind::ConfigInvalid, "space.edges entries are [a, b, length]");
      p.edges.push_back({e[0].get<int>(), e[1].get<int>(), e[2].get<double>()});
    }
    p.root = j.contains("root") ? field<int>(j, "root") : p.vertices.at(0);
    return build_tree(p);
  }
  throw Error(ErrorKind::ConfigInvalid, "space.kind '" + kind + "' is not recognised");
}

nlohmann::json space_to_json(const Space& space) {
  nlohmann::json j;
  if (const auto* e = space.euclidean()) {
    j["kind"] = "euclidean";
    j["dim"] = e->dim();
  } else if (const auto* b = space.book()) {
    j["kind"] = "open_book";
    j["pages"] = b->pages();
  } else if (const auto* t = space.tree()) {
    j["kind"] = "tree";
    j["vertices"] = t->vertex_ids();
    nlohmann::json edges = nlohmann::json::array();
    for (const TreeEdge& e : t->edges())
      edges.push_back({t->vertex_ids()[e.a], t->vertex_ids()[e.b], e.length});
    j["edges"] = edges;
    j["root"] = t->vertex_ids()[t->root()];
  }
  return j;
}

Point point_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() < 2) throw Error(ErrorKind::ConfigInvalid, "points are [chart, coords...]");
  Eigen::VectorXd c(static_cast<Eigen::Index>(j.size() - 1));
  for (std::size_t i = 1; i < j.size(); ++i) c[static_cast<Eigen::Index>(i - 1)] = j[i].get<double>();
  return Point(j[0].get<int>(), c);
}

nlohmann::json point_to_json(const Point& p) {
  nlohmann::json j = nlohmann::json::array({p.chart});
  for (Eigen::Index i = 0; i < p.coords.size(); ++i) j.push_back(p.coords[i]);
  return j;
}

}  // namespace cat0ot
