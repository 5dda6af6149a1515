#pragma once

#include "cat0ot/space.hpp"

#include "json.hpp"

#include <vector>

namespace cat0ot {

struct TreeEdgeSpec {
  int a = 0;  // vertex id
  int b = 0;  // vertex id
  double length = 1.0;
};

struct TreeParams {
  std::vector<int> vertices;
  std::vector<TreeEdgeSpec> edges;
  int root = 0;  // vertex id
};

Space build_euclidean(int dim);
Space build_open_book(int pages);
Space build_tree(const TreeParams& params);
/// Star with `legs` edges of equal length around vertex 0; legs are edges 0..legs-1.
Space build_star(int legs, double length = 1.0);

/// Finite truncation of the iterated comb: a unit segment, then `depth` rounds
/// of gluing unit teeth at the points j/grid of every last-generation tooth.
/// Capped at depth 3, grid 16.
Space build_comb(int depth, int grid);

inline constexpr int kCombMaxDepth = 3;
inline constexpr int kCombMaxGrid = 16;

Point euclidean_point(std::initializer_list<double> coords);
Point euclidean_point(const Eigen::VectorXd& coords);
Point page_point(int page, double u, double v);
Point edge_point(int edge, double s);

/// {kind: euclidean, dim} | {kind: open_book, pages} |
/// {kind: tree, vertices, edges: [[a, b, length]...], root} and the shorthands
/// {kind: star, legs, length}, {kind: comb, depth, grid}.
Space space_from_json(const nlohmann::json& j);
nlohmann::json space_to_json(const Space& space);

/// Points are written as [chart, coords...].
Point point_from_json(const nlohmann::json& j);
nlohmann::json point_to_json(const Point& p);

}  // namespace cat0ot
