#pragma once

// Shared fixtures and independent oracles for the unit suites.

#include "cat0ot/geodesic.hpp"
#include "cat0ot/spaces.hpp"

#include <cmath>
#include <limits>
#include <queue>
#include <string>
#include <vector>

namespace cat0ot::testing {

struct NamedSpace {
  std::string name;
  Space space;
};

inline std::vector<NamedSpace> standard_spaces() {
  return {{"R2", build_euclidean(2)},
          {"R3", build_euclidean(3)},
          {"tripod", build_star(3)},
          {"comb(1,4)", build_comb(1, 4)},
          {"book(3)", build_open_book(3)}};
}

/// Distance between two book points computed by laying both pages flat in one
/// plane (second page reflected to u <= 0).
inline double unfolded_distance(double u1, double v1, double u2, double v2, bool same_page) {
  if (same_page) return std::hypot(u1 - u2, v1 - v2);
  return std::hypot(u1 + u2, v1 - v2);
}

/// Shortest path on the vertex graph of a tree with the two points spliced in
/// as extra vertices (Dijkstra); independent of the LCA routing in MetricTree.
inline double graph_distance(const MetricTree& tree, const Point& p, const Point& q) {
  const int n = tree.num_vertices();
  const int P = n, Q = n + 1;
  std::vector<std::vector<std::pair<int, double>>> adj(n + 2);
  auto link = [&](int a, int b, double w) {
    adj[a].push_back({b, w});
    adj[b].push_back({a, w});
  };
  for (int e = 0; e < static_cast<int>(tree.edges().size()); ++e) {
    const TreeEdge& ed = tree.edges()[e];
    std::vector<std::pair<double, int>> marks{{0.0, ed.a}, {ed.length, ed.b}};
    if (p.chart == e) marks.push_back({p.coords[0], P});
    if (q.chart == e) marks.push_back({q.coords[0], Q});
    std::sort(marks.begin(), marks.end());
    for (std::size_t k = 1; k < marks.size(); ++k)
      link(marks[k - 1].second, marks[k].second, marks[k].first - marks[k - 1].first);
  }
  std::vector<double> dist(n + 2, std::numeric_limits<double>::infinity());
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  dist[P] = 0.0;
  pq.push({0.0, P});
  while (!pq.empty()) {
    auto [d, v] = pq.top();
    pq.pop();
    if (d > dist[v]) continue;
    for (auto [w, len] : adj[v])
      if (d + len < dist[w]) {
        dist[w] = d + len;
        pq.push({dist[w], w});
      }
  }
  return dist[Q];
}

}  // namespace cat0ot::testing
