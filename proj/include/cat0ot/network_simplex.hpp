#pragma once

#include <Eigen/Core>

#include <vector>

namespace cat0ot {

struct FlowEntry {
  int i = 0;
  int j = 0;
  double mass = 0.0;
};

struct FlowSolution {
  /// Positive flows, sorted by (i, j).
  std::vector<FlowEntry> flows;
  /// Node prices with cost(i, j) + u_i - v_j >= 0 and equality on flows.
  Eigen::VectorXd u;
  Eigen::VectorXd v;
  long pivots = 0;
};

/// Uncapacitated transportation problem on the complete bipartite graph with
/// supplies `supply` (rows) and demands `demand` (columns) of equal total.
/// Primal network simplex from an artificial-root start; block search for the
/// entering arc and the strongly feasible leaving-arc rule, so the pivot
/// sequence is deterministic and cannot cycle.
FlowSolution network_simplex(const Eigen::MatrixXd& cost, const Eigen::VectorXd& supply,
                             const Eigen::VectorXd& demand);

}  // namespace cat0ot
