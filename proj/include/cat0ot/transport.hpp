#pragma once

#include "cat0ot/grid.hpp"
#include "cat0ot/network_simplex.hpp"
#include "cat0ot/space.hpp"

#include "json.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cat0ot {

inline constexpr double kWeightTol = 1e-12;
inline constexpr double kMarginalTol = 1e-9;
inline constexpr int kMaxSupport = 10000;
inline constexpr int kCenteringMaxNodes = 400;

struct DiscreteMeasure {
  std::vector<Point> points;
  Eigen::VectorXd weights;

  int size() const { return static_cast<int>(points.size()); }
};

DiscreteMeasure uniform_measure(std::vector<Point> points);

/// Throws InvalidMeasure unless weights are positive, sum to 1 within
/// kWeightTol, and points are valid and pairwise distinct after normalization.
void validate_measure(const Space& space, const DiscreteMeasure& mu);

struct TransportPlan {
  std::vector<FlowEntry> entries;
  DiscreteMeasure source;
  DiscreteMeasure target;
};

/// Largest deviation of the plan's row and column sums from the marginals.
double marginal_error(const TransportPlan& plan);

/// Source atom i is sent to `image[i]`, which is target atom `target[i]`
/// when the map comes from a plan (-1 otherwise).
struct TransportMap {
  std::vector<Point> image;
  std::vector<int> target;
};

struct PotentialPair {
  Eigen::VectorXd psi;
  Eigen::VectorXd phi;
  bool feasible = false;
  /// max over all pairs of phi_j - psi_i - c_ij (feasibility needs <= 0).
  double slack_max = 0.0;
  /// max over plan support of |phi_j - psi_i - c_ij|.
  double support_gap = 0.0;
};

struct KantorovichSolution {
  TransportPlan plan;
  PotentialPair potentials;
  double cost = 0.0;
  double dual_objective = 0.0;
  long pivots = 0;
};

Eigen::MatrixXd cost_matrix(const Space& space, const std::vector<Point>& xs, const std::vector<Point>& ys);

/// Basis: potentials of the final spanning tree, tight on every basic arc.
/// Centered: mean of the shortest-path potentials from every node of the
/// residual graph, tight only on arcs used by some optimal plan; O(N^3).
/// Automatic: Centered up to kCenteringMaxNodes atoms, Basis above.
enum class DualSelection { Automatic, Basis, Centered };

/// Exact optimal plan for c = d^2/2 with potentials normalized to
/// sum(mu psi) = 0 and phi tightened to the c-transform of psi.
KantorovichSolution solve_kantorovich(const Space& space, const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                                      DualSelection duals = DualSelection::Automatic);

struct OracleSolution {
  TransportPlan plan;
  double cost = 0.0;
  std::vector<int> permutation;
};

/// Exhaustive minimum over permutation couplings of equal-weight measures
/// with n = m <= 8.
OracleSolution brute_force_oracle(const Space& space, const DiscreteMeasure& mu, const DiscreteMeasure& nu);

enum class CycleMode { Exhaustive, Sampled };

struct MonotonicityReport {
  long violations = 0;
  double worst_slack = 0.0;
  long tuples_checked = 0;
};

inline constexpr long kMaxCycleTuples = 1000000;

/// Checks sum c(x_k, y_k) <= sum c(x_k, y_{k+1}) over cycles of plan support
/// pairs of length 2..max_len. Exhaustive mode visits every set of distinct
/// pairs in every cyclic order; sampled mode draws `n_samples` random cycles.
MonotonicityReport check_cyclic_monotonicity(const Space& space, const TransportPlan& plan, int max_len,
                                             CycleMode mode = CycleMode::Exhaustive, long n_samples = 0,
                                             std::uint64_t seed = 0);

/// psi^c(b) = min over a of psi(a) + c(a, b).
Eigen::VectorXd c_transform(const Space& space, const std::vector<Point>& a, const Eigen::VectorXd& psi,
                            const std::vector<Point>& b);

/// Target indices j with |phi_j - psi_i - c(x_i, y_j)| <= tol.
std::vector<int> c_subdifferential(const Space& space, const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                                   const PotentialPair& potentials, int x_index, double tol = 1e-9);

struct MongeResult {
  std::optional<TransportMap> map;
  double split_mass = 0.0;

  bool deterministic() const { return map.has_value(); }
};

/// Largest-entry assignment when every source row puts at most tol * weight
/// outside its largest entry; otherwise no map and the total off-graph mass.
MongeResult extract_monge_map(const TransportPlan& plan, double tol = 1e-9);

/// min over targets y_j with d(y0, y_j) < R of phi_j - c(x, y_j).
double psi_R(const Space& space, const DiscreteMeasure& nu, const PotentialPair& potentials, const Point& x,
             const Point& y0, double R);

struct IdentityResidual {
  double residual = 0.0;  // |D psi(x; gamma) + D_x c(x, T x; gamma)|
  double brenier = 0.0;   // |T x - x - grad psi(x)|
};

/// Forward difference of the interpolated potential along the geodesic from
/// x_i to T(x_i) with arc-length step h, against D_x c = -d(x, T x)^2; and the
/// central-difference gradient check. Euclidean plane only.
IdentityResidual verify_transport_identity(const Space& space, const GridFunction2& psi, const TransportMap& map,
                                           const DiscreteMeasure& mu, int x_index, double h);

nlohmann::json measure_to_json(const DiscreteMeasure& mu);
DiscreteMeasure measure_from_json(const nlohmann::json& j);
nlohmann::json plan_to_json(const TransportPlan& plan);
/// Entries only; marginals are supplied by the caller.
TransportPlan plan_from_json(const nlohmann::json& j, DiscreteMeasure source, DiscreteMeasure target);
std::string plan_to_csv(const TransportPlan& plan);
nlohmann::json map_to_json(const TransportMap& map);

}  // namespace cat0ot
