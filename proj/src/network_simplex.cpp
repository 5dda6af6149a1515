#include "cat0ot/network_simplex.hpp"

#include "cat0ot/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cat0ot {

namespace {

class Simplex {
 public:
  Simplex(const Eigen::MatrixXd& cost, const Eigen::VectorXd& supply, const Eigen::VectorXd& demand)
      : cost_(cost), n_(static_cast<int>(cost.rows())), m_(static_cast<int>(cost.cols())),
        root_(n_ + m_), real_arcs_(static_cast<long>(n_) * m_), total_arcs_(real_arcs_ + n_ + m_) {
    const int nodes = n_ + m_ + 1;
    const double max_cost = cost.size() ? cost.maxCoeff() : 0.0;
    art_cost_ = (max_cost + 1.0) * nodes;
    tol_ = 1e-12 * std::max(1.0, max_cost);

    parent_.assign(nodes, -1);
    pred_.assign(nodes, -1);
    up_.assign(nodes, false);
    flow_.assign(nodes, 0.0);
    depth_.assign(nodes, 0);
    pi_.assign(nodes, 0.0);
    first_child_.assign(nodes, -1);
    next_sib_.assign(nodes, -1);
    prev_sib_.assign(nodes, -1);

    for (int u = 0; u < root_; ++u) {
      parent_[u] = root_;
      pred_[u] = real_arcs_ + u;
      depth_[u] = 1;
      if (u < n_) {
        up_[u] = true;
        flow_[u] = supply[u];
        pi_[u] = 0.0;
      } else {
        up_[u] = false;
        flow_[u] = demand[u - n_];
        pi_[u] = art_cost_;
      }
      attach(u, root_);
    }
    block_ = std::max<long>(10, static_cast<long>(std::sqrt(static_cast<double>(total_arcs_))));
  }

  long run() {
    long pivots = 0;
    const long limit = 1000L * (n_ + m_ + 1) * (n_ + m_ + 1) + 100000;
    while (find_entering()) {
      pivot();
      if (++pivots > limit) throw Error(ErrorKind::SolverFailure, "network simplex exceeded its pivot limit");
    }
    return pivots;
  }

  FlowSolution result(long pivots) const {
    FlowSolution out;
    out.pivots = pivots;
    for (int u = 0; u < root_; ++u) {
      const long a = pred_[u];
      if (a < real_arcs_ && flow_[u] > 1e-14) out.flows.push_back({static_cast<int>(a / m_), static_cast<int>(a % m_), flow_[u]});
      if (a >= real_arcs_ && flow_[u] > 1e-9)
        throw Error(ErrorKind::SolverFailure, "artificial arc carries flow: supplies and demands differ");
    }
    std::sort(out.flows.begin(), out.flows.end(),
              [](const FlowEntry& a, const FlowEntry& b) { return a.i != b.i ? a.i < b.i : a.j < b.j; });
    out.u = Eigen::Map<const Eigen::VectorXd>(pi_.data(), n_);
    out.v = Eigen::Map<const Eigen::VectorXd>(pi_.data() + n_, m_);
    return out;
  }

 private:
  int tail(long a) const {
    if (a < real_arcs_) return static_cast<int>(a / m_);
    const int u = static_cast<int>(a - real_arcs_);
    return u < n_ ? u : root_;
  }
  int head(long a) const {
    if (a < real_arcs_) return n_ + static_cast<int>(a % m_);
    const int u = static_cast<int>(a - real_arcs_);
    return u < n_ ? root_ : u;
  }
  double arc_cost(long a) const {
    if (a < real_arcs_) return cost_(a / m_, a % m_);
    return a - real_arcs_ < n_ ? 0.0 : art_cost_;
  }
  double reduced(long a) const { return arc_cost(a) + pi_[tail(a)] - pi_[head(a)]; }

  bool find_entering() {
    double best = -tol_;
    long found = -1;
    long scanned = 0, in_block = 0;
    for (long a = next_arc_; scanned < total_arcs_; ++scanned) {
      const double rc = reduced(a);
      if (rc < best) {
        best = rc;
        found = a;
      }
      if (++a == total_arcs_) a = 0;
      if (++in_block == block_) {
        if (found >= 0) {
          next_arc_ = a;
          break;
        }
        in_block = 0;
      }
    }
    entering_ = found;
    return found >= 0;
  }

  void attach(int u, int p) {
    prev_sib_[u] = -1;
    next_sib_[u] = first_child_[p];
    if (first_child_[p] >= 0) prev_sib_[first_child_[p]] = u;
    first_child_[p] = u;
  }
  void detach(int u) {
    const int p = parent_[u];
    if (prev_sib_[u] >= 0)
      next_sib_[prev_sib_[u]] = next_sib_[u];
    else
      first_child_[p] = next_sib_[u];
    if (next_sib_[u] >= 0) prev_sib_[next_sib_[u]] = prev_sib_[u];
    prev_sib_[u] = next_sib_[u] = -1;
  }

  void pivot() {
    const long e = entering_;
    const int s = tail(e), t = head(e);
    int a = s, b = t;
    while (a != b) {
      if (depth_[a] >= depth_[b])
        a = parent_[a];
      else
        b = parent_[b];
    }
    const int join = a;

    // Flow moves along e, up from t to join, then down from join to s.
    double delta = std::numeric_limits<double>::infinity();
    int out = -1;
    bool out_on_s_side = false;
    for (int u = s; u != join; u = parent_[u])
      if (up_[u] && flow_[u] < delta) {
        delta = flow_[u];
        out = u;
        out_on_s_side = true;
      }
    for (int u = t; u != join; u = parent_[u])
      if (!up_[u] && flow_[u] <= delta) {
        delta = flow_[u];
        out = u;
        out_on_s_side = false;
      }
    if (out < 0) throw Error(ErrorKind::SolverFailure, "unbounded pivot");

    if (delta > 0.0) {
      for (int u = s; u != join; u = parent_[u]) flow_[u] += up_[u] ? -delta : delta;
      for (int u = t; u != join; u = parent_[u]) flow_[u] += up_[u] ? delta : -delta;
    }

    // Re-hang the subtree cut off by removing `out`'s tree arc from the
    // entering arc's endpoint on that side.
    const int a_node = out_on_s_side ? s : t;
    const int b_node = out_on_s_side ? t : s;
    long carry_arc = e;
    bool carry_up = out_on_s_side;  // e runs s -> t, i.e. toward the new parent when a_node = s
    double carry_flow = delta;
    int new_parent = b_node;
    int u = a_node;
    while (true) {
      const int old_parent = parent_[u];
      const long old_arc = pred_[u];
      const bool old_up = up_[u];
      const double old_flow = flow_[u];
      detach(u);
      parent_[u] = new_parent;
      pred_[u] = carry_arc;
      up_[u] = carry_up;
      flow_[u] = carry_flow;
      attach(u, new_parent);
      if (u == out) break;
      carry_arc = old_arc;
      carry_up = !old_up;
      carry_flow = old_flow;
      new_parent = u;
      u = old_parent;
    }
    refresh(a_node);
  }

  // Depths and potentials below a re-hung subtree root.
  void refresh(int top) {
    stack_.clear();
    stack_.push_back(top);
    while (!stack_.empty()) {
      const int u = stack_.back();
      stack_.pop_back();
      const int p = parent_[u];
      depth_[u] = depth_[p] + 1;
      const double c = arc_cost(pred_[u]);
      pi_[u] = up_[u] ? pi_[p] - c : pi_[p] + c;
      for (int w = first_child_[u]; w >= 0; w = next_sib_[w]) stack_.push_back(w);
    }
  }

  const Eigen::MatrixXd& cost_;
  int n_, m_, root_;
  long real_arcs_, total_arcs_;
  double art_cost_ = 0.0;
  double tol_ = 0.0;
  long block_ = 0;
  long next_arc_ = 0;
  long entering_ = -1;

  std::vector<int> parent_;
  std::vector<long> pred_;
  std::vector<bool> up_;
  std::vector<double> flow_;
  std::vector<int> depth_;
  std::vector<double> pi_;
  std::vector<int> first_child_, next_sib_, prev_sib_;
  std::vector<int> stack_;
};

}  // namespace

FlowSolution network_simplex(const Eigen::MatrixXd& cost, const Eigen::VectorXd& supply,
                             const Eigen::VectorXd& demand) {
  if (supply.size() != cost.rows() || demand.size() != cost.cols())
    throw Error(ErrorKind::SolverFailure, "cost matrix does not match supplies and demands");
  if (cost.rows() == 0 || cost.cols() == 0) return {};
  Simplex simplex(cost, supply, demand);
  const long pivots = simplex.run();
  return simplex.result(pivots);
}

}  // namespace cat0ot
