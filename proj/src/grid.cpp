#include "cat0ot/grid.hpp"

#include "cat0ot/error.hpp"

#include <algorithm>
#include <cmath>

namespace cat0ot {

namespace {
constexpr double kEdgeSlack = 1e-12;
}

GridFunction2::GridFunction2(Eigen::Vector2d origin, double h, Eigen::MatrixXd values)
    : origin_(std::move(origin)), h_(h), values_(std::move(values)) {
  if (!(h_ > 0.0)) throw Error(ErrorKind::ParamOutOfRange, "grid pitch must be positive");
  if (values_.rows() < 2 || values_.cols() < 2) throw Error(ErrorKind::ParamOutOfRange, "grid needs 2x2 nodes");
}

bool GridFunction2::contains(const Eigen::Vector2d& p) const {
  const Eigen::Vector2d q = (p - origin_) / h_;
  return q[0] >= -kEdgeSlack && q[1] >= -kEdgeSlack && q[0] <= values_.rows() - 1 + kEdgeSlack &&
         q[1] <= values_.cols() - 1 + kEdgeSlack;
}

double GridFunction2::operator()(const Eigen::Vector2d& p) const {
  if (!contains(p)) throw Error(ErrorKind::BoundaryPoint, "point outside the grid");
  const Eigen::Vector2d q = (p - origin_) / h_;
  const int i = std::clamp(static_cast<int>(std::floor(q[0])), 0, static_cast<int>(values_.rows()) - 2);
  const int j = std::clamp(static_cast<int>(std::floor(q[1])), 0, static_cast<int>(values_.cols()) - 2);
  const double a = std::clamp(q[0] - i, 0.0, 1.0), b = std::clamp(q[1] - j, 0.0, 1.0);
  return (1 - a) * (1 - b) * values_(i, j) + a * (1 - b) * values_(i + 1, j) + (1 - a) * b * values_(i, j + 1) +
         a * b * values_(i + 1, j + 1);
}

Eigen::Vector2d GridFunction2::gradient(const Eigen::Vector2d& p, double h) const {
  const Eigen::Vector2d ex(h, 0.0), ey(0.0, h);
  return {((*this)(p + ex) - (*this)(p - ex)) / (2 * h), ((*this)(p + ey) - (*this)(p - ey)) / (2 * h)};
}

}  // namespace cat0ot
