#pragma once

#include <Eigen/Core>

namespace cat0ot {

/// Values on the square lattice origin + h * (i, j), 0 <= i < rows, 0 <= j < cols,
/// extended by bilinear interpolation.
class GridFunction2 {
 public:
  GridFunction2(Eigen::Vector2d origin, double h, Eigen::MatrixXd values);

  const Eigen::Vector2d& origin() const { return origin_; }
  double pitch() const { return h_; }
  const Eigen::MatrixXd& values() const { return values_; }
  Eigen::Vector2d node(int i, int j) const { return origin_ + h_ * Eigen::Vector2d(i, j); }

  bool contains(const Eigen::Vector2d& p) const;
  /// Throws BoundaryPoint outside the lattice rectangle.
  double operator()(const Eigen::Vector2d& p) const;
  /// Central-difference gradient at p with step h; throws BoundaryPoint when
  /// a stencil point leaves the rectangle.
  Eigen::Vector2d gradient(const Eigen::Vector2d& p, double h) const;

 private:
  Eigen::Vector2d origin_;
  double h_;
  Eigen::MatrixXd values_;
};

}  // namespace cat0ot
