#pragma once

#include "cat0ot/rng.hpp"
#include "cat0ot/space.hpp"

#include <optional>
#include <variant>
#include <vector>

namespace cat0ot {

/// Axis-aligned box in one flat chart (Euclidean, or a single book page).
struct BoxRegion {
  int chart = 0;
  Eigen::VectorXd lo;
  Eigen::VectorXd hi;
};

struct BallRegion {
  Point center;
  double radius = 0.0;
};

/// Union of whole tree edges, connected.
struct SubtreeRegion {
  std::vector<int> edges;
};

using Region = std::variant<BoxRegion, BallRegion, SubtreeRegion>;

/// Uniform sampler for a region through a proposal set of known volume.
/// draw() returns nullopt for rejected proposals, so the fraction of accepted
/// draws times proposal_volume() estimates the region's volume.
class RegionSampler {
 public:
  RegionSampler(const Space& space, const Region& region);

  bool empty() const { return pieces_.empty(); }
  double proposal_volume() const { return total_; }
  double diameter() const { return diameter_; }
  /// Whether the volume is known exactly (every proposal is accepted).
  bool exact() const { return exact_; }
  std::optional<Point> draw(CounterRng& rng) const;

 private:
  struct Piece {
    int chart;
    Eigen::VectorXd lo;
    Eigen::VectorXd hi;
    double volume;
  };

  Space space_;
  std::optional<BallRegion> ball_;
  std::vector<Piece> pieces_;
  double total_ = 0.0;
  double diameter_ = 0.0;
  bool exact_ = true;
};

}  // namespace cat0ot
