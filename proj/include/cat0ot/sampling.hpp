#pragma once

#include "cat0ot/rng.hpp"
#include "cat0ot/space.hpp"

#include <vector>

namespace cat0ot {

/// Random point of a bounded window of the space: [-1,1]^d in Euclidean
/// space; u in [0,1], v in [-1,1] on a uniformly chosen page; uniform by
/// length on a tree. With probability `boundary_prob` the point is pushed onto
/// the spine or a tree vertex so that normalization is exercised.
Point random_point(const Space& space, CounterRng& rng, double boundary_prob = 0.05);

std::vector<Point> random_points(const Space& space, CounterRng& rng, std::size_t n,
                                 double boundary_prob = 0.0);

/// n points of the window that are pairwise at least `min_separation` apart.
std::vector<Point> random_distinct_points(const Space& space, CounterRng& rng, std::size_t n,
                                          double min_separation = 1e-6);

}  // namespace cat0ot
