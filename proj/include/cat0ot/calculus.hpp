#pragma once

#include "cat0ot/geometry.hpp"
#include "cat0ot/regions.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace cat0ot {

using PointFunction = std::function<double(const Point&)>;

/// c(x, y) = d(x, y)^2 / 2.
double cost(const Space& space, const Point& x, const Point& y);

/// D_u c(u, v; gamma) for u = gamma(t), v = gamma(s): (t - s) * length^2.
double cost_derivative_closed(const Geodesic& gamma, double t, double s);

struct DerivativeEstimate {
  double value = 0.0;
  double one_sided_plus = 0.0;
  double one_sided_minus = 0.0;
  double step = 0.0;
  bool differentiable = false;
  bool has_plus = false;
  bool has_minus = false;
};

/// Parameter steps 2^-4, 2^-5, ..., 2^-14 (arc length length/16 halved 10 times).
std::vector<double> default_derivative_schedule();

/// Derivative of t -> f(gamma(t)) at the parameter where x sits on gamma.
/// Each one-sided quotient is Richardson-extrapolated from its two smallest
/// admissible steps. Where only one side exists it is copied to the other.
DerivativeEstimate geodesic_derivative(const PointFunction& f, const Point& x, const Geodesic& gamma,
                                       const std::vector<double>& schedule);
DerivativeEstimate geodesic_derivative(const PointFunction& f, const Point& x, const Geodesic& gamma);

/// Geodesics issuing from x: `n` equiangular unit directions on flat charts
/// (coordinate and diagonal directions in dimension >= 3), one per incident
/// edge on trees, plus geodesics toward each of `toward`.
std::vector<Geodesic> sample_directions(const Space& space, const Point& x, int n = 64,
                                        const std::vector<Point>& toward = {});

inline constexpr double kTwistGapTol = 1e-6;

struct TwistReport {
  std::optional<Geodesic> distinguishing_geodesic;
  double max_gap = 0.0;
  bool twist_holds = false;
};

TwistReport twist_test(const Space& space, const Point& x, const Point& y1, const Point& y2,
                       const std::vector<Geodesic>& directions, double gap_tol = kTwistGapTol);

struct FermatReport {
  double min_directional = 0.0;
  bool two_sided_zero = true;
  int two_sided_checked = 0;
};

/// One-sided derivatives of f at x_star along each direction; the two-sided
/// check extends the reversed direction through x_star where possible.
FermatReport fermat_check(const Space& space, const PointFunction& f, const Point& x_star,
                          const std::vector<Geodesic>& directions, double tol = 1e-6);

/// Point of gamma at arc length min(d(gamma(0), x), length) from gamma(0).
Point radial_projection(const Space& space, const Geodesic& gamma, const Point& x);

struct EilenbergEstimate {
  double lhs = 0.0;
  double rhs = 0.0;
  double sigma = 0.0;  // standard error of lhs - rhs
  double epsilon = 0.0;
  bool holds = true;
};

/// Shell estimator: lhs = integral over S of w(d(gamma(0), u)) with
/// w(r) = |(r - eps, r + eps) n (0, length)| / (2 eps); rhs = volume of S.
/// Both from the same `n_samples` Monte Carlo draws; sigma by 20 batch means.
/// Without `epsilon` the half-width is diam(S) / 200.
EilenbergEstimate eilenberg_estimate(const Space& space, const Geodesic& gamma, const Region& region,
                                     long n_samples, std::optional<double> epsilon, std::uint64_t seed);

struct ProbeDensity {
  double density = 0.0;
  double sigma = 0.0;
};

struct ZetaReport {
  std::vector<ProbeDensity> probes;
  double min_density = 0.0;
  bool positive = false;
};

/// Density of the sphere decomposition about x at each probe p: the volume of
/// the shell |d(x, .) - d(x, p)| < eps inside B(p, 5 eps), divided by 2 eps
/// times the flat (d-1)-dimensional cross-section of that ball. Equals 1 in
/// flat space up to O(eps / d(x, p)).
ZetaReport zeta_positivity(const Space& space, const Point& x, const Geodesic& gamma,
                           const std::vector<Point>& probes, double epsilon, long n_samples,
                           std::uint64_t seed);

}  // namespace cat0ot
