#include "cat0ot/polar.hpp"

#include "cat0ot/error.hpp"

#include <algorithm>
#include <cmath>

namespace cat0ot {

namespace {

constexpr double kAtomTol = 1e-9;

TransportMap deterministic_map(const Space& space, const DiscreteMeasure& from, const DiscreteMeasure& to,
                               const char* direction) {
  const KantorovichSolution sol = solve_kantorovich(space, from, to);
  MongeResult monge = extract_monge_map(sol.plan);
  if (!monge.deterministic())
    throw Error(ErrorKind::NotDeterministic,
                std::string(direction) + " plan splits mass " + std::to_string(monge.split_mass));
  return std::move(*monge.map);
}

int find_atom(const Space& space, const std::vector<Point>& atoms, const Point& p) {
  for (std::size_t k = 0; k < atoms.size(); ++k)
    if (space.same_point(atoms[k], p, kAtomTol)) return static_cast<int>(k);
  return -1;
}

}  // namespace

InverseMaps inverse_map(const Space& space, const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  InverseMaps maps{deterministic_map(space, mu, nu, "forward"), deterministic_map(space, nu, mu, "backward")};
  for (int i = 0; i < mu.size(); ++i)
    if (maps.T_star.target[maps.T.target[i]] != i)
      throw Error(ErrorKind::SolverFailure, "backward map does not invert the forward map");
  return maps;
}

Factorization polar_factorize(const Space& space, const DiscreteMeasure& mu, const TransportMap& s) {
  const int n = mu.size();
  if (static_cast<int>(s.image.size()) != n) throw Error(ErrorKind::MapUndefined, "map must cover every atom");

  Factorization f;
  std::vector<int> s_index(n);
  std::vector<double> merged;
  for (int i = 0; i < n; ++i) {
    const Point p = space.normalize(s.image[i]);
    int k = find_atom(space, f.target.points, p);
    if (k < 0) {
      k = static_cast<int>(f.target.points.size());
      f.target.points.push_back(p);
      merged.push_back(0.0);
    }
    merged[k] += mu.weights[i];
    s_index[i] = k;
  }
  f.target.weights = Eigen::Map<const Eigen::VectorXd>(merged.data(), static_cast<Eigen::Index>(merged.size()));

  InverseMaps maps = inverse_map(space, mu, f.target);
  f.T = std::move(maps.T);
  for (int i = 0; i < n; ++i) {
    const int j = maps.T_star.target[s_index[i]];
    f.u.target.push_back(j);
    f.u.image.push_back(mu.points[j]);
    f.residual = std::max(f.residual, space.distance(f.T.image[j], s.image[i]));
  }
  return f;
}

bool verify_measure_preserving(const Space& space, const DiscreteMeasure& mu, const TransportMap& u) {
  const int n = mu.size();
  if (static_cast<int>(u.image.size()) != n) throw Error(ErrorKind::MapUndefined, "map must cover every atom");
  std::vector<char> hit(n, 0);
  for (int i = 0; i < n; ++i) {
    int j = i < static_cast<int>(u.target.size()) ? u.target[i] : -1;
    if (j < 0) j = find_atom(space, mu.points, u.image[i]);
    if (j < 0 || j >= n || hit[j]) return false;
    hit[j] = 1;
    if (std::abs(mu.weights[i] - mu.weights[j]) > 1e-12) return false;
  }
  return true;
}

nlohmann::json factorization_to_json(const Factorization& f) {
  return {{"T", map_to_json(f.T)}, {"u", map_to_json(f.u)}, {"residual", f.residual}};
}

}  // namespace cat0ot
