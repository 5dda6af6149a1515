#pragma once

#include "cat0ot/transport.hpp"

namespace cat0ot {

struct InverseMaps {
  TransportMap T;       // optimal mu -> nu, targets index nu
  TransportMap T_star;  // optimal nu -> mu, targets index mu
};

/// Solves both directions and extracts their maps. Throws NotDeterministic
/// naming the direction whose plan splits mass, and SolverFailure when the
/// two maps are not mutually inverse on atoms.
InverseMaps inverse_map(const Space& space, const DiscreteMeasure& mu, const DiscreteMeasure& nu);

struct Factorization {
  TransportMap T;  // targets index `target`
  TransportMap u;  // targets index mu
  double residual = 0.0;
  DiscreteMeasure target;  // s#mu with coincident images merged
};

/// s = T o u with T optimal and u = T* o s measure preserving.
Factorization polar_factorize(const Space& space, const DiscreteMeasure& mu, const TransportMap& s);

/// True iff u permutes the atoms of mu and preserves their weights within 1e-12.
/// Uses u.target when set, otherwise matches images against the atoms.
bool verify_measure_preserving(const Space& space, const DiscreteMeasure& mu, const TransportMap& u);

nlohmann::json factorization_to_json(const Factorization& f);

}  // namespace cat0ot
