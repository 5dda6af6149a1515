#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cat0ot/error.hpp"
#include "cat0ot/geometry.hpp"
#include "cat0ot/sampling.hpp"
#include "test_support.hpp"

#include <cmath>
#include <numbers>

using namespace cat0ot;
using cat0ot::testing::standard_spaces;

namespace {

constexpr double kPi = std::numbers::pi;

bool throws_kind(ErrorKind kind, auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind() == kind;
  }
  return false;
}

}  // namespace

TEST_CASE("distance examples") {
  const Space r2 = build_euclidean(2);
  CHECK(distance(r2, euclidean_point({0, 0}), euclidean_point({3, 4})) == doctest::Approx(5.0));

  const Space tripod = build_star(3);
  CHECK(distance(tripod, edge_point(0, 0.4), edge_point(1, 0.7)) == doctest::Approx(1.1).epsilon(1e-12));

  const Space book = build_open_book(3);
  const double oracle = testing::unfolded_distance(1, 0, 1, 0, false);
  CHECK(oracle == 2.0);
  CHECK(distance(book, page_point(0, 1, 0), page_point(1, 1, 0)) == doctest::Approx(oracle));

  CHECK(throws_kind(ErrorKind::InvalidPoint, [&] { distance(book, page_point(0, -0.1, 0), page_point(1, 1, 0)); }));
  CHECK(throws_kind(ErrorKind::InvalidPoint, [&] { distance(tripod, edge_point(0, 1.5), edge_point(1, 0)); }));
  CHECK(throws_kind(ErrorKind::InvalidPoint, [&] { distance(r2, euclidean_point({1, 2, 3}), euclidean_point({0, 0})); }));
}

TEST_CASE("boundary points normalize to the lowest chart") {
  const Space book = build_open_book(4);
  const Point spine = book.normalize(page_point(3, 0.0, 0.5));
  CHECK(spine.chart == 0);
  CHECK(book.same_point(page_point(2, 0.0, 0.5), page_point(1, 0.0, 0.5)));

  const Space tripod = build_star(3);
  const Point center = tripod.normalize(edge_point(2, 0.0));
  CHECK(center.chart == 0);
  CHECK(center.coords[0] == 0.0);
  CHECK(tripod.same_point(edge_point(1, 0.0), edge_point(2, 0.0)));
}

TEST_CASE("geodesic examples") {
  const Space r2 = build_euclidean(2);
  const Geodesic g(r2, euclidean_point({0, 0}), euclidean_point({2, 0}));
  CHECK(g.eval(0.25).coords[0] == doctest::Approx(0.5));
  CHECK(g.eval(0.25).coords[1] == doctest::Approx(0.0));
  CHECK(g.breakpoints().empty());

  const Space book = build_open_book(3);
  const Geodesic across(book, page_point(0, 1, 0), page_point(1, 1, 0));
  const Point mid = across.eval(0.5);
  CHECK(mid.chart == 0);
  CHECK(mid.coords[0] == 0.0);
  CHECK(mid.coords[1] == doctest::Approx(0.0));
  REQUIRE(across.breakpoints().size() == 1);
  CHECK(across.breakpoints()[0].t == doctest::Approx(0.5));

  const Space tripod = build_star(3);
  const Geodesic ab(tripod, edge_point(0, 0.4), edge_point(1, 0.7));
  const Point p = ab.at_arclength(0.55);
  CHECK(p.chart == 1);
  CHECK(p.coords[0] == doctest::Approx(0.15));
  CHECK(ab.breakpoints().size() == 1);
  CHECK(throws_kind(ErrorKind::ParamOutOfRange, [&] { ab.eval(1.5); }));
}

TEST_CASE("convex combination examples") {
  const Space r2 = build_euclidean(2);
  const Point p = euclidean_point({0, 0}), q = euclidean_point({2, 0});
  CHECK(r2.same_point(convex_combination(r2, p, q, 0.0), p));
  CHECK(r2.same_point(convex_combination(r2, p, q, 1.0), q));
  CHECK(r2.same_point(convex_combination(r2, p, q, 0.5), euclidean_point({1, 0})));
  CHECK(throws_kind(ErrorKind::ParamOutOfRange, [&] { convex_combination(r2, p, q, 1.1); }));

  const Space book = build_open_book(3);
  const Point m = convex_combination(book, page_point(0, 1, 0), page_point(1, 1, 0), 0.5);
  CHECK(m.chart == 0);
  CHECK(m.coords[0] == 0.0);
}

TEST_CASE("comparison angle") {
  CHECK(comparison_angle(1, 1, std::sqrt(2.0)) == doctest::Approx(kPi / 2));
  CHECK(comparison_angle(1, 1, 2) == doctest::Approx(kPi));
  CHECK(comparison_angle(1, 1, 1) == doctest::Approx(kPi / 3));
  CHECK(comparison_angle(1, 1, 0) == doctest::Approx(0.0));
  CHECK(comparison_angle(1, 1, 2 + 1e-13) == doctest::Approx(kPi));
  CHECK(throws_kind(ErrorKind::DegenerateTriangle, [] { comparison_angle(0, 1, 1); }));
  CHECK(throws_kind(ErrorKind::NotATriangle, [] { comparison_angle(1, 1, 2.1); }));
  CHECK(throws_kind(ErrorKind::NotATriangle, [] { comparison_angle(3, 1, 1); }));
}

TEST_CASE("alexandrov angle examples") {
  const Space r2 = build_euclidean(2);
  const Point o = euclidean_point({0, 0});
  const Geodesic g1(r2, o, euclidean_point({1, 0}));
  const Geodesic g2(r2, o, euclidean_point({std::cos(kPi / 3), std::sin(kPi / 3)}));
  const AngleEstimate a = alexandrov_angle(g1, g2);
  CHECK(a.value == doctest::Approx(kPi / 3).epsilon(1e-9));
  CHECK(a.converged);
  CHECK(a.bracket_low <= a.value);
  CHECK(a.value <= a.bracket_high);

  const Space tripod = build_star(3);
  const Point center = edge_point(0, 0.0);
  const AngleEstimate b = alexandrov_angle(Geodesic(tripod, center, edge_point(0, 1.0)),
                                           Geodesic(tripod, center, edge_point(1, 1.0)));
  CHECK(b.value == doctest::Approx(kPi).epsilon(1e-9));

  // Base point x between grid points 1/4 and 1/2 of comb(1,4); y on the tooth
  // at 1/2, y' on the base past 1/2. Both geodesics start along [x, p(1/2)].
  const Space comb = build_comb(1, 4);
  const Point x = edge_point(1, 0.2);  // base edge 1 spans [1/4, 1/2]
  const MetricTree& t = *comb.tree();
  const int half = t.edges()[1].b;
  int tooth = -1;
  for (int e : t.incident(half))
    if (e >= 4) tooth = e;
  REQUIRE(tooth >= 0);
  const Geodesic to_tooth(comb, x, edge_point(tooth, 0.5));
  const Geodesic along(comb, x, edge_point(2, 0.2));
  const AngleEstimate c = alexandrov_angle(to_tooth, along);
  CHECK(c.value == doctest::Approx(0.0).epsilon(1e-7));

  CHECK(throws_kind(ErrorKind::OriginMismatch,
                    [&] { alexandrov_angle(g1, Geodesic(r2, euclidean_point({1, 1}), o)); }));
  CHECK(throws_kind(ErrorKind::ScheduleTooShort, [&] { alexandrov_angle(g1, g2, {0.1}); }));
}

TEST_CASE("cat0 defect examples") {
  const Space r2 = build_euclidean(2);
  CHECK(cat0_defect(r2, euclidean_point({0, 0}), euclidean_point({2, 0}), euclidean_point({1, 1}), 0.5) ==
        doctest::Approx(0.0));

  // Tree oracle: x_t is the center, so LHS = 1 and RHS = 0.5*4 + 0.5*4 - 0.25*4 = 3.
  const Space tripod = build_star(3);
  CHECK(cat0_defect(tripod, edge_point(0, 1), edge_point(1, 1), edge_point(2, 1), 0.5) ==
        doctest::Approx(2.0));

  CounterRng rng(7);
  for (const auto& [name, space] : standard_spaces()) {
    for (int i = 0; i < 50; ++i) {
      const Point x = random_point(space, rng), y = random_point(space, rng);
      CHECK(cat0_defect(space, x, y, x, rng.uniform()) == doctest::Approx(0.0).epsilon(1e-12));
    }
  }
  CHECK(throws_kind(ErrorKind::ParamOutOfRange,
                    [&] { cat0_defect(r2, euclidean_point({0, 0}), euclidean_point({0, 0}), euclidean_point({0, 0}), -0.5); }));
}

TEST_CASE("projection examples") {
  const Space r2 = build_euclidean(2);
  const ConvexSet seg = SegmentSet{euclidean_point({0, 0}), euclidean_point({2, 0})};
  const Point x = euclidean_point({0, 1});
  const Point p = project_convex(r2, x, seg);
  CHECK(r2.same_point(p, euclidean_point({0, 0})));
  const Point y = euclidean_point({1, 0});
  const double lhs = std::pow(distance(r2, x, p), 2) + std::pow(distance(r2, y, p), 2);
  CHECK(lhs == doctest::Approx(std::pow(distance(r2, x, y), 2)));

  const Space tripod = build_star(3);
  const Point q = project_convex(tripod, edge_point(0, 0.5), SubtreeSet{{1}});
  CHECK(tripod.same_point(q, edge_point(0, 0.0)));
  CHECK(tripod.same_point(project_convex(tripod, edge_point(1, 0.3), SubtreeSet{{1}}), edge_point(1, 0.3)));
  CHECK(r2.same_point(project_convex(r2, euclidean_point({1, 0}), seg), euclidean_point({1, 0})));

  const ConvexSet ball = BallSet{euclidean_point({0, 0}), 1.0};
  CHECK(r2.same_point(project_convex(r2, euclidean_point({3, 4}), ball), euclidean_point({0.6, 0.8})));
  CHECK(r2.same_point(project_convex(r2, euclidean_point({0.1, 0.2}), ball), euclidean_point({0.1, 0.2})));

  CHECK(throws_kind(ErrorKind::UnsupportedConvexSet, [&] { project_convex(r2, x, SubtreeSet{{0}}); }));
  CHECK(throws_kind(ErrorKind::UnsupportedConvexSet, [&] { project_convex(tripod, x, SubtreeSet{{0, 7}}); }));
}

TEST_CASE("projection onto a segment crossing the spine") {
  const Space book = build_open_book(3);
  const ConvexSet seg = SegmentSet{page_point(0, 1, -1), page_point(1, 1, 1)};
  // A point on page 2 sees the segment through the spine.
  const Point x = page_point(2, 0.5, 0.0);
  const Point p = project_convex(book, x, seg);
  CHECK(p.chart == 0);
  CHECK(p.coords[0] == 0.0);
  CHECK(p.coords[1] == doctest::Approx(0.0));
}

TEST_CASE("extension examples") {
  const Space r2 = build_euclidean(2);
  const Geodesic g(r2, euclidean_point({0, 0}), euclidean_point({1, 0}));
  const Geodesic e = extend(g, 1.0);
  CHECK(r2.same_point(e.end(), euclidean_point({2, 0})));
  CHECK(e.length() == doctest::Approx(2.0));

  const Space tripod = build_star(3);
  CHECK(throws_kind(ErrorKind::NotExtendable, [&] { extend(Geodesic(tripod, edge_point(0, 0.5), edge_point(1, 1.0)), 0.1); }));
  // Through the center: continue on the lowest-index other leg.
  const Geodesic through = extend(Geodesic(tripod, edge_point(1, 0.5), edge_point(1, 0.0)), 0.25);
  CHECK(tripod.same_point(through.end(), edge_point(0, 0.25)));
  CHECK(throws_kind(ErrorKind::NotExtendable, [&] { extend(Geodesic(tripod, edge_point(1, 0.5), edge_point(1, 0.0)), 1.5); }));

  // Head-on into the spine from page 0: continues into page 1. Oracle: the
  // unfolded straight line from (2,0) on page 0 to (1,0) on page 1 has length 3.
  const Space book = build_open_book(3);
  const Geodesic head_on(book, page_point(0, 2, 0), page_point(0, 1, 0));
  const Geodesic ext = extend(head_on, 2.0);
  CHECK(ext.end().chart == 1);
  CHECK(ext.end().coords[0] == doctest::Approx(1.0));
  CHECK(ext.length() == doctest::Approx(testing::unfolded_distance(2, 0, 1, 0, false)));
  CHECK(book.same_point(ext.eval(1.0 / 3.0), head_on.end()));

  CHECK(throws_kind(ErrorKind::ParamOutOfRange, [&] { extend(g, 0.0); }));
}

TEST_CASE("metric axioms, constant speed and CAT(0) inequality on random samples") {
  CounterRng rng(2024);
  for (const auto& [name, space] : standard_spaces()) {
    CAPTURE(name);
    const bool flat = space.kind() == SpaceKind::Euclidean;
    for (int i = 0; i < 10000; ++i) {
      const Point x = random_point(space, rng), y = random_point(space, rng), z = random_point(space, rng);
      const double dxy = space.distance(x, y), dyx = space.distance(y, x);
      CHECK(dxy >= 0.0);
      CHECK(std::abs(dxy - dyx) <= 1e-9);
      CHECK(space.distance(x, x) == 0.0);
      CHECK(dxy <= space.distance(x, z) + space.distance(z, y) + 1e-9);
      const double t = rng.uniform();
      const double defect = cat0_defect(space, x, y, z, t);
      CHECK(defect >= -1e-9);
      if (flat) CHECK(std::abs(defect) <= 1e-9);

      const Geodesic g(space, x, y);
      const double s = rng.uniform(), u = rng.uniform();
      CHECK(std::abs(space.distance(g.eval(s), g.eval(u)) - std::abs(s - u) * g.length()) <= 1e-9);
    }
  }
}

TEST_CASE("tree distance matches an independent shortest-path computation") {
  CounterRng rng(99);
  for (const Space& space : {build_star(3), build_comb(1, 4), build_comb(2, 3)}) {
    for (int i = 0; i < 500; ++i) {
      const Point p = random_point(space, rng, 0.2), q = random_point(space, rng, 0.2);
      CHECK(space.distance(p, q) == doctest::Approx(testing::graph_distance(*space.tree(), p, q)).epsilon(1e-12));
    }
  }
}

TEST_CASE("open book with two pages is the plane") {
  const Space book = build_open_book(2);
  const Space r2 = build_euclidean(2);
  auto to_plane = [](const Point& p) {
    return euclidean_point({p.chart == 0 ? p.coords[0] : -p.coords[0], p.coords[1]});
  };
  CounterRng rng(5);
  for (int i = 0; i < 5000; ++i) {
    const Point p = random_point(book, rng), q = random_point(book, rng);
    CHECK(std::abs(book.distance(p, q) - r2.distance(to_plane(p), to_plane(q))) <= 1e-9);
  }
}

TEST_CASE("comparison angles do not increase along the halving schedule") {
  CounterRng rng(31);
  for (const auto& [name, space] : standard_spaces()) {
    CAPTURE(name);
    for (int i = 0; i < 1000; ++i) {
      const Point o = random_point(space, rng), a = random_point(space, rng), b = random_point(space, rng);
      const Geodesic g(space, o, a), h(space, o, b);
      if (g.length() < 1e-6 || h.length() < 1e-6) continue;
      const AngleEstimate est = alexandrov_angle(g, h);
      // Compared in the cosine domain: arccos is ill-conditioned near pi.
      for (std::size_t k = 1; k < est.sequence.size(); ++k)
        CHECK(std::cos(est.sequence[k]) >= std::cos(est.sequence[k - 1]) - 1e-9);
    }
  }
}

TEST_CASE("projection inequality and idempotence along [x, P_C x]") {
  CounterRng rng(77);
  for (const auto& [name, space] : standard_spaces()) {
    CAPTURE(name);
    for (int i = 0; i < 1000; ++i) {
      const Point x = random_point(space, rng);
      ConvexSet set;
      std::vector<Point> members;
      const int pick = static_cast<int>(rng.below(space.tree() ? 3 : 2));
      if (pick == 0) {
        const Point a = random_point(space, rng), b = random_point(space, rng);
        set = SegmentSet{a, b};
        for (int k = 0; k < 10; ++k) members.push_back(convex_combination(space, a, b, rng.uniform()));
      } else if (pick == 1) {
        const Point c = random_point(space, rng);
        const double r = rng.uniform(0.05, 0.8);
        set = BallSet{c, r};
        for (int k = 0; k < 10; ++k) {
          const Point z = random_point(space, rng);
          const double d = space.distance(c, z);
          members.push_back(d <= r ? z : convex_combination(space, c, z, r / d * rng.uniform()));
        }
      } else {
        const int e = static_cast<int>(rng.below(space.tree()->edges().size()));
        set = SubtreeSet{{e}};
        for (int k = 0; k < 10; ++k) members.push_back(edge_point(e, rng.uniform() * space.tree()->edges()[e].length));
      }
      const Point p = project_convex(space, x, set);
      for (const Point& y : members) {
        const double lhs = std::pow(space.distance(x, p), 2) + std::pow(space.distance(y, p), 2);
        CHECK(lhs <= std::pow(space.distance(x, y), 2) + 1e-9);
      }
      const Point xp = convex_combination(space, x, p, rng.uniform());
      CHECK(space.distance(project_convex(space, xp, set), p) <= 1e-9);
    }
  }
}

TEST_CASE("extensions are geodesics containing the original") {
  CounterRng rng(13);
  for (const auto& [name, space] : standard_spaces()) {
    CAPTURE(name);
    int extended = 0;
    for (int i = 0; i < 300; ++i) {
      const Geodesic g(space, random_point(space, rng, 0.2), random_point(space, rng, 0.2));
      if (g.length() == 0.0) continue;
      const double delta = rng.uniform(0.01, 1.0);
      try {
        const Geodesic e = extend(g, delta);
        ++extended;
        CHECK(e.length() == doctest::Approx(g.length() + delta).epsilon(1e-12));
        const double s = rng.uniform(), t = rng.uniform();
        CHECK(std::abs(space.distance(e.eval(s), e.eval(t)) - std::abs(s - t) * e.length()) <= 1e-9);
        const double tau = rng.uniform();
        CHECK(space.distance(e.eval(tau * g.length() / e.length()), g.eval(tau)) <= 1e-9);
      } catch (const Error& err) {
        CHECK(err.kind() == ErrorKind::NotExtendable);
        CHECK(space.tree() != nullptr);
      }
    }
    CHECK(extended > 0);
  }
}
