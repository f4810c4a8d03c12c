// Copyright 2026 The cvlab Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cvlab/generators.hpp"
#include "cvlab/integration.hpp"

using namespace cvlab;
using R = Rational;

namespace {

VecX<R> v1(long a) {
  VecX<R> v(1);
  v << R(a);
  return v;
}
VecX<R> v2(long a, long b) {
  VecX<R> v(2);
  v << R(a), R(b);
  return v;
}
VecX<R> v2r(const R& a, const R& b) {
  VecX<R> v(2);
  v << a, b;
  return v;
}

// Independent 2-D hull oracle: Andrew's monotone chain over exact rationals.
std::vector<VecX<R>> monotone_chain(std::vector<VecX<R>> pts) {
  std::sort(pts.begin(), pts.end(),
            [](const VecX<R>& a, const VecX<R>& b) { return lex_less(a, b); });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const VecX<R>& a, const VecX<R>& b) {
                          return vec_eq(a, b);
                        }),
            pts.end());
  if (pts.size() < 3) return pts;
  auto cross = [](const VecX<R>& o, const VecX<R>& a, const VecX<R>& b) {
    return (a(0) - o(0)) * (b(1) - o(1)) - (a(1) - o(1)) * (b(0) - o(0));
  };
  std::vector<VecX<R>> hull;
  for (const auto& p : pts) {  // lower
    while (hull.size() >= 2 &&
           sgn(R(cross(hull[hull.size() - 2], hull.back(), p))) <= 0)
      hull.pop_back();
    hull.push_back(p);
  }
  const size_t lower = hull.size() + 1;
  for (auto it = pts.rbegin() + 1; it != pts.rend(); ++it) {  // upper
    while (hull.size() >= lower &&
           sgn(R(cross(hull[hull.size() - 2], hull.back(), *it))) <= 0)
      hull.pop_back();
    hull.push_back(*it);
  }
  hull.pop_back();
  std::sort(hull.begin(), hull.end(),
            [](const VecX<R>& a, const VecX<R>& b) { return lex_less(a, b); });
  return hull;
}

}  // namespace

TEST_CASE("convex hull drops interior points") {
  const auto p = convex_hull<R>(
      {v2(0, 0), v2(1, 0), v2(0, 1), v2r(R(1) / R(4), R(1) / R(4))});
  CHECK(p.vertices().size() == 3);
  CHECK(p.contains(v2r(R(1) / R(4), R(1) / R(4))));
}

TEST_CASE("convex hull of a singleton") {
  const auto p = convex_hull<R>({v1(0)});
  CHECK(p.vertices().size() == 1);
  CHECK(p.is_bounded());
  CHECK(p.affine_dim() == 0);
}

TEST_CASE("hull of random points matches the monotone chain oracle") {
  Rng rng(11);
  for (int t = 0; t < 8; ++t) {
    std::vector<VecX<R>> pts;
    for (int i = 0; i < 100; ++i) {
      pts.push_back(v2r(random_rational<R>(rng, 4) / R(4),
                        random_rational<R>(rng, 4) / R(4)));
    }
    const auto hull = convex_hull(pts);
    const auto oracle = monotone_chain(pts);
    REQUIRE(hull.vertices().size() == oracle.size());
    for (size_t i = 0; i < oracle.size(); ++i)
      CHECK(vec_eq(hull.vertices()[i], oracle[i]));
    // Idempotence: the hull of the output vertex set is the same polytope.
    CHECK(convex_hull(hull.vertices()) == hull);
  }
}

TEST_CASE("hull rejects empty and mixed-dimension input") {
  CHECK_THROWS_AS(convex_hull<R>({}), precondition_error);
  CHECK_THROWS_AS(convex_hull<R>({v1(0), v2(0, 0)}), input_error);
}

TEST_CASE("halfspaces of the square") {
  const auto box = Polyhedron<R>::box(2, R(-1), R(1));
  const auto hs = to_halfspaces(box);
  CHECK(hs.rows().size() == 4);
  CHECK(from_halfspaces(hs) == box);
}

TEST_CASE("halfspaces of epi(|x|)") {
  const auto epi =
      Polyhedron<R>::from_generators(2, {v2(0, 0)}, {v2(1, 1), v2(-1, 1)});
  // Expect exactly {t >= x, t >= -x}.
  const auto rows = epi.halfspaces().rows();
  REQUIRE(rows.size() == 2);
  CHECK(vec_eq(rows[0].a, v2(-1, -1)));
  CHECK(vec_eq(rows[1].a, v2(1, -1)));
  CHECK(sgn(rows[0].b) == 0);
  CHECK(sgn(rows[1].b) == 0);
}

TEST_CASE("representation round-trip on random 2-D polytopes") {
  Rng rng(5);
  for (int t = 0; t < 50; ++t) {
    const auto p = random_polytope<R>(rng, 2, 6);
    const auto q = from_halfspaces(to_halfspaces(p));
    CHECK(q == p);
    // Set-equality oracle: vertex containment both ways.
    CHECK(p.contains_polyhedron(q));
    CHECK(q.contains_polyhedron(p));
  }
}

TEST_CASE("dimension limit guards conversion") {
  CHECK_THROWS_AS(Polyhedron<R>::box(5, R(0), R(1)), precondition_error);
  set_dimension_limit(5);
  CHECK(Polyhedron<R>::box(5, R(0), R(1)).vertices().size() == 32);
  set_dimension_limit(4);
}

TEST_CASE("intersect truncates an unbounded strip") {
  const auto strip =
      Polyhedron<R>::from_generators(2, {v2(-1, 0), v2(1, 0)}, {v2(0, 1)});
  Halfspace<R> cap{v2(0, 1), R(15) / R(2)};
  const auto out = intersect(strip, HalfspaceSystem<R>(2, {cap}));
  CHECK(out == Polyhedron<R>::from_generators(
                   2, {v2(-1, 0), v2(1, 0), v2r(R(-1), R(15) / R(2)),
                       v2r(R(1), R(15) / R(2))},
                   {}));
}

TEST_CASE("intersect with the whole space is the identity") {
  Rng rng(17);
  const auto p = random_polytope<R>(rng, 2, 6);
  CHECK(intersect(p, HalfspaceSystem<R>(2, {})) == p);
}

TEST_CASE("disjoint intersection is the empty polyhedron") {
  const auto seg = Polyhedron<R>::box(1, R(0), R(1));
  Halfspace<R> far{v1(1), R(-1)};
  const auto out = intersect(seg, HalfspaceSystem<R>(1, {far}));
  CHECK(out.is_empty());
  CHECK_FALSE(out.contains(v1(0)));
}

TEST_CASE("minkowski sums") {
  const auto seg = Polyhedron<R>::box(1, R(0), R(1));
  CHECK(minkowski_sum(seg, seg) == Polyhedron<R>::box(1, R(0), R(2)));

  const auto tri = convex_hull<R>({v2(0, 0), v2(1, 0), v2(0, 1)});
  const auto pt = Polyhedron<R>::from_generators(2, {v2(2, 3)}, {});
  CHECK(minkowski_sum(tri, pt) ==
        convex_hull<R>({v2(2, 3), v2(3, 3), v2(2, 4)}));

  const auto epi =
      Polyhedron<R>::from_generators(2, {v2(0, 0)}, {v2(1, 1), v2(-1, 1)});
  const auto dbl = minkowski_sum(epi, epi);
  CHECK(dbl == epi);  // cone with apex 0: 2 epi(|x|) = epi(|x|) as sets
}

TEST_CASE("minkowski sum is commutative and associative") {
  Rng rng(23);
  const auto a = random_polytope<R>(rng, 2, 5);
  const auto b = random_polytope<R>(rng, 2, 5);
  const auto c = random_polytope<R>(rng, 2, 5);
  CHECK(minkowski_sum(a, b) == minkowski_sum(b, a));
  CHECK(minkowski_sum(minkowski_sum(a, b), c) ==
        minkowski_sum(a, minkowski_sum(b, c)));
}

TEST_CASE("volumes") {
  CHECK(volume(Polyhedron<R>::box(2, R(-1), R(1))) == R(4));
  CHECK(volume(convex_hull<R>({v2(1, 0), v2(-1, 0), v2(0, 1), v2(0, -1)})) ==
        R(2));
  CHECK(sgn(volume(convex_hull<R>({v2(0, 0), v2(1, 1)}))) == 0);
  const auto strip =
      Polyhedron<R>::from_generators(2, {v2(0, 0)}, {v2(0, 1)});
  CHECK_THROWS_AS(volume(strip), precondition_error);
}

TEST_CASE("volume is a valuation when the union is convex") {
  Rng rng(29);
  for (int t = 0; t < 20; ++t) {
    const auto cut = random_body_cut<R>(rng, 2, 6);
    const auto vu = volume(cut.body);
    const auto vi = volume(intersect(cut.below, cut.above));
    CHECK(vu + vi == volume(cut.below) + volume(cut.above));
  }
}

TEST_CASE("monomial integrals") {
  CHECK(integrate_monomial(Polyhedron<R>::box(1, R(0), R(1)), {1}) ==
        R(1) / R(2));
  CHECK(sgn(integrate_monomial(Polyhedron<R>::box(2, R(-1), R(1)), {1, 1})) ==
        0);
  CHECK(integrate_monomial(convex_hull<R>({v2(0, 0), v2(1, 0), v2(0, 1)}),
                           {1, 0}) == R(1) / R(6));
}

TEST_CASE("monomial integral with zero exponent equals volume") {
  Rng rng(31);
  for (int t = 0; t < 10; ++t) {
    const auto p = random_polytope<R>(rng, 2, 6);
    CHECK(integrate_monomial(p, {0, 0}) == volume(p));
  }
}

TEST_CASE("float-mode Monte Carlo cross-check of the simplex integral") {
  // int_T x1 over conv{(0,0),(1,0),(0,1)} = 1/6, sampled in double.
  std::mt19937_64 eng(123);
  auto unif = [&] { return (eng() >> 11) * 0x1.0p-53; };
  int inside = 0;
  double acc = 0;
  const int samples = 200000;
  for (int i = 0; i < samples; ++i) {
    const double x = unif(), y = unif();
    if (x + y <= 1.0) {
      ++inside;
      acc += x;
    }
  }
  const double estimate = acc / samples;  // over the unit square
  CHECK(std::abs(estimate - 1.0 / 6.0) < 5e-3);
}

TEST_CASE("round-trips in dimensions three and four") {
  Rng rng(37);
  for (int t = 0; t < 20; ++t) {
    const auto p = random_polytope<R>(rng, 3, 8);
    CHECK(from_halfspaces(to_halfspaces(p)) == p);
  }
  for (int t = 0; t < 6; ++t) {
    const auto p = random_polytope<R>(rng, 4, 10);
    CHECK(from_halfspaces(to_halfspaces(p)) == p);
  }
}

TEST_CASE("round-trips on unbounded and degenerate polyhedra") {
  Rng rng(39);
  for (int t = 0; t < 20; ++t) {
    std::vector<VecX<R>> pts, rays;
    for (int i = 0; i < 4; ++i) pts.push_back(random_point<R>(rng, 3, 4));
    for (int i = 0; i < 2; ++i) {
      auto r = random_point<R>(rng, 3, 2);
      bool zero = true;
      for (Eigen::Index k = 0; k < 3; ++k)
        if (sgn(r(k)) != 0) zero = false;
      if (!zero) rays.push_back(std::move(r));
    }
    const auto p = Polyhedron<R>::from_generators(3, pts, rays);
    CHECK(from_halfspaces(to_halfspaces(p)) == p);
    CHECK(p.is_bounded() == (p.extreme_rays().empty() && p.lines().empty()));
  }
  // lower-dimensional: a triangle embedded in R^3
  const auto tri = convex_hull<R>(
      {vec_of<R>({R(0), R(0), R(1)}), vec_of<R>({R(1), R(0), R(1)}),
       vec_of<R>({R(0), R(1), R(1)})});
  CHECK(tri.affine_dim() == 2);
  CHECK(from_halfspaces(to_halfspaces(tri)) == tri);
  CHECK(sgn(volume(tri)) == 0);
}

TEST_CASE("four-dimensional volumes") {
  set_dimension_limit(4);
  CHECK(volume(Polyhedron<R>::box(4, R(0), R(1))) == R(1));
  // cross-polytope: 2^d / d!
  std::vector<VecX<R>> pts;
  for (Eigen::Index i = 0; i < 4; ++i) {
    VecX<R> e = VecX<R>::Zero(4);
    e(i) = R(1);
    pts.push_back(e);
    pts.push_back((-e).eval());
  }
  CHECK(volume(convex_hull(pts)) == R(2) / R(3));
  CHECK(integrate_monomial(Polyhedron<R>::box(4, R(0), R(1)), {1, 1, 1, 1}) ==
        R(1) / R(16));
}

TEST_CASE("empty polyhedron is a value, not an error") {
  const auto empty = Polyhedron<R>::from_generators(2, {}, {});
  CHECK(empty.is_empty());
  CHECK(empty.affine_dim() == -1);
  CHECK(intersect(empty, HalfspaceSystem<R>(2, {})) == empty);
}
