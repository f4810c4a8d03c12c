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
#include "cvlab/hessian_measure.hpp"

using namespace cvlab;
using R = Rational;
using Fn = PolyConvexFunction<R>;

namespace {

VecX<R> v1(long a) {
  VecX<R> v(1);
  v << R(a);
  return v;
}
VecX<R> v1r(const R& a) {
  VecX<R> v(1);
  v << a;
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

AffineForm<R> form1(const R& y, const R& c) {
  AffineForm<R> f;
  f.y = v1r(y);
  f.c = c;
  return f;
}

Fn abs1() { return Fn::make(1, {form1(R(1), R(0)), form1(R(-1), R(0))}, std::nullopt); }

// Brute-force conjugate lower bound on a rational grid; exact at points
// where the sup is attained on the grid.
R grid_conjugate(const Fn& f, const R& x, long steps = 64) {
  bool started = false;
  R best(0);
  for (long i = -steps; i <= steps; ++i) {
    const R y = R(i) / R(8);
    const auto fy = f.eval(v1r(y));
    if (!fy) continue;
    const R cand = x * y - *fy;
    if (!started || best < cand) {
      best = cand;
      started = true;
    }
  }
  REQUIRE(started);
  return best;
}

}  // namespace

TEST_CASE("eval on pieces, breakpoints, and outside the domain") {
  const auto f = abs1();
  CHECK(*f.eval(v1(3)) == R(3));
  const auto ind = indicator(Polyhedron<R>::box(1, R(-1), R(1)));
  CHECK(*ind.eval(v1(0)) == R(0));
  CHECK_FALSE(ind.eval(v1(2)).has_value());
  const auto g = Fn::make(1, {form1(R(1), R(0)), form1(R(2), R(-1))}, std::nullopt);
  CHECK(*g.eval(v1(1)) == R(1));  // breakpoint of max(x, 2x-1)
}

TEST_CASE("pointwise max") {
  const auto f = abs1();
  const auto one = Fn::make(1, {form1(R(0), R(1))}, std::nullopt);
  const auto m = pointwise_max(f, one);
  CHECK(m.pieces().size() == 3);
  CHECK(*m.eval(v1r(R(1) / R(2))) == R(1));
  CHECK(*m.eval(v1(2)) == R(2));
  CHECK(pointwise_max(f, f) == f);
}

TEST_CASE("pointwise max matches the support function of the joined body") {
  Rng rng(41);
  for (int t = 0; t < 20; ++t) {
    const auto cut = random_body_cut<R>(rng, 3, 7);
    const auto f = support_lift(cut.below);
    const auto g = support_lift(cut.above);
    const auto m = pointwise_max(f, g);
    CHECK(m == support_lift(cut.body));
    // Support-function oracle on sampled directions.
    for (int s = 0; s < 5; ++s) {
      const auto x = random_point<R>(rng, 2, 4);
      R best = cut.body.vertices()[0].head(2).dot(x) - cut.body.vertices()[0](2);
      for (const auto& v : cut.body.vertices()) {
        const R cand = v.head(2).dot(x) - v(2);
        if (best < cand) best = cand;
      }
      CHECK(*m.eval(x) == best);
    }
  }
}

TEST_CASE("pointwise min: idempotent, cut bodies, and the non-convex marker") {
  const auto f = abs1();
  const auto same = pointwise_min_checked(f, f);
  REQUIRE(same.has_value());
  CHECK(*same == f);

  Rng rng(43);
  for (int t = 0; t < 20; ++t) {
    const auto cut = random_body_cut<R>(rng, 2, 5);
    const auto a = support_lift(cut.below);
    const auto b = support_lift(cut.above);
    const auto m = pointwise_min_checked(a, b);
    REQUIRE(m.has_value());
    CHECK(*m == support_lift(intersect(cut.below, cut.above)));
  }

  const auto idn = Fn::make(1, {form1(R(1), R(0))}, std::nullopt);
  const auto neg = Fn::make(1, {form1(R(-1), R(0))}, std::nullopt);
  CHECK_FALSE(pointwise_min_checked(idn, neg).has_value());
}

TEST_CASE("add and scale") {
  const auto f = abs1();
  const auto two = add(f, f);
  CHECK(two == scale(f, R(2)));
  CHECK(*two.eval(v1(-2)) == R(4));

  const auto ind = indicator(Polyhedron<R>::box(1, R(-1), R(1)));
  const auto sum = add(f, ind);
  CHECK_FALSE(sum.domain_is_all());
  CHECK(*sum.eval(v1(1)) == R(1));
  CHECK_FALSE(sum.eval(v1(2)).has_value());

  const auto g = Fn::make(1, {form1(R(1), R(0)), form1(R(2), R(-1))}, std::nullopt);
  const auto g3 = scale(g, R(3));
  CHECK(g3 == Fn::make(1, {form1(R(3), R(0)), form1(R(6), R(-3))}, std::nullopt));
  CHECK_THROWS_AS(scale(g, R(0)), precondition_error);
}

TEST_CASE("indicator algebra") {
  const auto p = Polyhedron<R>::box(1, R(-1), R(1));
  const auto q = Polyhedron<R>::box(1, R(0), R(2));
  CHECK(add(indicator(p), indicator(q)) == indicator(intersect(p, q)));
  CHECK(conjugate(indicator(p)) == abs1());
  const auto thin = Polyhedron<R>::from_generators(2, {v2(0, 0), v2(1, 1)}, {});
  CHECK_THROWS_AS(indicator(thin), precondition_error);
}

TEST_CASE("epi-translation") {
  const auto f = abs1();
  EpiPoint<R> shift{v1(1), R(0)};
  const auto g = epi_translate(f, shift);
  CHECK(*g.eval(v1(1)) == R(0));
  CHECK(*g.eval(v1(3)) == R(2));

  EpiPoint<R> lift{v1(0), R(5)};
  CHECK(*epi_translate(f, lift).eval(v1(0)) == R(5));

  Rng rng(47);
  for (int t = 0; t < 20; ++t) {
    const auto h = random_pl_function<R>(rng, 1);
    EpiPoint<R> x{random_point<R>(rng, 1, 4), random_rational<R>(rng, 4)};
    AffineForm<R> lin;
    lin.y = x.x;
    lin.c = -x.t;
    CHECK(conjugate(epi_translate(h, x)) ==
          add(conjugate(h), affine_as_function<R>(1, lin)));
  }
}

TEST_CASE("conjugate of max(x, 2x-1)") {
  const auto g = Fn::make(1, {form1(R(1), R(0)), form1(R(2), R(-1))}, std::nullopt);
  const auto c = conjugate(g);
  REQUIRE(c.pieces().size() == 1);
  CHECK(c.pieces()[0].y(0) == R(1));
  CHECK(c.pieces()[0].c == R(-1));
  CHECK(*c.domain() == Polyhedron<R>::box(1, R(1), R(2)));
  // Brute-force sup over a rational grid agrees on the domain.
  for (long i = 4; i <= 8; ++i) {
    const R x = R(i) / R(4);
    CHECK(*c.eval(v1r(x)) == grid_conjugate(g, x));
  }
}

TEST_CASE("conjugate of a lift is the floor and vice versa") {
  Rng rng(53);
  for (int t = 0; t < 50; ++t) {
    const auto k = random_polytope<R>(rng, 2, 6);
    CHECK(conjugate(support_lift(k)) == floor_body(k));
    CHECK(conjugate(floor_body(k)) == support_lift(k));
  }
}

TEST_CASE("conjugate of a shifted point indicator is affine") {
  const auto dom = Polyhedron<R>::from_generators(1, {v1(2)}, {});
  const auto f = Fn::make(1, {form1(R(0), R(-3))}, dom);
  const auto c = conjugate(f);
  CHECK(c == Fn::make(1, {form1(R(2), R(3))}, std::nullopt));
  CHECK(conjugate(c) == f);
}

TEST_CASE("involution and order reversal on generated functions") {
  Rng rng(59);
  for (int t = 0; t < 60; ++t) {
    const Eigen::Index n = 1 + (t % 2);
    const auto f = random_pl_function<R>(rng, n);
    CHECK(conjugate(conjugate(f)) == f);
  }
  // f >= g implies f* <= g*: compare a lift against itself plus a bump.
  for (int t = 0; t < 10; ++t) {
    const auto k = random_polytope<R>(rng, 2, 5);
    const auto g = support_lift(k);
    const auto f = add(g, Fn::make(1, {form1(R(0), R(1))}, std::nullopt));
    const auto all = Polyhedron<R>::full_space(1);
    CHECK(le_on(g, f, all));
    CHECK(le_on(conjugate(f), conjugate(g), all));
  }
}

TEST_CASE("lattice duality where the minimum stays convex") {
  Rng rng(61);
  for (int t = 0; t < 20; ++t) {
    const auto cut = random_body_cut<R>(rng, 2, 6);
    const auto f = support_lift(cut.below);
    const auto g = support_lift(cut.above);
    const auto rhs = pointwise_min_checked(conjugate(f), conjugate(g));
    REQUIRE(rhs.has_value());
    CHECK(conjugate(pointwise_max(f, g)) == *rhs);
  }
}

TEST_CASE("canonicalization is idempotent and evaluation-preserving") {
  Rng rng(67);
  for (int t = 0; t < 20; ++t) {
    const auto f = random_pl_function<R>(rng, 1);
    const auto again = Fn::make(f.n(), f.pieces(), f.domain());
    CHECK(again == f);
    for (int s = 0; s < 10; ++s) {
      const auto x = random_point<R>(rng, 1);
      const auto a = f.eval(x);
      const auto b = again.eval(x);
      CHECK(a.has_value() == b.has_value());
      if (a && b) CHECK(*a == *b);
    }
  }
}

TEST_CASE("support_lift examples") {
  const auto box = Polyhedron<R>::box(2, R(-1), R(1));
  const auto f = support_lift(box);  // sup over vertices: |x| + 1
  CHECK(*f.eval(v1(0)) == R(1));
  CHECK(*f.eval(v1(3)) == R(4));
  CHECK(*f.eval(v1(-2)) == R(3));

  const auto pt = Polyhedron<R>::from_generators(2, {v2(0, 0)}, {});
  CHECK(support_lift(pt) == Fn::make(1, {form1(R(0), R(0))}, std::nullopt));

  Rng rng(71);
  const auto cut = random_body_cut<R>(rng, 2, 6);
  CHECK(support_lift(cut.body) ==
        pointwise_max(support_lift(cut.below), support_lift(cut.above)));
}

TEST_CASE("floor_body examples") {
  const auto box = Polyhedron<R>::box(2, R(-1), R(1));
  const auto f = floor_body(box);
  CHECK(f == Fn::make(1, {form1(R(0), R(-1))},
                      Polyhedron<R>::box(1, R(-1), R(1))));

  const auto vee = convex_hull<R>({v2(-1, 1), v2(1, 1), v2(0, 0)});
  const auto g = floor_body(vee);
  CHECK(*g.eval(v1r(R(1) / R(2))) == R(1) / R(2));
  CHECK(*g.eval(v1(0)) == R(0));
  CHECK_FALSE(g.eval(v1(2)).has_value());
}

TEST_CASE("lift_HA and cone membership") {
  const auto cone = ConeSpec<R>::make(Polyhedron<R>::box(1, R(-4), R(4)),
                                      Polyhedron<R>::box(1, R(-1), R(1)));
  CHECK(cone_membership(indicator(cone.A), cone).member);
  CHECK(cone_membership(indicator(cone.O), cone).member);

  Rng rng(73);
  for (int t = 0; t < 10; ++t) {
    const auto k = random_polytope<R>(rng, 2, 5);
    const auto lifted = lift_HA(k, cone);
    CHECK(cone_membership(lifted, cone).member);
    CHECK(*lifted.domain() == cone.A);
    // positive homogeneity of the lift
    CHECK(lift_HA(k.scaled(R(3)), cone) == scale(lifted, R(3)));
  }

  const auto wide = indicator(Polyhedron<R>::box(1, R(-9), R(9)));
  const auto verdict = cone_membership(wide, cone);
  CHECK_FALSE(verdict.member);
  CHECK(verdict.reason == "dom f not contained in A");

  // full-space A: lift_HA reduces to support_lift
  const auto full = ConeSpec<R>::full(1);
  const auto k = random_polytope<R>(rng, 2, 5);
  CHECK(lift_HA(k, full) == support_lift(k));
}

TEST_CASE("replace_by_body on |x|") {
  const auto f = abs1();
  const auto a = Polyhedron<R>::box(1, R(-1), R(1));
  const auto k = replace_by_body(f, a, R(1) / R(2));
  CHECK(k == Polyhedron<R>::from_generators(
                 2, {v2(-1, 0), v2(1, 0), v2r(R(-1), R(15) / R(2)),
                     v2r(R(1), R(15) / R(2))},
                 {}));
  const auto lifted = support_lift(k);
  CHECK(le_on(lifted, f, Polyhedron<R>::full_space(1)));
  CHECK(eq_on(lifted, f, a));
  // equality even far outside A in this special case
  CHECK(*lifted.eval(v1(30)) == R(30));
}

TEST_CASE("replace_by_body is consistent on lifts and tangent samples") {
  Rng rng(79);
  const auto a = Polyhedron<R>::box(1, R(-1), R(1));
  for (int t = 0; t < 10; ++t) {
    const auto k0 = random_polytope<R>(rng, 2, 5);
    const auto f = support_lift(k0);
    const auto k = replace_by_body(f, a, R(1) / R(4));
    CHECK(eq_on(support_lift(k), f, a));
    CHECK(le_on(support_lift(k), f, Polyhedron<R>::full_space(1)));
  }
  // x^2 sampled as a max of 9 tangents at j/4, j = -4..4
  std::vector<AffineForm<R>> tangents;
  for (long j = -4; j <= 4; ++j) {
    const R at = R(j) / R(4);
    tangents.push_back(form1(2 * at, -at * at));
  }
  const auto f = Fn::make(1, std::move(tangents), std::nullopt);
  const auto k = replace_by_body(f, a, R(1) / R(4));
  CHECK(eq_on(support_lift(k), f, a));

  const auto ind = indicator(Polyhedron<R>::box(1, R(-1), R(1)));
  CHECK_THROWS_WITH_AS(replace_by_body(ind, a, R(1) / R(2)),
                       "A not interior to domain", precondition_error);
}

TEST_CASE("recession functions") {
  CHECK(recession_function(abs1()) == abs1());

  const auto ind = indicator(Polyhedron<R>::box(1, R(-1), R(1)));
  const auto rec = recession_function(ind);
  CHECK_FALSE(rec.domain_is_all());
  CHECK(rec.domain()->vertices().size() == 1);
  CHECK(*rec.eval(v1(0)) == R(0));
  CHECK_FALSE(rec.eval(v1(1)).has_value());

  // rho_{f*} = h_{dom f} and rho_f = h_{dom f*} for f = max(x, 2x-1)
  const auto g = Fn::make(1, {form1(R(1), R(0)), form1(R(2), R(-1))}, std::nullopt);
  CHECK(recession_function(conjugate(g)) ==
        support_function_pl(Polyhedron<R>::full_space(1)));
  CHECK(recession_function(g) ==
        support_function_pl(Polyhedron<R>::box(1, R(1), R(2))));
  CHECK(recession_function(g) ==
        Fn::make(1, {form1(R(1), R(0)), form1(R(2), R(0))}, std::nullopt));
}

TEST_CASE("perturb_bounded with certificate bodies") {
  const auto box = Polyhedron<R>::box(2, R(-1), R(1));  // lift = |x| + 1

  {  // constant perturbation: K translated down by c
    const auto zero = Fn::make(1, {form1(R(0), R(0))}, std::nullopt);
    const auto cst = Fn::make(1, {form1(R(0), R(2))}, std::nullopt);
    const auto res = perturb_bounded(box, cst, zero);
    REQUIRE(res.has_value());
    CHECK(res->function == add(support_lift(box),
                               Fn::make(1, {form1(R(0), R(2))}, std::nullopt)));
    CHECK(support_lift(res->certificate) == res->function);
  }

  {  // gentle tent on top stays convex
    const auto dc = dc_decompose_catalog<R>(1, v1(0), R(2));
    const auto res = perturb_bounded(box, dc.first, dc.second);
    REQUIRE(res.has_value());
    CHECK(support_lift(res->certificate) == res->function);
    // independent midpoint-convexity oracle on a grid
    const auto& q = res->function;
    for (long i = -8; i <= 8; ++i)
      for (long j = i + 1; j <= 8; ++j) {
        const R a = R(i) / R(2), b = R(j) / R(2);
        const R mid = (a + b) / R(2);
        CHECK(*q.eval(v1r(mid)) * R(2) <= *q.eval(v1r(a)) + *q.eval(v1r(b)));
      }
  }

  {  // steep negative tent breaks convexity
    const auto dc = dc_decompose_catalog<R>(1, v1(0), R(1) / R(8));
    // swap: perturbation = h - g = -bump, steep
    const auto res = perturb_bounded(box, dc.second, dc.first);
    CHECK_FALSE(res.has_value());
  }
}

TEST_CASE("pointwise min agrees with a semantic oracle on random pairs") {
  Rng rng(181);
  int convex_cases = 0, marker_cases = 0, witnessed = 0;
  for (int t = 0; t < 60; ++t) {
    const Eigen::Index n = 1 + (t % 2);
    const auto f = random_pl_function<R>(rng, n);
    const auto g = random_pl_function<R>(rng, n);
    const auto m = pointwise_min_checked(f, g);
    if (m) {
      ++convex_cases;
      for (int s = 0; s < 10; ++s) {
        const auto x = random_point<R>(rng, n);
        const auto fv = f.eval(x);
        const auto gv = g.eval(x);
        std::optional<R> expect;
        if (fv && gv)
          expect = fv < gv ? *fv : *gv;
        else if (fv)
          expect = fv;
        else if (gv)
          expect = gv;
        const auto mv = m->eval(x);
        CHECK(mv.has_value() == expect.has_value());
        if (mv && expect) CHECK(*mv == *expect);
      }
      continue;
    }
    ++marker_cases;
    // The marker must come with an exact witness: a point of
    // conv(epi f u epi g) strictly below min(f, g).
    const auto ef = epigraph(f);
    const auto eg = epigraph(g);
    std::vector<VecX<R>> pts = ef.vertices();
    for (const auto& v : eg.vertices()) pts.push_back(v);
    std::vector<VecX<R>> rays = ef.extreme_rays();
    for (const auto& r : eg.extreme_rays()) rays.push_back(r);
    std::vector<VecX<R>> lns = ef.lines();
    for (const auto& l : eg.lines()) lns.push_back(l);
    const auto hull = Polyhedron<R>::from_generators(n + 1, pts, rays, lns);
    bool found = false;
    for (const auto& row : ef.halfspaces().rows()) {
      if (found) break;
      const auto beyond = clip_beyond(hull, row);
      if (!beyond || eg.contains_polyhedron(*beyond)) continue;
      // a generator point outside epi(g)
      std::optional<VecX<R>> q;
      for (const auto& v : beyond->vertices())
        if (!eg.contains(v)) q = v;
      if (!q) {
        for (const auto& v : beyond->vertices()) {
          for (const auto& r : beyond->recession_generators()) {
            if (eg.recession_contains(r)) continue;
            VecX<R> cand = v;
            for (int k = 0; k < 40 && !q; ++k) {
              cand += r;
              if (!eg.contains(cand)) q = cand;
            }
            if (q) break;
          }
          if (q) break;
        }
      }
      if (!q) continue;
      // a strictly-beyond point of the clip region
      std::optional<VecX<R>> s;
      for (const auto& v : beyond->vertices())
        if (sgn(R(row.a.dot(v) - row.b)) > 0) s = v;
      if (!s) {
        for (const auto& r : beyond->recession_generators())
          if (sgn(R(row.a.dot(r))) > 0) s = (beyond->vertices()[0] + r).eval();
      }
      if (!s) continue;
      // walk from q toward s until strictly beyond and still outside epi(g)
      for (int k = 0; k <= 60 && !found; ++k) {
        const VecX<R> p = *q + (*s - *q) / pow_int(R(2), k);
        if (sgn(R(row.a.dot(p) - row.b)) <= 0) continue;
        if (eg.contains(p)) continue;  // larger k moves closer to q, outside
        // p lies in the hull, strictly below both functions
        CHECK(hull.contains(p));
        const auto fv = f.eval(p.head(n));
        const auto gv = g.eval(p.head(n));
        if (fv) CHECK(p(n) < *fv);
        if (gv) CHECK(p(n) < *gv);
        found = true;
      }
      if (!found) {
        // q itself may already be strictly beyond
        if (sgn(R(row.a.dot(*q) - row.b)) > 0) {
          const auto fv = f.eval(q->head(n));
          const auto gv = g.eval(q->head(n));
          if (fv) CHECK((*q)(n) < *fv);
          if (gv) CHECK((*q)(n) < *gv);
          found = true;
        }
      }
    }
    if (found) ++witnessed;
  }
  CHECK(convex_cases > 0);
  CHECK(marker_cases > 0);
  CHECK(witnessed == marker_cases);
}

TEST_CASE("thin domains are canonical and conjugation-stable") {
  // indicator-like function on a segment in R^2
  const auto seg = Polyhedron<R>::from_generators(2, {v2(0, 0), v2(1, 1)}, {});
  AffineForm<R> tilt;
  tilt.y = v2(1, 0);
  tilt.c = R(0);
  const auto f = Fn::make(2, {tilt}, seg);
  CHECK(conjugate(conjugate(f)) == f);
}
