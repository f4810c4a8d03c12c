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

#ifndef CVLAB_GENERATORS_HPP
#define CVLAB_GENERATORS_HPP

#include <random>

#include "cvlab/body_dictionary.hpp"

namespace cvlab {

// Deterministic across platforms: raw engine output reduced by modulus,
// never std::uniform_int_distribution (whose mapping is unspecified).
class Rng {
 public:
  explicit Rng(uint64_t seed) : eng_(seed) {}

  long uniform(long lo, long hi) {  // inclusive bounds
    const uint64_t span = static_cast<uint64_t>(hi - lo + 1);
    return lo + static_cast<long>(eng_() % span);
  }

 private:
  std::mt19937_64 eng_;
};

template <class S>
S random_rational(Rng& rng, long max_num = 8) {
  static const long denoms[] = {1, 2, 4};
  const long p = rng.uniform(-max_num, max_num);
  const long q = denoms[rng.uniform(0, 2)];
  return rational_of<S>(p, q);
}

template <class S>
VecX<S> random_point(Rng& rng, Eigen::Index dim, long max_num = 8) {
  VecX<S> v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v(i) = random_rational<S>(rng, max_num);
  return v;
}

template <class S>
Polyhedron<S> random_polytope(Rng& rng, Eigen::Index dim, int npoints) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    std::vector<VecX<S>> pts;
    for (int i = 0; i < npoints; ++i) pts.push_back(random_point<S>(rng, dim));
    auto p = convex_hull(pts);
    if (p.affine_dim() == static_cast<int>(dim)) return p;
  }
  throw std::logic_error("failed to generate a full-dimensional polytope");
}

template <class S>
struct BodyCut {
  Polyhedron<S> body;
  VecX<S> direction;
  S offset;
  Polyhedron<S> below;  // body n {<dir, x> <= off}
  Polyhedron<S> above;  // body n {<dir, x> >= off}
};

// Splits a random polytope by a hyperplane through its interior, so that
// below u above = body is convex and both parts are nonempty.
template <class S>
BodyCut<S> random_body_cut(Rng& rng, Eigen::Index dim, int npoints) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    auto body = random_polytope<S>(rng, dim, npoints);
    VecX<S> dir(dim);
    bool nonzero = false;
    for (Eigen::Index i = 0; i < dim; ++i) {
      dir(i) = rational_of<S>(rng.uniform(-3, 3));
      if (sgn(dir(i)) != 0) nonzero = true;
    }
    if (!nonzero) continue;
    S lo = dir.dot(body.vertices()[0]);
    S hi = lo;
    for (const auto& v : body.vertices()) {
      const S t = dir.dot(v);
      if (t < lo) lo = t;
      if (hi < t) hi = t;
    }
    if (sgn(S(hi - lo)) == 0) continue;
    const S off = (lo + hi) / rational_of<S>(2);
    Halfspace<S> below_row{dir, off};
    Halfspace<S> above_row{(-dir).eval(), -off};
    auto below = intersect(body, HalfspaceSystem<S>(dim, {below_row}));
    auto above = intersect(body, HalfspaceSystem<S>(dim, {above_row}));
    if (below.is_empty() || above.is_empty()) continue;
    return BodyCut<S>{std::move(body), std::move(dir), off, std::move(below),
                      std::move(above)};
  }
  throw std::logic_error("failed to generate a body cut");
}

// A mixed bag of proper PL convex functions for property suites.
template <class S>
PolyConvexFunction<S> random_pl_function(Rng& rng, Eigen::Index n) {
  const long kind = rng.uniform(0, 4);
  switch (kind) {
    case 0:  // finite lift of a random body
      return support_lift(random_polytope<S>(rng, n + 1, 2 * static_cast<int>(n) + 3));
    case 1:  // compact-domain floor of a random body
      return floor_body(random_polytope<S>(rng, n + 1, 2 * static_cast<int>(n) + 3));
    case 2: {  // random max of affine forms on a box
      std::vector<AffineForm<S>> pieces;
      const int np = static_cast<int>(rng.uniform(2, 4));
      for (int i = 0; i < np; ++i) {
        AffineForm<S> p;
        p.y = random_point<S>(rng, n, 4);
        p.c = random_rational<S>(rng, 4);
        pieces.push_back(p);
      }
      auto box = Polyhedron<S>::box(n, rational_of<S>(-2), rational_of<S>(2))
                     .translated(random_point<S>(rng, n, 2));
      return PolyConvexFunction<S>::make(n, std::move(pieces), std::move(box));
    }
    case 3: {  // affine
      AffineForm<S> p;
      p.y = random_point<S>(rng, n, 4);
      p.c = random_rational<S>(rng, 4);
      return PolyConvexFunction<S>::make(n, {p}, std::nullopt);
    }
    default:  // indicator of a random full-dimensional polytope
      return indicator(random_polytope<S>(rng, n, 2 * static_cast<int>(n) + 3));
  }
}

}  // namespace cvlab

#endif  // CVLAB_GENERATORS_HPP
