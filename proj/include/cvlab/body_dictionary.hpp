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

#ifndef CVLAB_BODY_DICTIONARY_HPP
#define CVLAB_BODY_DICTIONARY_HPP

#include <utility>

#include "cvlab/convex_function.hpp"
#include "cvlab/integration.hpp"

namespace cvlab {

// f = h_K(., -1): the body K in R^{n+1} read as a finite convex function.
template <class S>
PolyConvexFunction<S> support_lift(const Polyhedron<S>& k) {
  if (k.is_empty()) throw precondition_error("support_lift of empty body");
  if (!k.is_bounded()) throw precondition_error("not a polytope");
  const Eigen::Index n = k.dim() - 1;
  std::vector<AffineForm<S>> pieces;
  for (const auto& v : k.vertices()) {
    AffineForm<S> p;
    p.y = v.head(n);
    p.c = -v(n);
    pieces.push_back(p);
  }
  return PolyConvexFunction<S>::make(n, std::move(pieces), std::nullopt);
}

// floor(K)(x) = inf {t : (x, t) in K}, domain = projection of K.
template <class S>
PolyConvexFunction<S> floor_body(const Polyhedron<S>& k) {
  if (k.is_empty()) throw precondition_error("floor of empty body");
  if (!k.is_bounded()) throw precondition_error("not a polytope");
  const Eigen::Index d = k.dim();
  VecX<S> et = VecX<S>::Zero(d);
  et(d - 1) = scalar_traits<S>::from_long(1);
  auto lifted = Polyhedron<S>::from_generators(d, k.vertices(), {et});
  return floor_of_polyhedron(lifted);
}

// H_A(K) = h_K(., -1) + I_A
template <class S>
PolyConvexFunction<S> lift_HA(const Polyhedron<S>& k, const ConeSpec<S>& cone) {
  auto f = support_lift(k);
  if (cone.A_is_all()) return f;
  return add(f, indicator(cone.A));
}

// Support function h_P of a polyhedron in R^n as a PL convex function of
// the direction; domain is the polar of the recession cone.
template <class S>
PolyConvexFunction<S> support_function_pl(const Polyhedron<S>& p) {
  if (p.is_empty()) throw precondition_error("support function of empty set");
  std::vector<AffineForm<S>> pieces;
  for (const auto& v : p.vertices()) {
    AffineForm<S> q;
    q.y = v;
    q.c = scalar_traits<S>::from_long(0);
    pieces.push_back(q);
  }
  const auto rec = p.recession_generators();
  std::optional<Polyhedron<S>> dom;
  if (!rec.empty()) {
    std::vector<Halfspace<S>> rows;
    for (const auto& r : rec) {
      Halfspace<S> h;
      h.a = r;
      h.b = scalar_traits<S>::from_long(0);
      rows.push_back(h);
    }
    dom = Polyhedron<S>::from_halfspaces(HalfspaceSystem<S>(p.dim(), rows));
  }
  return PolyConvexFunction<S>::make(p.dim(), std::move(pieces), std::move(dom));
}

// The truncated-epigraph body K_{f,A,eps}: a bounded body whose lift agrees
// with f on A and minorizes f everywhere. Euclidean balls are replaced by
// sup-norm boxes enlarged by a rational upper bound for sqrt(n), which keeps
// the construction exact; the truncation region still contains the
// subgradient graph over A.
template <class S>
Polyhedron<S> replace_by_body(const PolyConvexFunction<S>& f,
                              const Polyhedron<S>& a, const S& eps) {
  const Eigen::Index n = f.n();
  if (a.dim() != n) throw precondition_error("dimension mismatch");
  if (a.is_empty() || !a.is_bounded())
    throw precondition_error("A must be a nonempty polytope");
  if (sgn(eps) <= 0) throw precondition_error("eps must be positive");

  const auto padded = minkowski_sum(a, Polyhedron<S>::box(n, -eps, eps));
  if (!f.domain_is_all() &&
      !f.domain()->interior_contains_polyhedron(padded))
    throw precondition_error("A not interior to domain");

  S c = scalar_traits<S>::from_long(1);
  for (const auto& v : padded.vertices()) {
    S fv = *f.eval(v);
    if (sgn(fv) < 0) fv = -fv;
    if (c < fv) c = fv;
  }
  S amax = scalar_traits<S>::from_long(0);
  for (const auto& v : a.vertices())
    for (Eigen::Index i = 0; i < n; ++i) {
      S w = v(i);
      if (sgn(w) < 0) w = -w;
      if (amax < w) amax = w;
    }
  const S root = sqrt_upper_bound<S>(static_cast<int>(n));
  const S ybound = rational_of<S>(2) * c * root / eps;
  const S tbound = c * (rational_of<S>(1) + rational_of<S>(2) * amax * root / eps);

  std::vector<Halfspace<S>> rows;
  for (Eigen::Index i = 0; i < n; ++i) {
    Halfspace<S> up, dn;
    up.a = VecX<S>::Zero(n + 1);
    up.a(i) = scalar_traits<S>::from_long(1);
    up.b = ybound;
    dn.a = VecX<S>::Zero(n + 1);
    dn.a(i) = scalar_traits<S>::from_long(-1);
    dn.b = ybound;
    rows.push_back(up);
    rows.push_back(dn);
  }
  Halfspace<S> tu, td;
  tu.a = VecX<S>::Zero(n + 1);
  tu.a(n) = scalar_traits<S>::from_long(1);
  tu.b = tbound;
  td.a = VecX<S>::Zero(n + 1);
  td.a(n) = scalar_traits<S>::from_long(-1);
  td.b = tbound;
  rows.push_back(tu);
  rows.push_back(td);

  auto k = intersect(conjugate_epigraph(f), HalfspaceSystem<S>(n + 1, rows));
  if (k.is_empty() || !k.is_bounded())
    throw precondition_error("truncation failed to produce a body");
  return k;
}

template <class S>
struct PerturbResult {
  PolyConvexFunction<S> function;
  Polyhedron<S> certificate;  // body K_phi with support_lift(K_phi) == function
};

namespace detail {

// Local convexity of the cellwise-affine difference across every internal
// facet of the common refinement; on a convex domain this is equivalent to
// global convexity.
template <class S>
bool dc_difference_convex(const std::vector<Cell<S>>& cells_) {
  for (size_t i = 0; i < cells_.size(); ++i)
    for (size_t j = i + 1; j < cells_.size(); ++j) {
      const auto shared = intersect(cells_[i].region, cells_[j].region);
      if (shared.affine_dim() !=
          static_cast<int>(cells_[i].region.dim()) - 1)
        continue;
      AffineForm<S> dij;
      dij.y = cells_[j].form.y - cells_[i].form.y;
      dij.c = cells_[j].form.c - cells_[i].form.c;
      if (!affine_nonneg_on(dij, cells_[j].region)) return false;
      AffineForm<S> dji;
      dji.y = -dij.y;
      dji.c = -dij.c;
      if (!affine_nonneg_on(dji, cells_[i].region)) return false;
    }
  return true;
}

}  // namespace detail

// h_K(., -1) + (g - h) for a DC pair of full-domain convex PL functions.
// Returns the sum and the certificate body from the truncated conjugate
// epigraph when the sum is convex, std::nullopt otherwise.
template <class S>
std::optional<PerturbResult<S>> perturb_bounded(const Polyhedron<S>& k,
                                                const PolyConvexFunction<S>& g,
                                                const PolyConvexFunction<S>& h) {
  if (!g.domain_is_all() || !h.domain_is_all())
    throw precondition_error("DC parts must have full domain");
  const auto s = add(support_lift(k), g);
  const auto refined = refine_cells(cells(s), cells(h), /*subtract=*/true);
  if (!detail::dc_difference_convex(refined)) return std::nullopt;

  std::vector<AffineForm<S>> pieces;
  for (const auto& cell : refined) pieces.push_back(cell.form);
  auto sum = PolyConvexFunction<S>::make(s.n(), std::move(pieces), std::nullopt);

  const auto conj = conjugate(sum);
  const auto dom = conj.domain_polyhedron();
  if (!dom.is_bounded())
    throw precondition_error("perturbation is not bounded");
  S top = *conj.eval(dom.vertices()[0]);
  for (const auto& v : dom.vertices()) {
    const S cv = *conj.eval(v);
    if (top < cv) top = cv;
  }
  Halfspace<S> cap;
  cap.a = VecX<S>::Zero(sum.n() + 1);
  cap.a(sum.n()) = scalar_traits<S>::from_long(1);
  cap.b = top;
  auto body = intersect(conjugate_epigraph(sum),
                        HalfspaceSystem<S>(sum.n() + 1, {cap}));
  return PerturbResult<S>{std::move(sum), std::move(body)};
}

}  // namespace cvlab

#endif  // CVLAB_BODY_DICTIONARY_HPP
